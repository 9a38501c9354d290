#include <doctest.h>

#include <algorithm>
#include <set>

#include "nfcircle/fixtures.hpp"
#include "nfcircle/lattice.hpp"
#include "properties.hpp"

using namespace nfc;

namespace {

/// a N(x) + b N(y) = z^2 over Q(i)/Q with every coordinate confined to
/// (0, P): targets 1/2, radius 1/2.
EquationInstance open_box_instance(double rho = 0.5) {
    EquationInstance qi = builtin_fixture("qi");
    std::vector<std::vector<Int>> res(5, std::vector<Int>{Int(0)});
    return make_instance(qi.k, qi.K, qi.a, qi.b, whole_ring(*qi.k), res,
                         std::vector<double>(5, 0.5), 0.5, rho, {}, "open-box");
}

std::set<std::vector<long>> as_set(const std::vector<std::vector<Int>>& pts) {
    std::set<std::vector<long>> out;
    for (const auto& p : pts) {
        std::vector<long> q;
        for (const auto& c : p) q.push_back(c.get_si());
        out.insert(q);
    }
    return out;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("congruence enumeration on known intervals") {
    auto kq = field_Q();
    IdealSpec two = principal_ideal(fe_from_int(*kq, Int(2)));
    auto odd = enumerate_congruence_class(two, {Int(1)}, {0.0}, 0.5, 20.0);
    REQUIRE(odd.size() == 10);
    for (const auto& p : odd) {
        CHECK(p[0] % 2 != 0);
        CHECK(abs(p[0]) < 10);
    }
    CHECK(enumerate_congruence_class(two, {Int(1)}, {0.0}, 0.5, 20.0) == odd);

    auto all = enumerate_congruence_class(whole_ring(*kq), {Int(0)}, {0.0}, 0.5, 5.0);
    CHECK(as_set(all) == std::set<std::vector<long>>{{-2}, {-1}, {0}, {1}, {2}});

    auto k2 = field_Qsqrt2();
    auto grid = enumerate_congruence_class(whole_ring(*k2), {Int(0), Int(0)}, {0.0, 0.0},
                                           0.5, 3.0);
    CHECK(grid.size() == 9);
    for (const auto& p : grid) {
        CHECK(abs(p[0]) <= 1);
        CHECK(abs(p[1]) <= 1);
    }
}

TEST_CASE("enumeration equals the brute-force cube filter") {
    for (auto k : {field_Q(), field_Qi()}) {
        const std::size_t m = k->m;
        for (int t = 0; t < 15; ++t) {
            Rng::Stream rng(5, 40 + t);
            FieldElement g = props::rand_elem(*k, rng, -3, 3);
            while (fe_is_zero(g)) g = props::rand_elem(*k, rng, -3, 3);
            IdealSpec ideal = principal_ideal(g);
            std::vector<Int> residue;
            for (std::size_t i = 0; i < m; ++i) residue.push_back(Int(rng.next_int(0, 2)));
            residue = ideal_reduce(ideal, residue);
            std::vector<double> center;
            for (std::size_t i = 0; i < m; ++i) center.push_back(2.0 * rng.next_double() - 1.0);
            double rho = 0.2 + 0.3 * rng.next_double();
            double P = 2.0 + 4.0 * rng.next_double();

            auto got = as_set(enumerate_congruence_class(ideal, residue, center, rho, P));

            std::set<std::vector<long>> want;
            long R = static_cast<long>(P * (1.5 + rho)) + 2;
            std::vector<long> cur(m, -R);
            for (;;) {
                bool in_box = true;
                for (std::size_t i = 0; i < m; ++i)
                    if (!(std::fabs(static_cast<double>(cur[i]) - P * center[i]) < P * rho))
                        in_box = false;
                if (in_box) {
                    std::vector<Rat> diff;
                    for (std::size_t i = 0; i < m; ++i) diff.emplace_back(cur[i] - residue[i].get_si());
                    if (ideal_contains(ideal, FieldElement(*k, diff))) want.insert(cur);
                }
                std::size_t i = m;
                bool done = true;
                while (i > 0) {
                    --i;
                    if (++cur[i] <= R) {
                        done = false;
                        break;
                    }
                    cur[i] = -R;
                }
                if (done) break;
            }
            CHECK(got == want);
        }
    }
}

TEST_CASE("count on the open box includes the Pythagorean point") {
    EquationInstance inst = open_box_instance();
    CountRow row = count_solutions(inst, 6.0, {});
    CHECK(row.count == naive_count(inst, 6.0, 100'000'000ULL));
    CHECK(row.count >= 1);

    std::vector<std::vector<Int>> point{{Int(1)}, {Int(2)}, {Int(2)}, {Int(4)}, {Int(5)}};
    for (std::size_t s = 0; s < 5; ++s) CHECK(inst.box.contains(6.0, s, point[s]));
    CHECK(fe_is_zero(shifted_form_eval_coords(*inst.form, point)));

    CHECK(count_solutions(inst, 1.0, {}).count == 0);
}

TEST_CASE("meet-in-the-middle equals the naive oracle") {
    EquationInstance qi = builtin_fixture("qi");
    CountRow row = count_solutions(qi, 12.0, {});
    CHECK(row.count == 220);
    CHECK(naive_count(qi, 12.0, 1'000'000'000ULL) == 220);
    CHECK_FALSE(row.budget_hit);

    for (std::size_t idx = 0; idx < 4; ++idx) {
        EquationInstance inst = random_small_instance(42, idx);
        double P = inst.m() == 1 ? 12.0 : 8.0;
        INFO(inst.label);
        CHECK(count_solutions(inst, P, {}).count == naive_count(inst, P, 2'000'000'000ULL));
    }
}

TEST_CASE("dilating the box equals dilating P") {
    EquationInstance qi = builtin_fixture("qi");
    std::vector<double> targets2 = qi.targets;
    for (double& t : targets2) t *= 2.0;
    EquationInstance big = make_instance(qi.k, qi.K, qi.a, qi.b, qi.modulus, qi.residues,
                                         targets2, qi.eta, 2.0 * qi.box.rho, {}, "qi-2x");
    CHECK(count_solutions(qi, 8.0, {}).count == count_solutions(big, 4.0, {}).count);
    CHECK(count_solutions(qi, 16.0, {}).count == count_solutions(big, 8.0, {}).count);
}

TEST_CASE("counts grow with the box and never silently truncate") {
    CHECK(count_solutions(open_box_instance(0.3), 8.0, {}).count <=
          count_solutions(open_box_instance(0.45), 8.0, {}).count);

    EquationInstance qi = builtin_fixture("qi");
    CountOptions tiny;
    tiny.budget_points = 10;
    CHECK_THROWS_AS(count_solutions(qi, 16.0, tiny), BudgetExceeded);
    CHECK_THROWS_AS(naive_count(qi, 12.0, 100), BudgetExceeded);
}

TEST_CASE("slot points match the enumeration stream") {
    EquationInstance qi = builtin_fixture("qi");
    for (std::size_t s = 0; s < qi.slots(); ++s) {
        SlotPoints pts = slot_points(qi, 8.0, s);
        std::vector<double> center(qi.box.slot_center(s), qi.box.slot_center(s) + qi.m());
        auto stream = enumerate_congruence_class(qi.modulus, qi.residues[s], center,
                                                 qi.box.rho, 8.0);
        REQUIRE(pts.count == stream.size());
        for (std::size_t i = 0; i < pts.count; ++i)
            for (std::size_t l = 0; l < qi.m(); ++l)
                CHECK(pts.point(i)[l] == stream[i][l].get_si());
    }
}

TEST_CASE("weak approximation search on the seeded scenario") {
    EquationInstance wa = builtin_fixture("wapprox-qi");
    WitnessCertificate cert = weak_approx_search(wa, {8.0, 16.0, 32.0}, {});
    REQUIRE(cert.found);
    CHECK(cert.equation_exact);
    CHECK(cert.congruence_ok);
    for (const auto& d : cert.distances) CHECK(d.distance < d.bound);
    CHECK(replay_witness(wa, cert));

    for (std::size_t s = 0; s < wa.slots(); ++s) {
        std::vector<Rat> diff;
        for (std::size_t l = 0; l < wa.m(); ++l)
            diff.emplace_back(cert.slot_coords[s][l] - wa.residues[s][l]);
        CHECK(ideal_contains(wa.modulus, FieldElement(*wa.k, diff)));
    }
}

TEST_CASE("witness exists whenever the count is positive") {
    EquationInstance qi = builtin_fixture("qi");
    REQUIRE(count_solutions(qi, 8.0, {}).count > 0);
    WitnessCertificate cert = weak_approx_search(qi, {8.0, 16.0}, {});
    CHECK(cert.found);
    CHECK(cert.P == 8.0);
    CHECK(replay_witness(qi, cert));
}

TEST_CASE("inconsistent residues are rejected up front") {
    EquationInstance wa = builtin_fixture("wapprox-qi");
    std::vector<std::vector<Int>> bad = wa.residues;
    bad[0][0] -= 1;
    EquationInstance broken = make_instance(wa.k, wa.K, wa.a, wa.b, wa.modulus, bad,
                                            wa.targets, wa.eta, wa.box.rho, {}, "broken");
    CHECK_THROWS_AS(weak_approx_search(broken, {8.0}, {}), SchemaError);
}

}  // TEST_SUITE
