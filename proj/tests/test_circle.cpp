#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "nfcircle/fixtures.hpp"
#include "nfcircle/hl.hpp"

using namespace nfc;

namespace {

EquationInstance open_box_instance() {
    EquationInstance qi = builtin_fixture("qi");
    std::vector<std::vector<Int>> res(5, std::vector<Int>{Int(0)});
    return make_instance(qi.k, qi.K, qi.a, qi.b, whole_ring(*qi.k), res,
                         std::vector<double>(5, 0.5), 0.5, 0.5, {}, "open-box");
}

ArcPoint at(std::initializer_list<double> coords) {
    ArcPoint a;
    a.alpha.assign(coords);
    return a;
}

}  // namespace

TEST_SUITE("circle") {

TEST_CASE("phase sums at alpha = 0 count the summands") {
    EquationInstance qi = builtin_fixture("qi");
    for (int j : {1, 2, 3}) {
        ExpSumValue s = eval_exp_sum(j, at({0.0}), qi, 8.0);
        CHECK(std::fabs(s.value.real() - static_cast<double>(s.summands)) < 1e-9);
        CHECK(std::fabs(s.value.imag()) < 1e-9);
        CHECK(s.summands > 0);
    }
}

TEST_CASE("conjugate symmetry and periodicity") {
    EquationInstance qi = builtin_fixture("qi");
    for (double a : {0.3777, 0.1234, 0.9001}) {
        for (int j : {1, 2, 3}) {
            ExpSumValue plus = eval_exp_sum(j, at({a}), qi, 10.0);
            ExpSumValue minus = eval_exp_sum(j, at({1.0 - a}), qi, 10.0);
            CHECK(std::abs(minus.value - std::conj(plus.value)) <
                  1e-12 * static_cast<double>(plus.summands));
            ExpSumValue shifted = eval_exp_sum(j, at({a + 1.0}), qi, 10.0);
            CHECK(std::abs(shifted.value - plus.value) <
                  1e-12 * static_cast<double>(plus.summands));
        }
    }
}

TEST_CASE("z-block sum matches a 9-term direct evaluation") {
    EquationInstance inst = open_box_instance();
    ExpSumValue s3 = eval_exp_sum(3, at({0.25}), inst, 10.0);
    CHECK(s3.summands == 9);
    std::complex<double> direct = 0;
    for (int z = 1; z <= 9; ++z) direct += unit_phase(z * z * 0.25);
    CHECK(std::abs(s3.value - direct) < 1e-12);
    CHECK(std::abs(direct - std::complex<double>(4.0, 5.0)) < 1e-12);
}

TEST_CASE("triangle inequality for sampled phases") {
    EquationInstance qi = builtin_fixture("qi");
    Rng::Stream rng(3, 0);
    for (int t = 0; t < 30; ++t) {
        ArcPoint a = at({rng.next_double()});
        for (int j : {1, 2, 3}) {
            ExpSumValue s = eval_exp_sum(j, a, qi, 8.0);
            CHECK(std::abs(s.value) <= static_cast<double>(s.summands) + 1e-9);
        }
    }
}

TEST_CASE("arc classification on known points") {
    auto kq = field_Q();
    IdealSpec whole = whole_ring(*kq);

    ArcPoint near_third = classify_arc(at({1.0 / 3.0 + 1e-5}), 0.3, 100.0, whole, 2);
    CHECK(near_third.label == "major");
    REQUIRE(near_third.has_gamma);
    CHECK(near_third.gamma[0] == Rat(1, 3));
    CHECK(near_third.denom_norm == 3);

    ArcPoint exact = classify_arc(at({1.0 / 3.0}), 0.3, 100.0, whole, 2);
    CHECK(exact.label == "major");
    CHECK(exact.gamma[0] == Rat(1, 3));

    double golden = 0.61803398874989485;
    CHECK(classify_arc(at({golden}), 0.3, 100.0, whole, 2).label == "minor");

    ArcPoint zero = classify_arc(at({0.0}), 0.4, 64.0, whole, 2);
    CHECK(zero.label == "major");
    CHECK(zero.denom_norm == 1);
}

TEST_CASE("classification re-verifies against a denominator sweep") {
    auto kq = field_Q();
    IdealSpec whole = whole_ring(*kq);
    const double theta = 0.3, P = 100.0;
    const double radius = std::pow(P, -2.0 + theta);
    const long qmax = static_cast<long>(std::pow(P, theta));
    Rng::Stream rng(3, 1);
    for (int t = 0; t < 100; ++t) {
        double a = rng.next_double();
        ArcPoint cl = classify_arc(at({a}), theta, P, whole, 2);
        if (cl.label == "major") {
            REQUIRE(cl.has_gamma);
            double g = cl.gamma[0].get_d();
            CHECK(std::fabs(a - g) <= radius + 1e-15);
            CHECK(cl.denom_norm <= qmax);
        } else {
            for (long q = 1; q <= qmax; ++q) {
                double nearest = std::round(a * q) / q;
                CHECK(std::fabs(a - nearest) > radius);
            }
        }
    }
}

TEST_CASE("orthogonality identity") {
    EquationInstance inst = open_box_instance();
    CHECK(orthogonality_count(inst, 10.0) == naive_count(inst, 10.0, 100'000'000ULL));
    CHECK(orthogonality_count(inst, 1.0) == 0);

    EquationInstance qi = builtin_fixture("qi");
    std::vector<std::vector<Int>> res(5, std::vector<Int>{Int(0)});
    EquationInstance far = make_instance(qi.k, qi.K, qi.a, qi.b, whole_ring(*qi.k), res,
                                         {0.0, 0.0, 0.0, 0.0, 5.0}, 0.5, 0.2, {}, "z-far");
    CHECK(naive_count(far, 8.0, 100'000'000ULL) == 0);
    CHECK(orthogonality_count(far, 8.0) == 0);
}

TEST_CASE("minor arc scan is seeded and monotone in the sample count") {
    EquationInstance qi = builtin_fixture("qi");
    std::vector<ArcSampleRow> detail;
    MinorArcScan scan = minor_arc_scan(qi, {16.0, 32.0}, 0.4, 40, 7, {}, &detail);
    REQUIRE(scan.rows.size() == 2);
    CHECK(detail.size() == 80);
    for (const auto& row : scan.rows) {
        CHECK(row.minor_samples + row.major_samples == 40);
        CHECK(row.max_abs_S3 > 0);
    }
    for (const auto& d : detail) {
        REQUIRE(d.alpha.size() == 1);
        CHECK(d.alpha[0] >= 0.0);
        CHECK(d.alpha[0] <= 1.0);
        CHECK((d.label == "major" || d.label == "minor"));
    }

    MinorArcScan rerun = minor_arc_scan(qi, {16.0, 32.0}, 0.4, 40, 7);
    CHECK(rerun.rows[0].max_abs_S3 == scan.rows[0].max_abs_S3);
    CHECK(rerun.rows[1].max_abs_S3 == scan.rows[1].max_abs_S3);

    MinorArcScan doubled = minor_arc_scan(qi, {16.0, 32.0}, 0.4, 80, 7);
    CHECK(doubled.rows[0].max_abs_S3 >= scan.rows[0].max_abs_S3);
    CHECK(doubled.rows[1].max_abs_S3 >= scan.rows[1].max_abs_S3);
}

TEST_CASE("mean values are exact coincidence counts") {
    EquationInstance qi = builtin_fixture("qi");

    std::vector<std::vector<Int>> res(5, std::vector<Int>{Int(0)});
    EquationInstance lone = make_instance(qi.k, qi.K, qi.a, qi.b, whole_ring(*qi.k), res,
                                          std::vector<double>(5, 0.0), 0.5, 0.15, {}, "lone");
    MeanValueCheck single = mean_value_check(1, lone, {2.0});
    REQUIRE(single.rows.size() == 1);
    CHECK(single.rows[0].value == 1);

    MeanValueCheck mv = mean_value_check(1, qi, {8.0, 16.0, 32.0, 64.0});
    REQUIRE(mv.rows.size() == 4);
    for (const auto& r : mv.rows) CHECK(r.value > 0);
    CHECK(mv.fitted_exponent <= 2.3);
    CHECK(mv.fitted_exponent >= 1.5);

    // independent coincidence count at P = 8
    std::vector<SlotPoints> slots;
    for (std::size_t s = 0; s < qi.slots(); ++s) slots.push_back(slot_points(qi, 8.0, s));
    BlockValues bv = block_values(qi, 8.0, 0, slots, 1'000'000ULL);
    std::map<int64_t, Int> freq;
    for (uint64_t i = 0; i < bv.count; ++i) freq[bv.values[i]] += 1;
    Int pairs = 0;
    for (const auto& [v, c] : freq) pairs += c * c;
    CHECK(mv.rows[0].value == pairs);
}

TEST_CASE("major arc measure shrinks with P") {
    auto kq = field_Q();
    IdealSpec whole = whole_ring(*kq);
    double prev = 1e300;
    for (double P : {50.0, 100.0, 200.0, 400.0}) {
        double meas = major_arc_measure(whole, 2, 0.4, P);
        CHECK(meas > 0);
        CHECK(meas < prev);
        prev = meas;
    }
}

TEST_CASE("slope fitting") {
    CHECK(loglog_slope({2, 4, 8}, {4, 16, 64}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(loglog_slope({2}, {4}), SchemaError);
}

}  // TEST_SUITE
