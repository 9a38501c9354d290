#include <doctest.h>

#include <cmath>

#include "nfcircle/fixtures.hpp"
#include "nfcircle/shifted_form.hpp"
#include "properties.hpp"

using namespace nfc;

namespace {

FieldElement fe(const FieldSpec& k, std::initializer_list<long> coords) {
    std::vector<Rat> c;
    for (long v : coords) c.emplace_back(v);
    return FieldElement(k, c);
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("multiplication table products") {
    auto k2 = field_Qsqrt2();
    CHECK(field_mul(fe(*k2, {1, 1}), fe(*k2, {1, -1})) == fe(*k2, {-1, 0}));

    auto k3 = field_Qcbrt2();
    CHECK(field_mul(fe(*k3, {0, 1, 0}), fe(*k3, {0, 0, 1})) == fe(*k3, {2, 0, 0}));

    Rng::Stream rng(7, 0);
    for (int t = 0; t < 20; ++t) {
        FieldElement u = props::rand_elem(*k3, rng);
        CHECK(field_mul(u, fe_one(*k3)) == u);
    }
}

TEST_CASE("division inverts multiplication") {
    auto k = field_Qi();
    Rng::Stream rng(7, 1);
    for (int t = 0; t < 50; ++t) {
        FieldElement u = props::rand_elem(*k, rng), v = props::rand_elem(*k, rng);
        if (fe_is_zero(v)) continue;
        CHECK(field_div(field_mul(u, v), v) == u);
    }
    CHECK_THROWS_AS(field_div(fe_one(*k), fe_zero(*k)), SchemaError);
}

TEST_CASE("embeddings of known elements") {
    auto kq = field_Q();
    AlgebraPoint five = embed(fe(*kq, {5}));
    REQUIRE(five.real_comp.size() == 1);
    CHECK(five.real_comp[0] == doctest::Approx(5.0).epsilon(1e-14));

    auto k2 = field_Qsqrt2();
    AlgebraPoint r = embed(fe(*k2, {1, 1}));
    REQUIRE(r.real_comp.size() == 2);
    CHECK(r.real_comp[0] == doctest::Approx(2.41421356237309505).epsilon(1e-11));
    CHECK(r.real_comp[1] == doctest::Approx(-0.41421356237309505).epsilon(1e-11));

    auto ki = field_Qi();
    AlgebraPoint z = embed(fe(*ki, {1, 1}));
    REQUIRE(z.cplx_comp.size() == 1);
    CHECK(std::abs(z.cplx_comp[0] - std::complex<double>(1, 1)) < 1e-12);
}

TEST_CASE("archimedean invariants") {
    auto k2 = field_Qsqrt2();
    ArchInvariants a = archimedean_invariants(embed(fe(*k2, {1, 1})));
    CHECK(a.trace == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a.norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.height == doctest::Approx(1.0).epsilon(1e-12));

    auto ki = field_Qi();
    ArchInvariants b = archimedean_invariants(embed(fe(*ki, {3, 4})));
    CHECK(b.norm == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(b.trace == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("field spec validation rejects inconsistent data") {
    auto ki = field_Qi();
    // i^2 = -1 cannot be realized by two real embeddings
    CHECK_THROWS_AS(make_field_spec(2, ki->mult, 2, 0,
                                    {{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}}),
                    SchemaError);
    // signature arithmetic m = n1 + 2 n2
    CHECK_THROWS_AS(make_field_spec(2, ki->mult, 1, 1, ki->emb), SchemaError);
}

TEST_CASE("power basis builder matches the fixture tables") {
    FieldSpec k3 = make_power_basis_field({Int(-2), Int(0), Int(0), Int(1)}, "cbrt2");
    auto ref = field_Qcbrt2();
    CHECK(k3.m == ref->m);
    CHECK(k3.n1 == ref->n1);
    CHECK(k3.n2 == ref->n2);
    CHECK(k3.mult == ref->mult);

    double err = 0;
    auto roots = all_roots({{-2.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, &err);
    REQUIRE(roots.size() == 3);
    CHECK(err < 1e-10);
    double real_root = 0;
    for (const auto& z : roots)
        if (std::fabs(z.imag()) < 1e-8) real_root = z.real();
    CHECK(real_root == doctest::Approx(std::cbrt(2.0)).epsilon(1e-11));
}

TEST_CASE("norm forms of the two reference extensions") {
    EquationInstance qi = builtin_fixture("qi");
    const NormFormPoly& N = *qi.N;
    auto feq = [&](long v) { return fe_from_int(*qi.k, Int(v)); };

    // N(x1, x2) = x1^2 + x2^2
    CHECK(norm_form_eval(N, {feq(3), feq(4)}) == feq(25));
    CHECK(norm_form_eval(N, {feq(1), feq(0)}) == feq(1));
    CHECK(N.form.is_homogeneous(2));

    Rng::Stream rng(11, 0);
    for (int t = 0; t < 20; ++t) {
        std::vector<Int> c{Int(rng.next_int(-9, 9)), Int(rng.next_int(-9, 9))};
        FieldElement direct = feq(0);
        direct = field_add(field_mul(feq(c[0].get_si()), feq(c[0].get_si())),
                           field_mul(feq(c[1].get_si()), feq(c[1].get_si())));
        CHECK(norm_form_eval(N, kelem_from_ints(*qi.K, c)) == direct);
        CHECK(kelem_norm(*qi.K, kelem_from_ints(*qi.K, c)) == direct);
    }

    EquationInstance qc = builtin_fixture("qcbrt2");
    const NormFormPoly& N3 = *qc.N;
    auto fec = [&](long v) { return fe_from_int(*qc.k, Int(v)); };
    CHECK(N3.form.is_homogeneous(3));
    CHECK(norm_form_eval(N3, {fec(1), fec(0), fec(0)}) == fec(1));
    Rng::Stream rng3(11, 1);
    for (int t = 0; t < 20; ++t) {
        long x = rng3.next_int(-5, 5), y = rng3.next_int(-5, 5), z = rng3.next_int(-5, 5);
        long want = x * x * x + 2 * y * y * y + 4 * z * z * z - 6 * x * y * z;
        CHECK(norm_form_eval(N3, {fec(x), fec(y), fec(z)}) == fec(want));
    }
}

TEST_CASE("shifted form identities") {
    EquationInstance qi = builtin_fixture("qi");
    auto feq = [&](long v) { return fe_from_int(*qi.k, Int(v)); };
    auto at = [&](std::initializer_list<long> vals) {
        std::vector<std::vector<Int>> coords;
        for (long v : vals) coords.push_back({Int(v)});
        return shifted_form_eval_coords(*qi.form, coords);
    };
    CHECK(at({3, 4, 0, 0, 5}) == feq(0));
    CHECK(at({0, 0, 0, 0, 0}) == feq(0));

    ShiftedForm shifted = build_shifted_form(feq(1), feq(1), *qi.K, {feq(1), feq(0)},
                                             {feq(0), feq(0)}, feq(1));
    std::vector<FieldElement> zero(5, feq(0));
    CHECK(shifted_form_eval(shifted, zero) == feq(0));

    Rng::Stream rng(11, 2);
    for (int t = 0; t < 10; ++t) {
        std::vector<FieldElement> xs{feq(rng.next_int(-3, 3)), feq(rng.next_int(-3, 3))};
        std::vector<FieldElement> ys{feq(rng.next_int(-3, 3)), feq(rng.next_int(-3, 3))};
        FieldElement zs = feq(rng.next_int(-3, 3));
        ShiftedForm sf = build_shifted_form(feq(1), feq(1), *qi.K, xs, ys, zs);
        FieldElement want = field_sub(
            field_add(norm_form_eval(*qi.N, xs), norm_form_eval(*qi.N, ys)),
            field_mul(zs, zs));
        CHECK(shifted_form_eval(sf, zero) == want);
    }

    CHECK_THROWS_AS(build_shifted_form(feq(0), feq(1), *qi.K, {feq(0), feq(0)},
                                       {feq(0), feq(0)}, feq(0)),
                    SchemaError);
}

TEST_CASE("real flattening agrees with the exact form") {
    auto k = field_Qsqrt2();
    ExtensionSpec K = props::quadratic_extension(*k, -1);
    FieldElement one = fe_one(*k);
    ShiftedForm sf = build_shifted_form(one, one, K, {fe_zero(*k), fe_zero(*k)},
                                        {fe_zero(*k), fe_zero(*k)}, fe_zero(*k));
    REQUIRE(sf.Fstar.size() == k->m);
    Rng::Stream rng(11, 3);
    for (int t = 0; t < 20; ++t) {
        std::vector<FieldElement> args;
        std::vector<Int> flat;
        for (int s = 0; s < 5; ++s) {
            FieldElement u = props::rand_elem(*k, rng, -3, 3);
            args.push_back(u);
            for (const auto& c : u.c) flat.push_back(c.get_num());
        }
        FieldElement value = shifted_form_eval(sf, args);
        for (std::size_t l = 0; l < k->m; ++l)
            CHECK(eval_rat_at_int(sf.Fstar[l], flat) == value.c[l]);
    }
}

TEST_CASE("denominator ideals of known gammas") {
    auto kq = field_Q();
    IdealSpec whole = whole_ring(*kq);
    IdealSpec a = denominator_ideal_coords(*kq, {Rat(3, 4)}, whole);
    CHECK(a.norm == 4);
    CHECK(a.basis.at(0, 0) == 4);
    CHECK(denominator_ideal_coords(*kq, {Rat(0)}, whole).norm == 1);

    auto ki = field_Qi();
    IdealSpec b = denominator_ideal_coords(*ki, {Rat(1, 2), Rat(1, 2)}, whole_ring(*ki));
    CHECK(b.norm == 2);
}

TEST_CASE("ideal arithmetic in Q(i)") {
    auto ki = field_Qi();
    IdealSpec two = principal_ideal(fe(*ki, {2, 0}));
    IdealSpec onei = principal_ideal(fe(*ki, {1, 1}));
    CHECK(two.norm == 4);
    CHECK(onei.norm == 2);
    CHECK(ideal_mul(onei, onei) == two);
    CHECK(ideal_pow(two, 2).norm == 16);
    CHECK(ideal_residues(two).size() == 4);
    CHECK(sublattice_residues(whole_ring(*ki), two).size() == 4);
    CHECK(ideal_valuation(fe(*ki, {4, 0}), two, 10) == 2);
    CHECK(ideal_contains(two, fe(*ki, {2, -4})));
    CHECK_FALSE(ideal_contains(two, fe(*ki, {1, 0})));

    std::vector<Int> r = ideal_reduce(two, {Int(7), Int(-3)});
    CHECK(r[0] == 1);
    CHECK(r[1] == 1);
}

TEST_CASE("gamma canonical representatives") {
    auto kq = field_Q();
    IdealSpec whole = whole_ring(*kq);
    CHECK(gamma_canonical(whole, {Rat(7, 3)}) == std::vector<Rat>{Rat(1, 3)});
    CHECK(gamma_canonical(whole, {Rat(-1, 4)}) == std::vector<Rat>{Rat(3, 4)});
}

TEST_CASE("duality compatibility of the reference rings") {
    for (auto k : {field_Q(), field_Qsqrt2(), field_Qi(), field_Qcbrt2()}) {
        CHECK(is_duality_compatible(whole_ring(*k)));
        CHECK(is_duality_compatible(principal_ideal(fe_from_int(*k, Int(3)))));
    }
}

TEST_CASE("rho rule") {
    auto ki = field_Qi();
    double r1 = rho_for_eta(*ki, 0.25), r2 = rho_for_eta(*ki, 0.5);
    CHECK(r1 > 0);
    CHECK(r2 > r1);
    CHECK(r2 < 1);
}

TEST_CASE("property suites on the four reference fields") {
    const uint64_t seed = 42;
    long d = 0;
    for (auto k : {field_Q(), field_Qsqrt2(), field_Qi(), field_Qcbrt2()}) {
        INFO(k->label);
        CHECK(props::norm_multiplicativity(*k, seed) == "");
        CHECK(props::embedding_homomorphism(*k, seed) == "");
        CHECK(props::trace_linearity(*k, seed) == "");
        CHECK(props::norm_compatibility(*k, seed) == "");
        CHECK(props::height_constant(*k, seed, 2000) == "");
        CHECK(props::submultiplicativity(*k, seed, 2000) == "");
        CHECK(props::denominator_ideality(*k, seed) == "");
        ExtensionSpec K = props::quadratic_extension(*k, k->label == "Q(i)" ? 2 : -1);
        CHECK(props::extension_norm_multiplicativity(K, seed) == "");
        ++d;
    }
    CHECK(d == 4);
}

}  // TEST_SUITE
