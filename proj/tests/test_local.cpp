#include <doctest.h>

#include <cmath>

#include "nfcircle/fixtures.hpp"
#include "nfcircle/local.hpp"

using namespace nfc;

namespace {

MPoly<Rat> univariate(std::initializer_list<long> coeffs) {
    MPoly<Rat> f(1);
    unsigned e = 0;
    for (long c : coeffs) f.add_term({e++}, Rat(c));
    return f;
}

IdealSpec prime_of(const EquationInstance& inst, long p) {
    return principal_ideal(fe_from_int(*inst.k, Int(p)));
}

}  // namespace

TEST_SUITE("local") {

TEST_CASE("square root of 2 in the 7-adics") {
    MPoly<Rat> f = univariate({-2, 0, 1});
    LocalCertificate c = hensel_certify_poly(f, Int(7), 2);
    REQUIRE(c.found);
    CHECK(c.j == 2);
    CHECK(c.witness[0] == 10);
    CHECK(c.deriv_val == 0);
    CHECK(c.examined > 0);
    CHECK(replay_hensel(c, f));

    LocalCertificate deep = hensel_certify_poly(f, Int(7), 5);
    CHECK(deep.found);
    CHECK(deep.witness[0] % 49 == 10);
    Int mod49 = deep.witness[0] * deep.witness[0] - 2;
    CHECK(mod49 % Int(16807) == 0);
}

TEST_CASE("insolubility and singular roots") {
    MPoly<Rat> f = univariate({-2, 0, 1});
    LocalCertificate none = hensel_certify_poly(f, Int(3), 3);
    CHECK_FALSE(none.found);
    CHECK(none.definitive_insoluble);
    CHECK(none.search_depth >= 1);

    MPoly<Rat> sq = univariate({0, 0, 1});
    LocalCertificate stuck = hensel_certify_poly(sq, Int(5), 3, {}, 0, 1'000'000);
    CHECK_FALSE(stuck.found);
    CHECK_FALSE(stuck.definitive_insoluble);
    CHECK(stuck.search_depth >= 1);
}

TEST_CASE("a tiny budget is reported, not hidden") {
    EquationInstance qi = builtin_fixture("qi");
    LocalCertificate c = hensel_certify(prime_of(qi, 5), qi, 3, 3);
    CHECK_FALSE(c.found);
    CHECK_FALSE(c.definitive_insoluble);
    CHECK(c.note.find("budget") != std::string::npos);
}

TEST_CASE("instance certification at split primes") {
    EquationInstance qi = builtin_fixture("qi");
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        LocalCertificate c = hensel_certify(prime_of(qi, p), qi, 3);
        INFO("p = ", p);
        REQUIRE(c.found);
        CHECK(c.j >= 3);
        CHECK(c.j >= 2 * c.deriv_val + 1);
        CHECK(replay_hensel(c, qi));
    }
}

TEST_CASE("lift refines the shallower witness") {
    EquationInstance qi = builtin_fixture("qi");
    LocalCertificate c3 = hensel_certify(prime_of(qi, 5), qi, 3);
    LocalCertificate c4 = hensel_certify(prime_of(qi, 5), qi, 4);
    REQUIRE(c3.found);
    REQUIRE(c4.found);
    Int mod = 1;
    for (unsigned i = 0; i < c3.j; ++i) mod *= 5;
    for (std::size_t v = 0; v < c3.witness.size(); ++v)
        CHECK(c4.witness[v] % mod == c3.witness[v]);
}

TEST_CASE("definitive insolubility of the mod-3 obstruction") {
    EquationInstance bad = builtin_fixture("qi-insoluble3");
    LocalCertificate c3 = hensel_certify(prime_of(bad, 3), bad, 3);
    CHECK_FALSE(c3.found);
    CHECK(c3.definitive_insoluble);

    for (long p : {2L, 5L, 7L}) {
        LocalCertificate c = hensel_certify(prime_of(bad, p), bad, 3);
        INFO("p = ", p);
        CHECK(c.found);
        CHECK(replay_hensel(c, bad));
    }
}

TEST_CASE("witnesses refine the congruence residue at coupled primes") {
    EquationInstance wa = builtin_fixture("wapprox-qi");
    LocalCertificate c = hensel_certify(prime_of(wa, 3), wa, 3);
    REQUIRE(c.found);
    CHECK(c.residue_depth >= 1);
    for (std::size_t s = 0; s < wa.slots(); ++s)
        CHECK(c.witness[s] % 3 == wa.residues[s][0] % 3);
    CHECK(replay_hensel(c, wa));
}

TEST_CASE("real place certification") {
    EquationInstance qi = builtin_fixture("qi");
    auto certs = real_place_certify(qi);
    REQUIRE(certs.size() == 1);
    CHECK(certs[0].ok);
    CHECK(std::fabs(certs[0].value) < 1e-9);
    CHECK(certs[0].grad_norm > 1e-6);
    CHECK(certs[0].margin > 0);

    std::vector<std::vector<Int>> res(5, std::vector<Int>{Int(0)});
    EquationInstance origin = make_instance(qi.k, qi.K, qi.a, qi.b, whole_ring(*qi.k), res,
                                            std::vector<double>(5, 0.0), 0.5, 0.3, {},
                                            "origin");
    CHECK_FALSE(real_place_certify(origin)[0].ok);

    std::vector<double> nudged = qi.targets;
    nudged[4] += 1e-3;
    EquationInstance off = make_instance(qi.k, qi.K, qi.a, qi.b, qi.modulus, qi.residues,
                                         nudged, qi.eta, qi.box.rho, {}, "off");
    CHECK_FALSE(real_place_certify(off)[0].ok);
    CHECK(real_place_certify(off, 0.1)[0].ok);
}

}  // TEST_SUITE
