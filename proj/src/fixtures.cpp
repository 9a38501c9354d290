#include "nfcircle/fixtures.hpp"

#include "nfcircle/extension.hpp"
#include "nfcircle/ideal.hpp"
#include "nfcircle/lattice.hpp"
#include "nfcircle/util.hpp"

namespace nfc {

namespace {

std::shared_ptr<const FieldSpec> cached(const std::vector<Int>& minpoly,
                                        const std::string& label) {
    return std::make_shared<FieldSpec>(make_power_basis_field(minpoly, label));
}

// flat n x n multiplication table for tau^2 = d over k
std::vector<FieldElement> quadratic_table(const FieldSpec& k, const Int& d) {
    auto fe = [&](long v) { return fe_from_int(k, Int(v)); };
    return {fe(1), fe(0), fe(0), fe(1), fe(0), fe(1), fe_from_int(k, d), fe(0)};
}

// tau^3 = 2: basis (1, tau, tau^2)
std::vector<FieldElement> cbrt2_table(const FieldSpec& k) {
    std::vector<std::vector<long>> rows = {
        {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
        {0, 1, 0}, {0, 0, 1}, {2, 0, 0},
        {0, 0, 1}, {2, 0, 0}, {0, 2, 0},
    };
    std::vector<FieldElement> flat;
    for (const auto& r : rows)
        for (long c : r) flat.push_back(fe_from_int(k, Int(c)));
    return flat;
}

}  // namespace

std::shared_ptr<const FieldSpec> field_Q() { return cached({Int(0), Int(1)}, "Q"); }
std::shared_ptr<const FieldSpec> field_Qsqrt2() {
    return cached({Int(-2), Int(0), Int(1)}, "Q(sqrt2)");
}
std::shared_ptr<const FieldSpec> field_Qi() { return cached({Int(1), Int(0), Int(1)}, "Q(i)"); }
std::shared_ptr<const FieldSpec> field_Qcbrt2() {
    return cached({Int(-2), Int(0), Int(0), Int(1)}, "Q(cbrt2)");
}

EquationInstance builtin_fixture(const std::string& name) {
    auto k = field_Q();
    auto fe = [&](long v) { return fe_from_int(*k, Int(v)); };
    if (name == "qi" || name == "qi-insoluble3" || name == "wapprox-qi") {
        auto K = std::make_shared<ExtensionSpec>(
            make_extension_spec(*k, 2, quadratic_table(*k, Int(-1)), "Q(i)/Q"));
        if (name == "qi") {
            std::vector<std::vector<Int>> res(5, std::vector<Int>{Int(0)});
            return make_instance(k, K, fe(1), fe(1), whole_ring(*k), res,
                                 {0.6, 0.8, 0.0, 0.0, 1.0}, 0.5, 0.4, {}, "qi");
        }
        if (name == "qi-insoluble3") {
            std::vector<std::vector<Int>> res = {
                {Int(1)}, {Int(1)}, {Int(1)}, {Int(1)}, {Int(0)}};
            return make_instance(k, K, fe(1), fe(1), principal_ideal(fe(3)), res,
                                 {0.6, 0.8, 0.0, 0.0, 1.0}, 0.5, 0.4, {}, "qi-insoluble3");
        }
        std::vector<std::vector<Int>> res = {{Int(1)}, {Int(2)}, {Int(2)}, {Int(1)}, {Int(2)}};
        return make_instance(k, K, fe(1), fe(1), principal_ideal(fe(3)), res,
                             {0.2, 0.4, 0.4, 0.8, 1.0}, 0.3, -1, {}, "wapprox-qi");
    }
    if (name == "qcbrt2") {
        auto K = std::make_shared<ExtensionSpec>(
            make_extension_spec(*k, 3, cbrt2_table(*k), "Q(cbrt2)/Q"));
        std::vector<std::vector<Int>> res(7, std::vector<Int>{Int(0)});
        return make_instance(k, K, fe(1), fe(1), whole_ring(*k), res,
                             {1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0}, 0.5, 0.3, {}, "qcbrt2");
    }
    throw SchemaError("unknown builtin fixture: " + name);
}

std::vector<std::string> builtin_fixture_names() {
    return {"qi", "qi-insoluble3", "wapprox-qi", "qcbrt2"};
}

EquationInstance random_small_instance(uint64_t seed, std::size_t index) {
    Rng::Stream rng(seed, index);
    bool base_q = index % 2 == 0;
    auto k = base_q ? field_Q() : field_Qsqrt2();
    auto fe = [&](long v) { return fe_from_int(*k, Int(v)); };

    Int d = rng.next_double() < 0.5 ? Int(-1) : Int(-2);
    auto K = std::make_shared<ExtensionSpec>(
        make_extension_spec(*k, 2, quadratic_table(*k, d), "rand-ext"));

    FieldElement a = fe(1 + static_cast<long>(rng.next_double() * 2));
    FieldElement b = fe((rng.next_double() < 0.3 ? -1 : 1) *
                        (1 + static_cast<long>(rng.next_double() * 2)));
    long q0 = rng.next_double() < 0.5 ? 1 : 2;
    IdealSpec modulus = q0 == 1 ? whole_ring(*k) : principal_ideal(fe(q0));

    const std::size_t m = k->m;
    std::vector<std::vector<Int>> res;
    for (std::size_t s = 0; s < 5; ++s) {
        std::vector<Int> rc;
        for (std::size_t l = 0; l < m; ++l)
            rc.push_back(Int(static_cast<long>(rng.next_double() * q0)));
        res.push_back(rc);
    }
    std::vector<double> targets;
    for (std::size_t c = 0; c < 5 * m; ++c) targets.push_back(2.0 * rng.next_double() - 1.0);
    // keep the naive-oracle point product desk-scale for degree-2 bases
    double rho = m == 1 ? 0.25 + 0.15 * rng.next_double()
                        : 0.12 + 0.08 * rng.next_double();
    return make_instance(k, K, a, b, modulus, res, targets, 0.5, rho, {},
                         "rand-" + std::to_string(index));
}

}  // namespace nfc
