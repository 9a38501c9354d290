#pragma once

#include <memory>
#include <string>

#include "nfcircle/algebra_point.hpp"
#include "nfcircle/ideal.hpp"
#include "nfcircle/shifted_form.hpp"

namespace nfc {

/// Product box B' = B1 x B2 x B3 in omega-coordinates: 2n+1 slots of m
/// coordinates each, common radius rho, max-coordinate metric. The dilation
/// P*B has center P*center and radius P*rho.
struct BoxSpec {
    std::size_t m = 0, n = 0;
    std::vector<double> center;  // (2n+1)*m
    double rho = 0;

    std::size_t slots() const { return 2 * n + 1; }
    const double* slot_center(std::size_t s) const { return center.data() + s * m; }
    bool contains(double P, std::size_t slot, const std::vector<Int>& coords) const {
        for (std::size_t i = 0; i < m; ++i) {
            double x = coords[i].get_d();
            if (!(std::fabs(x - P * slot_center(slot)[i]) < P * rho)) return false;
        }
        return true;
    }
};

/// One experiment: the equation a N(x) + b N(y) = z^n with congruence and
/// archimedean approximation data.
struct EquationInstance {
    std::shared_ptr<const FieldSpec> k;
    std::shared_ptr<const ExtensionSpec> K;
    std::shared_ptr<const NormFormPoly> N;
    std::shared_ptr<const ShiftedForm> form;  // shifts = congruence residues

    FieldElement a, b;
    unsigned n = 0;
    IdealSpec modulus;                       // the ideal n
    std::vector<std::vector<Int>> residues;  // 2n+1 slots, each m coords, reduced
    std::vector<double> targets;             // (2n+1)*m archimedean targets
    double eta = 0.5;
    BoxSpec box;
    std::string label;

    std::size_t m() const { return k->m; }
    std::size_t slots() const { return 2 * n + 1; }
};

/// rho(eta) rule: eta / (2 c^2) with c the computed embedding row-sum bound
/// (|pi(x)| <= c|x| and per-row norms coincide with c's row sums).
double rho_for_eta(const FieldSpec& k, double eta);

/// Builds an instance; validates sizes, reduces residues, derives the box
/// from targets and rho (or rho(eta) when rho_override <= 0).
EquationInstance make_instance(std::shared_ptr<const FieldSpec> k,
                               std::shared_ptr<const ExtensionSpec> K,
                               const FieldElement& a, const FieldElement& b,
                               const IdealSpec& modulus,
                               std::vector<std::vector<Int>> residues,
                               std::vector<double> targets, double eta,
                               double rho_override = -1,
                               std::vector<double> center_override = {},
                               std::string label = "");

struct CountRow {
    double P = 0;
    Int count = 0;
    double elapsed_ms = 0;
    bool budget_hit = false;
};

struct Witness {
    std::vector<std::vector<Int>> slot_coords;  // 2n+1 slots
    double P = 0;
};

struct CountReport {
    std::vector<CountRow> rows;
    std::vector<Witness> witnesses;
};

}  // namespace nfc
