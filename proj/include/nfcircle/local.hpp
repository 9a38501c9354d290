#pragma once

#include "nfcircle/instance.hpp"
#include "nfcircle/poly.hpp"

namespace nfc {

/// Hensel certificate at a rational prime: F(witness) = 0 mod p^j with a
/// partial derivative of p-valuation t at the witness, j >= 2t + 1, so the
/// witness lifts to a p-adic solution. When the congruence modulus is
/// divisible by p the witness refines the instance residue to depth
/// residue_depth.
struct LocalCertificate {
    Int p = 0;
    bool found = false;
    bool definitive_insoluble = false;
    unsigned j = 0;                // certified depth
    std::vector<Int> witness;      // canonical in [0, p^j)
    std::size_t deriv_index = 0;
    unsigned deriv_val = 0;        // t = v_p(dF/dx_i at the witness)
    std::vector<Int> residue;      // coupled congruence target mod p^residue_depth
    unsigned residue_depth = 0;
    unsigned search_depth = 0;     // moduli p^d exhausted by the search
    uint64_t examined = 0;         // points evaluated against the budget
    std::string note;
};

/// Exhaustive lexicographic search for a root of F mod p^{2t+1} with some
/// partial derivative of valuation exactly t (t = 0, 1, ... within budget),
/// then Newton lift along that coordinate to p^{j_target}. The search is
/// restricted to points congruent to `residue` mod p^{residue_depth}.
/// Definitive insolubility is reported only when some level has no roots at
/// all, which projects down to every deeper level.
LocalCertificate hensel_certify_poly(const MPoly<Rat>& F, const Int& p, unsigned j_target,
                                     const std::vector<Int>& residue = {},
                                     unsigned residue_depth = 0,
                                     uint64_t budget = 50'000'000ULL);

/// Instance-level certification at a degree-one prime p (m = 1): works on the
/// leading form with the p-part of the congruence constraint coupled in.
LocalCertificate hensel_certify(const IdealSpec& p, const EquationInstance& inst,
                                unsigned j_target = 3, uint64_t budget = 50'000'000ULL);

/// Exact replay: reduces the witness, re-evaluates F and the certified
/// partial derivative, and re-checks the residue coupling.
bool replay_hensel(const LocalCertificate& c, const MPoly<Rat>& F);
bool replay_hensel(const LocalCertificate& c, const EquationInstance& inst);

struct RealPlaceCertificate {
    std::size_t place = 0;   // omega-coordinate index
    double value = 0;        // leading form at the box center
    double grad_norm = 0;
    double tol = 0;
    double margin = 0;
    bool ok = false;
};

/// Archimedean certification: |F0*(center)| < tol and |grad F0*(center)| >
/// margin, per omega-coordinate of the leading form.
std::vector<RealPlaceCertificate> real_place_certify(const EquationInstance& inst,
                                                     double tol = 1e-9,
                                                     double margin = 1e-6);

}  // namespace nfc
