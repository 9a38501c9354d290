#pragma once

#include <vector>

#include "nfcircle/field.hpp"

namespace nfc {

/// An integral ideal (or more generally a full-rank sublattice of o closed
/// under the basis multiplications) as a canonical triangular Z-basis in
/// omega coordinates.
struct IdealSpec {
    const FieldSpec* k = nullptr;
    ZMat basis;  // m x m HNF rows
    Int norm = 1;

    bool operator==(const IdealSpec& o) const {
        return k == o.k && basis == o.basis && norm == o.norm;
    }
};

/// The unit ideal <1> = o.
IdealSpec whole_ring(const FieldSpec& k);

/// Ideal generated by the given integral elements.
IdealSpec ideal_from_generators(const FieldSpec& k, const std::vector<FieldElement>& gens);

IdealSpec principal_ideal(const FieldElement& g);

/// Lattice with the given integer rows as Z-basis (validated full rank and
/// closed under multiplication by each omega_i).
IdealSpec ideal_from_basis_rows(const FieldSpec& k, const ZMat& rows);

IdealSpec ideal_mul(const IdealSpec& A, const IdealSpec& B);

/// A^e by repeated multiplication.
IdealSpec ideal_pow(const IdealSpec& A, unsigned e);

bool ideal_contains(const IdealSpec& A, const FieldElement& u);

/// Least non-negative canonical representative of u modulo A (coordinate i
/// reduced into [0, basis[i][i])).
std::vector<Int> ideal_reduce(const IdealSpec& A, const std::vector<Int>& coords);

/// All norm-many canonical representatives of o/A, lexicographic order.
std::vector<std::vector<Int>> ideal_residues(const IdealSpec& A);

/// Representatives of B/(B*A) inside B: offset + the reps of the quotient,
/// lexicographic. Used for the complete-sum ranges k in n mod n*a_gamma.
std::vector<std::vector<Int>> sublattice_residues(const IdealSpec& B, const IdealSpec& BA);

/// Largest e with u in A^e, capped at e_max (u must be nonzero).
unsigned ideal_valuation(const FieldElement& u, const IdealSpec& A, unsigned e_max);

/// gamma = num/den with den a nonzero integral element. Returns
/// a_gamma = {kappa in o : kappa*gamma in n}, solved exactly.
IdealSpec denominator_ideal(const FieldElement& num, const FieldElement& den,
                            const IdealSpec& n);

/// Convenience: gamma given by rational coordinates.
IdealSpec denominator_ideal_coords(const FieldSpec& k, const std::vector<Rat>& gamma,
                                   const IdealSpec& n);

/// Exact duality check: Tr(nu * omega_j) is an integer for every basis
/// element nu of n and every omega_j, so e(Tr(gamma * (integer combination)))
/// is well defined on classes of gamma modulo the lattice dual pairing.
bool is_duality_compatible(const IdealSpec& n);

/// Canonical representative of gamma modulo the lattice of n: coordinate i
/// reduced into [0, basis[i][i]) left to right.
std::vector<Rat> gamma_canonical(const IdealSpec& n, std::vector<Rat> gamma);

}  // namespace nfc
