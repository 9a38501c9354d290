#pragma once

#include <complex>
#include <string>
#include <vector>

#include "nfcircle/linalg.hpp"
#include "nfcircle/rational.hpp"

namespace nfc {

/// A number field k of degree m over Q, given by an integral-basis
/// multiplication table and numerical embedding data for the n1 real and n2
/// complex places.
struct FieldSpec {
    std::size_t m = 0;
    std::size_t n1 = 0, n2 = 0;
    std::string label;
    std::vector<std::string> basis_labels;
    /// m*m*m rationals: omega_i * omega_j = sum_l t(i,j,l) omega_l
    std::vector<Rat> mult;
    /// (n1+n2) x m values sigma_i(omega_j); real places first, one
    /// representative (positive imaginary part) per complex pair
    std::vector<std::complex<double>> emb;
    /// certified relative error bound on emb entries
    double emb_err = 1e-15;

    // derived, filled by make_field_spec
    std::vector<Rat> identity_coords;  // coords of 1
    std::vector<Rat> basis_trace;      // Tr(omega_j), exact
    std::vector<Rat> trace_form;       // m*m, Tr(omega_i omega_j), exact
    std::vector<double> emb_rows;      // m x m real coordinate matrix of V
    std::vector<double> emb_rows_inv;  // its inverse

    const Rat& t(std::size_t i, std::size_t j, std::size_t l) const {
        return mult[(i * m + j) * m + l];
    }
    std::complex<double> sigma(std::size_t place, std::size_t j) const {
        return emb[place * m + j];
    }
    std::size_t places() const { return n1 + n2; }
};

/// An element of k: exact rational coordinates in the omega basis.
struct FieldElement {
    const FieldSpec* k = nullptr;
    std::vector<Rat> c;

    FieldElement() = default;
    FieldElement(const FieldSpec& spec, std::vector<Rat> coords)
        : k(&spec), c(std::move(coords)) {}

    bool operator==(const FieldElement& o) const { return k == o.k && c == o.c; }
};

FieldElement fe_zero(const FieldSpec& k);
FieldElement fe_one(const FieldSpec& k);
FieldElement fe_from_int(const FieldSpec& k, const Int& v);
FieldElement fe_from_coords(const FieldSpec& k, const std::vector<Int>& v);

FieldElement field_add(const FieldElement& u, const FieldElement& v);
FieldElement field_sub(const FieldElement& u, const FieldElement& v);
FieldElement field_neg(const FieldElement& u);
FieldElement field_mul(const FieldElement& u, const FieldElement& v);
FieldElement field_scale(const Rat& s, const FieldElement& u);
/// u / v; throws when v is not invertible (malformed table or v = 0)
FieldElement field_div(const FieldElement& u, const FieldElement& v);

bool fe_is_zero(const FieldElement& u);
bool fe_is_integral(const FieldElement& u);

/// Matrix of multiplication by u acting on row coordinate vectors:
/// (v*u) = v . M, M[i][l] = coordinate l of omega_i * u.
QMat mult_matrix_rows(const FieldElement& u);

Rat trace_exact(const FieldElement& u);
Rat norm_exact(const FieldElement& u);

/// Validates the table (commutativity, associativity, identity, signature
/// arithmetic, embedding consistency) and fills the derived fields.
/// Throws SchemaError on any violation.
FieldSpec make_field_spec(std::size_t m, std::vector<Rat> mult,
                          std::size_t n1, std::size_t n2,
                          std::vector<std::complex<double>> emb,
                          std::string label = "",
                          std::vector<std::string> basis_labels = {});

/// Builds the power-basis field Q[t]/(p) from a monic integer polynomial
/// p = t^m + a_{m-1} t^{m-1} + ... + a_0 given as coeffs (a_0 .. a_{m-1}, 1).
/// Embeddings come from polynomial root finding with a certified error bound;
/// real roots are ordered descending, complex representatives (positive
/// imaginary part) by descending real part.
FieldSpec make_power_basis_field(const std::vector<Int>& coeffs, std::string label = "");

/// Roots of a monic complex polynomial by the Durand-Kerner iteration.
/// Returns all m roots (unordered) and writes the max certified absolute
/// error bound m*|p(z)|/|p'(z)| to err_bound.
std::vector<std::complex<double>> all_roots(const std::vector<std::complex<double>>& monic_coeffs,
                                            double* err_bound);

}  // namespace nfc
