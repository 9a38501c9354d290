#pragma once

#include "nfcircle/poly.hpp"

namespace nfc {

/// The relative extension K/k of degree n with an integral tau-basis:
/// tau_i tau_j = sum_l T(i,j,l) tau_l with T(i,j,l) in o_k.
struct ExtensionSpec {
    const FieldSpec* k = nullptr;
    std::size_t n = 0;
    std::vector<FieldElement> tau_mult;  // n*n*n entries
    std::string label;

    const FieldElement& T(std::size_t i, std::size_t j, std::size_t l) const {
        return tau_mult[(i * n + j) * n + l];
    }
};

/// An element of K as n coordinates over k in the tau basis.
using KElement = std::vector<FieldElement>;

ExtensionSpec make_extension_spec(const FieldSpec& k, std::size_t n,
                                  std::vector<FieldElement> tau_mult, std::string label = "");

KElement kelem_mul(const ExtensionSpec& K, const KElement& u, const KElement& v);
KElement kelem_from_ints(const ExtensionSpec& K, const std::vector<Int>& tau_coords);

/// N_{K/k} of an explicit element, by the multiplication-matrix determinant.
FieldElement kelem_norm(const ExtensionSpec& K, const KElement& u);

/// The norm form N(x_1..x_n) as a symbolic polynomial over k, plus its
/// flattened omega-coordinate polynomials over Q in n*m real variables.
struct NormFormPoly {
    const ExtensionSpec* K = nullptr;
    MPoly<FieldElement> form;       // n variables, FieldElement coefficients
    std::vector<MPoly<Rat>> flat;   // m coordinate polys in n*m variables
    bool diagonal = false;          // every monomial is a pure power
};

NormFormPoly build_norm_form(const ExtensionSpec& K);

/// Evaluate N at integral tau-coordinates, exactly.
FieldElement norm_form_eval(const NormFormPoly& N, const std::vector<FieldElement>& x);

}  // namespace nfc
