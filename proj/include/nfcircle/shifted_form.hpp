#pragma once

#include "nfcircle/extension.hpp"

namespace nfc {

/// F(k) = a N(k_x + x_shift) + b N(k_y + y_shift) - (k_z + z_shift)^n in
/// 2n+1 variables over k, together with its real flattening F* (the m
/// omega-coordinate polynomials in (2n+1)m real variables), the gradient of
/// F*, and the homogeneous leading form (shifts dropped).
struct ShiftedForm {
    const ExtensionSpec* K = nullptr;
    FieldElement a, b;
    unsigned n = 0;
    std::vector<FieldElement> x_shift, y_shift;  // n each
    FieldElement z_shift;

    MPoly<FieldElement> F;                      // 2n+1 vars over k
    std::vector<MPoly<Rat>> Fstar;              // m polys, (2n+1)m vars
    std::vector<std::vector<MPoly<Rat>>> grad;  // grad[v][l] = d Fstar_l / d var v
    MPoly<FieldElement> F0;                     // leading form, zero shifts
    std::vector<MPoly<Rat>> F0star;
};

ShiftedForm build_shifted_form(const FieldElement& a, const FieldElement& b,
                               const ExtensionSpec& K,
                               const std::vector<FieldElement>& x_shift,
                               const std::vector<FieldElement>& y_shift,
                               const FieldElement& z_shift);

/// F at explicit k-valued arguments (x block, y block, z), exact.
FieldElement shifted_form_eval(const ShiftedForm& sf, const std::vector<FieldElement>& args);

/// F at integral omega-coordinates of all 2n+1 slots, exact.
FieldElement shifted_form_eval_coords(const ShiftedForm& sf,
                                      const std::vector<std::vector<Int>>& slot_coords);

}  // namespace nfc
