#include "nfcircle/shifted_form.hpp"

namespace nfc {

/// substitute var j -> var j + shift (a constant of k) by binomial expansion
static MPoly<FieldElement> shift_vars(const MPoly<FieldElement>& p, const FieldSpec& k,
                                      const std::vector<FieldElement>& shifts) {
    MPoly<FieldElement> acc(p.nvars);
    for (const auto& [e, c] : p.terms) {
        MPoly<FieldElement> term = MPoly<FieldElement>::constant(p.nvars, c);
        for (std::size_t j = 0; j < p.nvars; ++j) {
            if (e[j] == 0) continue;
            MPoly<FieldElement> lin(p.nvars);
            std::vector<unsigned> ex(p.nvars, 0);
            ex[j] = 1;
            lin.add_term(ex, fe_one(k));
            if (!fe_is_zero(shifts[j]))
                lin.add_term(std::vector<unsigned>(p.nvars, 0), shifts[j]);
            for (unsigned r = 0; r < e[j]; ++r) term = term * lin;
        }
        acc = acc + term;
    }
    return acc;
}

/// embed an n-variable polynomial into 2n+1 variables at slot offset
static MPoly<FieldElement> promote(const MPoly<FieldElement>& p, std::size_t total,
                                   std::size_t offset) {
    MPoly<FieldElement> out(total);
    for (const auto& [e, c] : p.terms) {
        std::vector<unsigned> ex(total, 0);
        for (std::size_t i = 0; i < p.nvars; ++i) ex[offset + i] = e[i];
        out.add_term(ex, c);
    }
    return out;
}

ShiftedForm build_shifted_form(const FieldElement& a, const FieldElement& b,
                               const ExtensionSpec& K,
                               const std::vector<FieldElement>& x_shift,
                               const std::vector<FieldElement>& y_shift,
                               const FieldElement& z_shift) {
    const FieldSpec& k = *K.k;
    const std::size_t n = K.n;
    if (fe_is_zero(a) || fe_is_zero(b)) throw SchemaError("degenerate equation: a or b is zero");
    if (x_shift.size() != n || y_shift.size() != n)
        throw SchemaError("shift blocks must have n entries");
    for (const auto& s : x_shift)
        if (!fe_is_integral(s)) throw SchemaError("shifts must be integral");
    for (const auto& s : y_shift)
        if (!fe_is_integral(s)) throw SchemaError("shifts must be integral");
    if (!fe_is_integral(z_shift)) throw SchemaError("shifts must be integral");

    NormFormPoly N = build_norm_form(K);
    const std::size_t total = 2 * n + 1;

    ShiftedForm sf;
    sf.K = &K;
    sf.a = a;
    sf.b = b;
    sf.n = static_cast<unsigned>(n);
    sf.x_shift = x_shift;
    sf.y_shift = y_shift;
    sf.z_shift = z_shift;

    MPoly<FieldElement> Nx = promote(N.form, total, 0);
    MPoly<FieldElement> Ny = promote(N.form, total, n);
    MPoly<FieldElement> zn(total);
    {
        MPoly<FieldElement> z = MPoly<FieldElement>::variable(total, 2 * n, fe_one(k));
        zn = MPoly<FieldElement>::constant(total, fe_one(k));
        for (std::size_t r = 0; r < n; ++r) zn = zn * z;
    }
    MPoly<FieldElement> F0 =
        Nx.scaled(a) + Ny.scaled(b) - zn;  // homogeneous of degree n
    sf.F0 = F0;

    std::vector<FieldElement> shifts(total, fe_zero(k));
    for (std::size_t i = 0; i < n; ++i) {
        shifts[i] = x_shift[i];
        shifts[n + i] = y_shift[i];
    }
    shifts[2 * n] = z_shift;
    sf.F = shift_vars(F0, k, shifts);

    sf.Fstar = flatten_over_Q(sf.F, k);
    sf.F0star = flatten_over_Q(sf.F0, k);
    const std::size_t fv = total * k.m;
    sf.grad.resize(fv);
    for (std::size_t v = 0; v < fv; ++v) {
        sf.grad[v].reserve(k.m);
        for (std::size_t l = 0; l < k.m; ++l) sf.grad[v].push_back(sf.Fstar[l].derivative(v));
    }
    return sf;
}

FieldElement shifted_form_eval(const ShiftedForm& sf, const std::vector<FieldElement>& args) {
    return eval_fe(sf.F, *sf.K->k, args);
}

FieldElement shifted_form_eval_coords(const ShiftedForm& sf,
                                      const std::vector<std::vector<Int>>& slot_coords) {
    const FieldSpec& k = *sf.K->k;
    std::vector<FieldElement> args;
    args.reserve(slot_coords.size());
    for (const auto& sc : slot_coords) args.push_back(fe_from_coords(k, sc));
    return eval_fe(sf.F, k, args);
}

}  // namespace nfc
