#include "nfcircle/extension.hpp"

namespace nfc {

ExtensionSpec make_extension_spec(const FieldSpec& k, std::size_t n,
                                  std::vector<FieldElement> tau_mult, std::string label) {
    if (n == 0) throw SchemaError("extension degree must be positive");
    if (tau_mult.size() != n * n * n) throw SchemaError("tau_mult_table must have n^3 entries");
    for (const auto& e : tau_mult) {
        if (e.k != &k) throw SchemaError("tau table entry over wrong base field");
        if (!fe_is_integral(e)) throw SchemaError("tau table entries must be integral");
    }
    ExtensionSpec K;
    K.k = &k;
    K.n = n;
    K.tau_mult = std::move(tau_mult);
    K.label = std::move(label);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            for (std::size_t l = 0; l < n; ++l)
                if (!(K.T(i, j, l) == K.T(j, i, l)))
                    throw SchemaError("tau table is not commutative");

    auto tau = [&](std::size_t i) {
        KElement e(n, fe_zero(k));
        e[i] = fe_one(k);
        return e;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t l = j; l < n; ++l) {
                KElement lhs = kelem_mul(K, kelem_mul(K, tau(i), tau(j)), tau(l));
                KElement rhs = kelem_mul(K, tau(i), kelem_mul(K, tau(j), tau(l)));
                for (std::size_t t = 0; t < n; ++t)
                    if (!(lhs[t] == rhs[t])) throw SchemaError("tau table is not associative");
            }
    return K;
}

KElement kelem_mul(const ExtensionSpec& K, const KElement& u, const KElement& v) {
    const FieldSpec& k = *K.k;
    KElement out(K.n, fe_zero(k));
    for (std::size_t i = 0; i < K.n; ++i) {
        if (fe_is_zero(u[i])) continue;
        for (std::size_t j = 0; j < K.n; ++j) {
            if (fe_is_zero(v[j])) continue;
            FieldElement p = field_mul(u[i], v[j]);
            for (std::size_t l = 0; l < K.n; ++l) {
                const FieldElement& t = K.T(i, j, l);
                if (!fe_is_zero(t)) out[l] = field_add(out[l], field_mul(p, t));
            }
        }
    }
    return out;
}

KElement kelem_from_ints(const ExtensionSpec& K, const std::vector<Int>& tau_coords) {
    if (tau_coords.size() != K.n) throw SchemaError("tau coordinate length mismatch");
    KElement out(K.n, fe_zero(*K.k));
    for (std::size_t i = 0; i < K.n; ++i) out[i] = fe_from_int(*K.k, tau_coords[i]);
    return out;
}

/// determinant of an n x n matrix of field elements by cofactor expansion
static FieldElement fe_det(const FieldSpec& k, const std::vector<FieldElement>& M,
                           std::vector<std::size_t> rows, std::vector<std::size_t> cols,
                           std::size_t n) {
    if (rows.size() == 1) return M[rows[0] * n + cols[0]];
    FieldElement acc = fe_zero(k);
    for (std::size_t t = 0; t < cols.size(); ++t) {
        const FieldElement& pivot = M[rows[0] * n + cols[t]];
        if (fe_is_zero(pivot)) continue;
        std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
        std::vector<std::size_t> sub_cols;
        for (std::size_t s = 0; s < cols.size(); ++s)
            if (s != t) sub_cols.push_back(cols[s]);
        FieldElement minor = fe_det(k, M, sub_rows, sub_cols, n);
        FieldElement term = field_mul(pivot, minor);
        if (t % 2 == 1) term = field_neg(term);
        acc = field_add(acc, term);
    }
    return acc;
}

FieldElement kelem_norm(const ExtensionSpec& K, const KElement& u) {
    const FieldSpec& k = *K.k;
    const std::size_t n = K.n;
    // matrix of multiplication by u: tau_i * u = sum_l M[i][l] tau_l
    std::vector<FieldElement> M(n * n, fe_zero(k));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (fe_is_zero(u[j])) continue;
            for (std::size_t l = 0; l < n; ++l) {
                const FieldElement& t = K.T(i, j, l);
                if (!fe_is_zero(t)) M[i * n + l] = field_add(M[i * n + l], field_mul(u[j], t));
            }
        }
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return fe_det(k, M, idx, idx, n);
}

NormFormPoly build_norm_form(const ExtensionSpec& K) {
    const FieldSpec& k = *K.k;
    const std::size_t n = K.n;
    // symbolic multiplication matrix: entries are linear forms in x_1..x_n
    using P = MPoly<FieldElement>;
    std::vector<P> M(n * n, P(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l) {
                const FieldElement& t = K.T(i, j, l);
                if (fe_is_zero(t)) continue;
                std::vector<unsigned> e(n, 0);
                e[j] = 1;
                M[i * n + l].add_term(e, t);
            }
    // determinant by cofactor expansion on polynomials
    struct Det {
        const std::vector<P>& M;
        std::size_t n;
        const FieldSpec& k;
        P run(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
            if (rows.size() == 1) return M[rows[0] * n + cols[0]];
            P acc(n);
            for (std::size_t t = 0; t < cols.size(); ++t) {
                const P& pivot = M[rows[0] * n + cols[t]];
                if (pivot.terms.empty()) continue;
                std::vector<std::size_t> sr(rows.begin() + 1, rows.end());
                std::vector<std::size_t> sc;
                for (std::size_t s = 0; s < cols.size(); ++s)
                    if (s != t) sc.push_back(cols[s]);
                P term = pivot * run(sr, sc);
                if (t % 2 == 1) term = P(n) - term;
                acc = acc + term;
            }
            return acc;
        }
    };
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    Det det{M, n, k};
    NormFormPoly N;
    N.K = &K;
    N.form = det.run(idx, idx);
    if (!N.form.is_homogeneous(static_cast<unsigned>(n)))
        throw InternalError("norm form is not homogeneous");
    for (const auto& [e, c] : N.form.terms)
        if (!fe_is_integral(c)) throw SchemaError("norm form has non-integral coefficients");
    N.flat = flatten_over_Q(N.form, k);
    N.diagonal = true;
    for (const auto& [e, c] : N.form.terms) {
        std::size_t nz = 0;
        for (unsigned x : e)
            if (x > 0) ++nz;
        if (nz > 1) N.diagonal = false;
    }
    return N;
}

FieldElement norm_form_eval(const NormFormPoly& N, const std::vector<FieldElement>& x) {
    return eval_fe(N.form, *N.K->k, x);
}

}  // namespace nfc
