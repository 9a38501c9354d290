#include "nfcircle/field.hpp"

#include <algorithm>
#include <cmath>

#include "nfcircle/util.hpp"

namespace nfc {

FieldElement fe_zero(const FieldSpec& k) { return FieldElement(k, std::vector<Rat>(k.m, Rat(0))); }

FieldElement fe_one(const FieldSpec& k) { return FieldElement(k, k.identity_coords); }

FieldElement fe_from_int(const FieldSpec& k, const Int& v) {
    FieldElement e = fe_one(k);
    for (auto& x : e.c) x *= Rat(v);
    return e;
}

FieldElement fe_from_coords(const FieldSpec& k, const std::vector<Int>& v) {
    if (v.size() != k.m) throw SchemaError("coordinate vector length mismatch");
    std::vector<Rat> c(k.m);
    for (std::size_t i = 0; i < k.m; ++i) c[i] = Rat(v[i]);
    return FieldElement(k, std::move(c));
}

static void check_same_field(const FieldElement& u, const FieldElement& v) {
    if (u.k == nullptr || u.k != v.k) throw SchemaError("mismatched field specification");
}

FieldElement field_add(const FieldElement& u, const FieldElement& v) {
    check_same_field(u, v);
    FieldElement r = u;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += v.c[i];
    return r;
}

FieldElement field_sub(const FieldElement& u, const FieldElement& v) {
    check_same_field(u, v);
    FieldElement r = u;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= v.c[i];
    return r;
}

FieldElement field_neg(const FieldElement& u) {
    FieldElement r = u;
    for (auto& x : r.c) x = -x;
    return r;
}

FieldElement field_mul(const FieldElement& u, const FieldElement& v) {
    check_same_field(u, v);
    const FieldSpec& k = *u.k;
    std::vector<Rat> out(k.m, Rat(0));
    for (std::size_t i = 0; i < k.m; ++i) {
        if (u.c[i] == 0) continue;
        for (std::size_t j = 0; j < k.m; ++j) {
            if (v.c[j] == 0) continue;
            Rat p = u.c[i] * v.c[j];
            for (std::size_t l = 0; l < k.m; ++l) {
                const Rat& t = k.t(i, j, l);
                if (t != 0) out[l] += p * t;
            }
        }
    }
    return FieldElement(k, std::move(out));
}

FieldElement field_scale(const Rat& s, const FieldElement& u) {
    FieldElement r = u;
    for (auto& x : r.c) x *= s;
    return r;
}

bool fe_is_zero(const FieldElement& u) {
    for (const auto& x : u.c)
        if (x != 0) return false;
    return true;
}

bool fe_is_integral(const FieldElement& u) {
    for (const auto& x : u.c)
        if (!is_integer(x)) return false;
    return true;
}

QMat mult_matrix_rows(const FieldElement& u) {
    const FieldSpec& k = *u.k;
    QMat M(k.m, k.m);
    for (std::size_t i = 0; i < k.m; ++i)
        for (std::size_t l = 0; l < k.m; ++l) {
            Rat s(0);
            for (std::size_t j = 0; j < k.m; ++j)
                if (u.c[j] != 0 && k.t(i, j, l) != 0) s += u.c[j] * k.t(i, j, l);
            M.at(i, l) = s;
        }
    return M;
}

FieldElement field_div(const FieldElement& u, const FieldElement& v) {
    check_same_field(u, v);
    // solve x * M_v = u
    QMat M = mult_matrix_rows(v);
    auto x = solve_left(M, u.c);
    if (!x) throw SchemaError("division by non-invertible element");
    return FieldElement(*u.k, std::move(*x));
}

Rat trace_exact(const FieldElement& u) {
    const FieldSpec& k = *u.k;
    Rat s(0);
    for (std::size_t j = 0; j < k.m; ++j)
        if (u.c[j] != 0) s += u.c[j] * k.basis_trace[j];
    return s;
}

Rat norm_exact(const FieldElement& u) {
    const FieldSpec& k = *u.k;
    // determinant of the multiplication matrix by Gaussian elimination
    QMat M = mult_matrix_rows(u);
    Rat det(1);
    std::size_t n = k.m;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && M.at(piv, c) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(M.at(piv, j), M.at(c, j));
            det = -det;
        }
        det *= M.at(c, c);
        Rat inv = 1 / M.at(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (M.at(i, c) == 0) continue;
            Rat f = M.at(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) M.at(i, j) -= f * M.at(c, j);
        }
    }
    return det;
}

static void fill_derived(FieldSpec& k) {
    // identity: solve e with e * omega_j = omega_j for all j, i.e. rows of the
    // system sum_i e_i t(i,j,l) = delta_{jl}
    QMat A(k.m, k.m * k.m);
    std::vector<Rat> rhs(k.m * k.m, Rat(0));
    for (std::size_t i = 0; i < k.m; ++i)
        for (std::size_t j = 0; j < k.m; ++j)
            for (std::size_t l = 0; l < k.m; ++l) A.at(i, j * k.m + l) = k.t(i, j, l);
    for (std::size_t j = 0; j < k.m; ++j) rhs[j * k.m + j] = 1;
    auto e = solve_left(A, rhs);
    if (!e) throw SchemaError("multiplication table has no identity element");
    k.identity_coords = *e;

    // Tr(omega_j) = trace of multiplication-by-omega_j
    k.basis_trace.assign(k.m, Rat(0));
    for (std::size_t j = 0; j < k.m; ++j) {
        Rat s(0);
        for (std::size_t i = 0; i < k.m; ++i) s += k.t(j, i, i);
        k.basis_trace[j] = s;
    }
    k.trace_form.assign(k.m * k.m, Rat(0));
    for (std::size_t i = 0; i < k.m; ++i)
        for (std::size_t j = 0; j < k.m; ++j) {
            Rat s(0);
            for (std::size_t l = 0; l < k.m; ++l)
                if (k.t(i, j, l) != 0) s += k.t(i, j, l) * k.basis_trace[l];
            k.trace_form[i * k.m + j] = s;
        }

    // real coordinate matrix of V: n1 real rows then (Re, Im) row pairs
    k.emb_rows.assign(k.m * k.m, 0.0);
    std::size_t r = 0;
    for (std::size_t p = 0; p < k.n1; ++p, ++r)
        for (std::size_t j = 0; j < k.m; ++j) k.emb_rows[r * k.m + j] = k.sigma(p, j).real();
    for (std::size_t p = k.n1; p < k.places(); ++p) {
        for (std::size_t j = 0; j < k.m; ++j) {
            k.emb_rows[r * k.m + j] = k.sigma(p, j).real();
            k.emb_rows[(r + 1) * k.m + j] = k.sigma(p, j).imag();
        }
        r += 2;
    }
    k.emb_rows_inv = invert_real(k.emb_rows, k.m);
}

FieldSpec make_field_spec(std::size_t m, std::vector<Rat> mult, std::size_t n1, std::size_t n2,
                          std::vector<std::complex<double>> emb, std::string label,
                          std::vector<std::string> basis_labels) {
    if (m == 0) throw SchemaError("degree must be positive");
    if (mult.size() != m * m * m) throw SchemaError("mult_table must have m^3 entries");
    if (m != n1 + 2 * n2) throw SchemaError("signature mismatch: m != n1 + 2*n2");
    if (emb.size() != (n1 + n2) * m) throw SchemaError("embedding_values must be (n1+n2) x m");
    FieldSpec k;
    k.m = m;
    k.n1 = n1;
    k.n2 = n2;
    k.mult = std::move(mult);
    k.emb = std::move(emb);
    k.label = std::move(label);
    if (basis_labels.empty()) {
        for (std::size_t j = 0; j < m; ++j) k.basis_labels.push_back("w" + std::to_string(j + 1));
    } else {
        if (basis_labels.size() != m) throw SchemaError("basis_labels length mismatch");
        k.basis_labels = std::move(basis_labels);
    }

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j)
            for (std::size_t l = 0; l < m; ++l)
                if (k.t(i, j, l) != k.t(j, i, l))
                    throw SchemaError("multiplication table is not commutative");

    fill_derived(k);

    // associativity on basis triples: (wi wj) wl == wi (wj wl)
    auto basis_elem = [&](std::size_t i) {
        std::vector<Rat> c(m, Rat(0));
        c[i] = 1;
        return FieldElement(k, c);
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
            for (std::size_t l = j; l < m; ++l) {
                FieldElement lhs = field_mul(field_mul(basis_elem(i), basis_elem(j)), basis_elem(l));
                FieldElement rhs = field_mul(basis_elem(i), field_mul(basis_elem(j), basis_elem(l)));
                if (!(lhs == rhs)) throw SchemaError("multiplication table is not associative");
            }

    // embedding consistency: sigma(wi)sigma(wj) ~= sum_l t(i,j,l) sigma(wl)
    double scale = 1.0;
    for (const auto& z : k.emb) scale = std::max(scale, std::abs(z));
    double tol = 1e-9 * scale * scale * static_cast<double>(m);
    for (std::size_t p = 0; p < k.places(); ++p)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                std::complex<double> lhs = k.sigma(p, i) * k.sigma(p, j);
                std::complex<double> rhs(0, 0);
                for (std::size_t l = 0; l < m; ++l)
                    if (k.t(i, j, l) != 0) rhs += k.t(i, j, l).get_d() * k.sigma(p, l);
                if (std::abs(lhs - rhs) > tol)
                    throw SchemaError("embedding values violate the multiplication table");
            }
    return k;
}

std::vector<std::complex<double>> all_roots(const std::vector<std::complex<double>>& monic,
                                            double* err_bound) {
    std::size_t deg = monic.size() - 1;
    auto eval = [&](std::complex<double> z) {
        std::complex<double> v = monic[deg];
        for (std::size_t i = deg; i-- > 0;) v = v * z + monic[i];
        return v;
    };
    auto eval_d = [&](std::complex<double> z) {
        std::complex<double> v = monic[deg] * static_cast<double>(deg);
        for (std::size_t i = deg; i-- > 1;) v = v * z + monic[i] * static_cast<double>(i);
        return v;
    };
    double radius = 1.0;
    for (std::size_t i = 0; i < deg; ++i) radius = std::max(radius, 2.0 * std::abs(monic[i]));
    std::vector<std::complex<double>> z(deg);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> w(1.0, 0.0);
    for (std::size_t i = 0; i < deg; ++i) {
        w *= seed;
        z[i] = w * radius / std::abs(w);
        w += std::complex<double>(0.0, 1e-3);
    }
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0;
        for (std::size_t i = 0; i < deg; ++i) {
            std::complex<double> num = eval(z[i]);
            std::complex<double> den(1, 0);
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) den *= (z[i] - z[j]);
            std::complex<double> step = num / den;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-16 * radius) break;
    }
    // Newton polish and certified bound
    double bound = 0;
    for (std::size_t i = 0; i < deg; ++i) {
        for (int it = 0; it < 4; ++it) {
            std::complex<double> d = eval_d(z[i]);
            if (std::abs(d) == 0) break;
            z[i] -= eval(z[i]) / d;
        }
        std::complex<double> d = eval_d(z[i]);
        double e = std::abs(d) > 0 ? static_cast<double>(deg) * std::abs(eval(z[i])) / std::abs(d)
                                   : 1.0;
        bound = std::max(bound, e);
    }
    if (err_bound) *err_bound = bound;
    return z;
}

FieldSpec make_power_basis_field(const std::vector<Int>& coeffs, std::string label) {
    if (coeffs.size() < 2 || coeffs.back() != 1)
        throw SchemaError("min_poly must be monic with positive degree");
    std::size_t m = coeffs.size() - 1;

    // reduction table for theta^k, k = 0..2m-2
    std::vector<std::vector<Rat>> pw(2 * m - 1, std::vector<Rat>(m, Rat(0)));
    for (std::size_t kd = 0; kd < m; ++kd) pw[kd][kd] = 1;
    for (std::size_t kd = m; kd < 2 * m - 1; ++kd) {
        // theta^kd = theta * theta^(kd-1); reduce the overflow coefficient
        const std::vector<Rat>& prev = pw[kd - 1];
        std::vector<Rat> cur(m, Rat(0));
        for (std::size_t i = 0; i + 1 < m; ++i) cur[i + 1] = prev[i];
        Rat top = prev[m - 1];
        if (top != 0)
            for (std::size_t i = 0; i < m; ++i) cur[i] -= top * Rat(coeffs[i]);
        pw[kd] = cur;
    }
    std::vector<Rat> mult(m * m * m, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t l = 0; l < m; ++l) mult[(i * m + j) * m + l] = pw[i + j][l];

    std::vector<std::complex<double>> monic(m + 1);
    for (std::size_t i = 0; i <= m; ++i) monic[i] = {coeffs[i].get_d(), 0.0};
    double err = 0;
    auto roots = all_roots(monic, &err);
    double scale = 1.0;
    for (auto& r : roots) scale = std::max(scale, std::abs(r));
    if (err > 1e-10 * scale) throw SchemaError("root refinement failed to certify precision");

    double im_tol = 1e-8 * scale;
    std::vector<double> reals;
    std::vector<std::complex<double>> cplx;
    for (auto& r : roots) {
        if (std::abs(r.imag()) < im_tol)
            reals.push_back(r.real());
        else if (r.imag() > 0)
            cplx.push_back(r);
    }
    if (reals.size() + 2 * cplx.size() != m)
        throw SchemaError("root signature inconsistent (conjugate pairing failed)");
    std::sort(reals.begin(), reals.end(), std::greater<double>());
    std::sort(cplx.begin(), cplx.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  return a.real() > b.real();
              });

    std::size_t n1 = reals.size(), n2 = cplx.size();
    std::vector<std::complex<double>> emb((n1 + n2) * m);
    for (std::size_t p = 0; p < n1; ++p) {
        std::complex<double> t(1.0, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            emb[p * m + j] = t;
            t *= reals[p];
        }
    }
    for (std::size_t p = 0; p < n2; ++p) {
        std::complex<double> t(1.0, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            emb[(n1 + p) * m + j] = t;
            t *= cplx[p];
        }
    }
    FieldSpec k = make_field_spec(m, std::move(mult), n1, n2, std::move(emb), std::move(label));
    k.emb_err = std::max(err, 1e-15);
    return k;
}

}  // namespace nfc
