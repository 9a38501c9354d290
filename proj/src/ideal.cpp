#include "nfcircle/ideal.hpp"

#include "nfcircle/util.hpp"

namespace nfc {

static IdealSpec from_hnf(const FieldSpec& k, ZMat h) {
    if (h.rows != k.m || h.cols != k.m)
        throw SchemaError("ideal basis does not have full rank");
    IdealSpec A;
    A.k = &k;
    A.norm = hnf_det(h);
    A.basis = std::move(h);
    return A;
}

IdealSpec whole_ring(const FieldSpec& k) { return from_hnf(k, ZMat::identity(k.m)); }

static std::vector<Int> integral_coords(const FieldElement& u, const char* what) {
    std::vector<Int> v(u.c.size());
    for (std::size_t i = 0; i < u.c.size(); ++i) {
        if (!is_integer(u.c[i])) throw SchemaError(std::string(what) + " must be integral");
        v[i] = u.c[i].get_num();
    }
    return v;
}

IdealSpec ideal_from_generators(const FieldSpec& k, const std::vector<FieldElement>& gens) {
    // rows: omega_i * g for every generator g and basis index i
    std::vector<std::vector<Int>> rows;
    for (const auto& g : gens) {
        if (g.k != &k) throw SchemaError("generator over wrong field");
        for (std::size_t i = 0; i < k.m; ++i) {
            std::vector<Rat> wi(k.m, Rat(0));
            wi[i] = 1;
            FieldElement prod = field_mul(FieldElement(k, wi), g);
            rows.push_back(integral_coords(prod, "ideal generator product"));
        }
    }
    ZMat M(rows.size(), k.m);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < k.m; ++j) M.at(i, j) = rows[i][j];
    return from_hnf(k, hnf_rows(M));
}

IdealSpec principal_ideal(const FieldElement& g) {
    return ideal_from_generators(*g.k, {g});
}

IdealSpec ideal_from_basis_rows(const FieldSpec& k, const ZMat& rows) {
    if (rows.rows != k.m || rows.cols != k.m) throw SchemaError("ideal basis must be m x m");
    ZMat h = hnf_rows(rows);
    IdealSpec A = from_hnf(k, std::move(h));
    // closure under multiplication by each basis element
    for (std::size_t i = 0; i < k.m; ++i) {
        std::vector<Rat> wi(k.m, Rat(0));
        wi[i] = 1;
        FieldElement w(k, wi);
        for (std::size_t r = 0; r < k.m; ++r) {
            std::vector<Rat> rc(k.m);
            for (std::size_t j = 0; j < k.m; ++j) rc[j] = Rat(A.basis.at(r, j));
            FieldElement prod = field_mul(w, FieldElement(k, rc));
            if (!ideal_contains(A, prod)) throw SchemaError("basis rows do not span an ideal");
        }
    }
    return A;
}

IdealSpec ideal_mul(const IdealSpec& A, const IdealSpec& B) {
    if (A.k != B.k) throw SchemaError("ideal product over mismatched fields");
    const FieldSpec& k = *A.k;
    std::vector<std::vector<Int>> rows;
    for (std::size_t r = 0; r < k.m; ++r)
        for (std::size_t s = 0; s < k.m; ++s) {
            std::vector<Rat> a(k.m), b(k.m);
            for (std::size_t j = 0; j < k.m; ++j) {
                a[j] = Rat(A.basis.at(r, j));
                b[j] = Rat(B.basis.at(s, j));
            }
            FieldElement prod = field_mul(FieldElement(k, a), FieldElement(k, b));
            rows.push_back(integral_coords(prod, "ideal product"));
        }
    ZMat M(rows.size(), k.m);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < k.m; ++j) M.at(i, j) = rows[i][j];
    return from_hnf(k, hnf_rows(M));
}

IdealSpec ideal_pow(const IdealSpec& A, unsigned e) {
    IdealSpec R = whole_ring(*A.k);
    for (unsigned i = 0; i < e; ++i) R = ideal_mul(R, A);
    return R;
}

bool ideal_contains(const IdealSpec& A, const FieldElement& u) {
    if (u.k != A.k) throw SchemaError("membership over mismatched field");
    std::vector<Int> v(u.c.size());
    for (std::size_t i = 0; i < u.c.size(); ++i) {
        if (!is_integer(u.c[i])) return false;
        v[i] = u.c[i].get_num();
    }
    return hnf_contains(A.basis, v);
}

std::vector<Int> ideal_reduce(const IdealSpec& A, const std::vector<Int>& coords) {
    return hnf_reduce(A.basis, coords);
}

std::vector<std::vector<Int>> ideal_residues(const IdealSpec& A) {
    const std::size_t m = A.basis.rows;
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur(m, 0);
    for (;;) {
        out.push_back(cur);
        std::size_t i = m;
        bool done = true;
        while (i > 0) {
            --i;
            cur[i] += 1;
            if (cur[i] < A.basis.at(i, i)) {
                done = false;
                break;
            }
            cur[i] = 0;
        }
        if (done) return out;
    }
}

std::vector<std::vector<Int>> sublattice_residues(const IdealSpec& B, const IdealSpec& BA) {
    const FieldSpec& k = *B.k;
    const std::size_t m = k.m;
    // express BA rows in B coordinates: M * B = BA
    QMat Bq(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) Bq.at(i, j) = Rat(B.basis.at(i, j));
    ZMat M(m, m);
    for (std::size_t r = 0; r < m; ++r) {
        std::vector<Rat> rhs(m);
        for (std::size_t j = 0; j < m; ++j) rhs[j] = Rat(BA.basis.at(r, j));
        auto x = solve_left(Bq, rhs);
        if (!x) throw InternalError("sublattice is not contained in lattice");
        for (std::size_t j = 0; j < m; ++j) {
            if (!is_integer((*x)[j]))
                throw InternalError("sublattice is not contained in lattice");
            M.at(r, j) = (*x)[j].get_num();
        }
    }
    ZMat H = hnf_rows(M);
    if (H.rows != m) throw InternalError("sublattice rank deficiency");
    // reps t with t_i in [0, H[i][i]); map back to omega coordinates t * B
    std::vector<std::vector<Int>> out;
    std::vector<Int> t(m, 0);
    for (;;) {
        std::vector<Int> coords(m, 0);
        for (std::size_t i = 0; i < m; ++i)
            if (t[i] != 0)
                for (std::size_t j = 0; j < m; ++j) coords[j] += t[i] * B.basis.at(i, j);
        out.push_back(std::move(coords));
        std::size_t i = m;
        bool done = true;
        while (i > 0) {
            --i;
            t[i] += 1;
            if (t[i] < H.at(i, i)) {
                done = false;
                break;
            }
            t[i] = 0;
        }
        if (done) return out;
    }
}

unsigned ideal_valuation(const FieldElement& u, const IdealSpec& A, unsigned e_max) {
    if (fe_is_zero(u)) return e_max;
    IdealSpec pw = whole_ring(*A.k);
    unsigned e = 0;
    while (e < e_max) {
        pw = ideal_mul(pw, A);
        if (!ideal_contains(pw, u)) return e;
        ++e;
    }
    return e;
}

IdealSpec denominator_ideal(const FieldElement& num, const FieldElement& den,
                            const IdealSpec& n) {
    if (num.k != n.k || den.k != n.k) throw SchemaError("mismatched field specification");
    if (fe_is_zero(den)) throw SchemaError("zero denominator");
    const FieldSpec& k = *n.k;
    const std::size_t m = k.m;
    // scale to integral numerator/denominator without changing the quotient
    Int d = 1;
    for (const auto& x : num.c) d = lcm(d, Int(x.get_den()));
    for (const auto& x : den.c) d = lcm(d, Int(x.get_den()));
    FieldElement lam = field_scale(Rat(d), num);
    FieldElement mu = field_scale(Rat(d), den);

    // lattice of mu * n
    std::vector<std::vector<Int>> mun_rows;
    for (std::size_t r = 0; r < m; ++r) {
        std::vector<Rat> rc(m);
        for (std::size_t j = 0; j < m; ++j) rc[j] = Rat(n.basis.at(r, j));
        FieldElement prod = field_mul(FieldElement(k, rc), mu);
        mun_rows.push_back(integral_coords(prod, "mu*n row"));
    }
    // multiplication-by-lambda matrix on integer rows, cleared of denominators
    QMat R = mult_matrix_rows(lam);
    Int D = 1;
    for (std::size_t i = 0; i < m * m; ++i) D = lcm(D, Int(R.a[i].get_den()));
    // stacked system: (kappa | w) * [[D*R], [-D*mun]] = 0
    ZMat S(2 * m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Rat scaled = R.at(i, j) * Rat(D);
            S.at(i, j) = scaled.get_num();
            S.at(m + i, j) = -D * mun_rows[i][j];
        }
    ZMat ker = left_kernel(S);
    if (ker.rows != m) throw InternalError("denominator ideal rank mismatch");
    ZMat proj(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) proj.at(i, j) = ker.at(i, j);
    return from_hnf(k, hnf_rows(proj));
}

IdealSpec denominator_ideal_coords(const FieldSpec& k, const std::vector<Rat>& gamma,
                                   const IdealSpec& n) {
    FieldElement num(k, gamma);
    return denominator_ideal(num, fe_one(k), n);
}

bool is_duality_compatible(const IdealSpec& n) {
    const FieldSpec& k = *n.k;
    for (std::size_t r = 0; r < k.m; ++r) {
        std::vector<Rat> rc(k.m);
        for (std::size_t j = 0; j < k.m; ++j) rc[j] = Rat(n.basis.at(r, j));
        FieldElement nu(k, rc);
        for (std::size_t j = 0; j < k.m; ++j) {
            std::vector<Rat> wj(k.m, Rat(0));
            wj[j] = 1;
            if (!is_integer(trace_exact(field_mul(nu, FieldElement(k, wj))))) return false;
        }
    }
    return true;
}

std::vector<Rat> gamma_canonical(const IdealSpec& n, std::vector<Rat> gamma) {
    return hnf_reduce_rat(n.basis, std::move(gamma));
}

}  // namespace nfc
