#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nfcircle/field.hpp"
#include "nfcircle/util.hpp"

namespace nfc {

inline bool coeff_is_zero(const Rat& x) { return x == 0; }
inline bool coeff_is_zero(const FieldElement& x) { return fe_is_zero(x); }
inline Rat coeff_mul(const Rat& a, const Rat& b) { return a * b; }
inline FieldElement coeff_mul(const FieldElement& a, const FieldElement& b) {
    return field_mul(a, b);
}
inline Rat coeff_add(const Rat& a, const Rat& b) { return a + b; }
inline FieldElement coeff_add(const FieldElement& a, const FieldElement& b) {
    return field_add(a, b);
}
inline Rat coeff_scale_uint(const Rat& a, unsigned s) { return a * Rat(static_cast<long>(s)); }
inline FieldElement coeff_scale_uint(const FieldElement& a, unsigned s) {
    return field_scale(Rat(static_cast<long>(s)), a);
}
inline Rat coeff_neg(const Rat& a) { return -a; }
inline FieldElement coeff_neg(const FieldElement& a) { return field_neg(a); }

/// Sparse multivariate polynomial with deterministic (lexicographic) term
/// order. C is Rat or FieldElement.
template <typename C>
struct MPoly {
    std::size_t nvars = 0;
    std::map<std::vector<unsigned>, C> terms;

    explicit MPoly(std::size_t nv = 0) : nvars(nv) {}

    static MPoly constant(std::size_t nv, const C& c) {
        MPoly p(nv);
        p.add_term(std::vector<unsigned>(nv, 0), c);
        return p;
    }
    static MPoly variable(std::size_t nv, std::size_t i, const C& one) {
        MPoly p(nv);
        std::vector<unsigned> e(nv, 0);
        e[i] = 1;
        p.add_term(e, one);
        return p;
    }

    void add_term(const std::vector<unsigned>& exps, const C& c) {
        if (coeff_is_zero(c)) return;
        auto it = terms.find(exps);
        if (it == terms.end()) {
            terms.emplace(exps, c);
        } else {
            it->second = coeff_add(it->second, c);
            if (coeff_is_zero(it->second)) terms.erase(it);
        }
    }

    MPoly operator+(const MPoly& o) const {
        MPoly r = *this;
        for (const auto& [e, c] : o.terms) r.add_term(e, c);
        return r;
    }
    MPoly operator-(const MPoly& o) const {
        MPoly r = *this;
        for (const auto& [e, c] : o.terms) r.add_term(e, coeff_neg(c));
        return r;
    }
    MPoly operator*(const MPoly& o) const {
        MPoly r(nvars);
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms) {
                std::vector<unsigned> e(nvars);
                for (std::size_t i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, coeff_mul(c1, c2));
            }
        return r;
    }
    MPoly scaled(const C& s) const {
        MPoly r(nvars);
        for (const auto& [e, c] : terms) r.add_term(e, coeff_mul(c, s));
        return r;
    }
    MPoly derivative(std::size_t var) const {
        MPoly r(nvars);
        for (const auto& [e, c] : terms) {
            if (e[var] == 0) continue;
            std::vector<unsigned> d = e;
            d[var] -= 1;
            r.add_term(d, coeff_scale_uint(c, e[var]));
        }
        return r;
    }
    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms) {
            unsigned s = 0;
            for (unsigned x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }
    bool is_homogeneous(unsigned deg) const {
        for (const auto& [e, c] : terms) {
            unsigned s = 0;
            for (unsigned x : e) s += x;
            if (s != deg) return false;
        }
        return true;
    }
};

inline Rat eval_rat(const MPoly<Rat>& p, const std::vector<Rat>& x) {
    Rat acc(0);
    for (const auto& [e, c] : p.terms) {
        Rat t = c;
        for (std::size_t i = 0; i < p.nvars; ++i)
            for (unsigned r = 0; r < e[i]; ++r) t *= x[i];
        acc += t;
    }
    return acc;
}

inline Rat eval_rat_at_int(const MPoly<Rat>& p, const std::vector<Int>& x) {
    Rat acc(0);
    for (const auto& [e, c] : p.terms) {
        Rat t = c;
        for (std::size_t i = 0; i < p.nvars; ++i)
            for (unsigned r = 0; r < e[i]; ++r) t *= Rat(x[i]);
        acc += t;
    }
    return acc;
}

inline double eval_double(const MPoly<Rat>& p, const std::vector<double>& x) {
    double acc = 0;
    for (const auto& [e, c] : p.terms) {
        double t = c.get_d();
        for (std::size_t i = 0; i < p.nvars; ++i)
            for (unsigned r = 0; r < e[i]; ++r) t *= x[i];
        acc += t;
    }
    return acc;
}

inline FieldElement eval_fe(const MPoly<FieldElement>& p, const FieldSpec& k,
                            const std::vector<FieldElement>& x) {
    FieldElement acc = fe_zero(k);
    for (const auto& [e, c] : p.terms) {
        FieldElement t = c;
        for (std::size_t i = 0; i < p.nvars; ++i)
            for (unsigned r = 0; r < e[i]; ++r) t = field_mul(t, x[i]);
        acc = field_add(acc, t);
    }
    return acc;
}

/// Expands a polynomial over k in nv variables into its m omega-coordinate
/// polynomials over Q in nv*m real variables (variable j becomes the block
/// X_{j,0..m-1} with x_j = sum_i X_{j,i} omega_i).
inline std::vector<MPoly<Rat>> flatten_over_Q(const MPoly<FieldElement>& p, const FieldSpec& k) {
    const std::size_t m = k.m;
    const std::size_t flat_vars = p.nvars * m;
    MPoly<FieldElement> acc_total(flat_vars);
    for (const auto& [e, c] : p.terms) {
        MPoly<FieldElement> acc = MPoly<FieldElement>::constant(flat_vars, c);
        for (std::size_t j = 0; j < p.nvars; ++j) {
            if (e[j] == 0) continue;
            MPoly<FieldElement> lin(flat_vars);
            for (std::size_t i = 0; i < m; ++i) {
                std::vector<Rat> wi(m, Rat(0));
                wi[i] = 1;
                std::vector<unsigned> ex(flat_vars, 0);
                ex[j * m + i] = 1;
                lin.add_term(ex, FieldElement(k, wi));
            }
            for (unsigned r = 0; r < e[j]; ++r) acc = acc * lin;
        }
        acc_total = acc_total + acc;
    }
    std::vector<MPoly<Rat>> out(m, MPoly<Rat>(flat_vars));
    for (const auto& [e, c] : acc_total.terms)
        for (std::size_t l = 0; l < m; ++l)
            if (c.c[l] != 0) out[l].add_term(e, c.c[l]);
    return out;
}

/// Compiled integer-coefficient evaluator over int64 with an exact overflow
/// certificate: eval() is safe whenever |x_i| <= bound_checked against.
struct Int64Poly {
    std::size_t nvars = 0;
    struct Term {
        int64_t coeff;
        std::vector<uint8_t> exps;
    };
    std::vector<Term> terms;

    static Int64Poly compile(const MPoly<Rat>& p) {
        Int64Poly q;
        q.nvars = p.nvars;
        for (const auto& [e, c] : p.terms) {
            if (!is_integer(c)) throw InternalError("non-integral coefficient in int64 compile");
            Int num = c.get_num();
            if (!fits_int64(num)) throw BudgetExceeded("coefficient exceeds int64");
            Term t;
            t.coeff = to_int64(num);
            t.exps.assign(e.begin(), e.end());
            q.terms.push_back(std::move(t));
        }
        return q;
    }

    int64_t eval(const int64_t* x) const {
        int64_t acc = 0;
        for (const auto& t : terms) {
            int64_t v = t.coeff;
            for (std::size_t i = 0; i < nvars; ++i)
                for (uint8_t r = 0; r < t.exps[i]; ++r) v *= x[i];
            acc += v;
        }
        return acc;
    }

    /// Exact bound on |value| for |x_i| <= B_i; int64 evaluation is exact when
    /// this stays below 2^62.
    Int abs_bound(const std::vector<Int>& B) const {
        Int total = 0;
        for (const auto& t : terms) {
            Int v = abs(Int(t.coeff));
            for (std::size_t i = 0; i < nvars; ++i)
                for (uint8_t r = 0; r < t.exps[i]; ++r) v *= B[i];
            total += v;
        }
        return total;
    }

    bool safe_for(const std::vector<Int>& B) const {
        Int lim = Int(1) << 62;
        return abs_bound(B) < lim;
    }
};

/// Compiled double evaluator for Monte Carlo sampling.
struct DblPoly {
    std::size_t nvars = 0;
    struct Term {
        double coeff;
        std::vector<uint8_t> exps;
    };
    std::vector<Term> terms;

    static DblPoly compile(const MPoly<Rat>& p) {
        DblPoly q;
        q.nvars = p.nvars;
        for (const auto& [e, c] : p.terms) {
            Term t;
            t.coeff = c.get_d();
            t.exps.assign(e.begin(), e.end());
            q.terms.push_back(std::move(t));
        }
        return q;
    }

    double eval(const double* x) const {
        double acc = 0;
        for (const auto& t : terms) {
            double v = t.coeff;
            for (std::size_t i = 0; i < nvars; ++i)
                for (uint8_t r = 0; r < t.exps[i]; ++r) v *= x[i];
            acc += v;
        }
        return acc;
    }
};

}  // namespace nfc
