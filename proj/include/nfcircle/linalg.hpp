#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nfcircle/rational.hpp"

namespace nfc {

/// Dense integer matrix, row major.
struct ZMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    ZMat() = default;
    ZMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static ZMat identity(std::size_t n) {
        ZMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const ZMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

/// Dense rational matrix, row major.
struct QMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Rat& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

namespace detail {
inline void row_axpy(ZMat& m, std::size_t dst, std::size_t src, const Int& q) {
    // row[dst] -= q * row[src]
    for (std::size_t j = 0; j < m.cols; ++j) m.at(dst, j) -= q * m.at(src, j);
}
}  // namespace detail

/// Row-style Hermite normal form. Returns H whose rows are a canonical basis of
/// the row span of `in`; zero rows are dropped. Pivots are positive and entries
/// above each pivot are reduced into [0, pivot). When `U` is given it receives
/// unimodular row operations applied to the identity, i.e. U_full * in = H_full
/// before zero-row removal; rows of U aligned with dropped zero rows of H span
/// the left kernel of `in`.
inline ZMat hnf_rows(ZMat m, ZMat* U = nullptr) {
    if (U) *U = ZMat::identity(m.rows);
    auto axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        detail::row_axpy(m, dst, src, q);
        if (U) detail::row_axpy(*U, dst, src, q);
    };
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
        if (U)
            for (std::size_t c = 0; c < U->cols; ++c) std::swap(U->at(i, c), U->at(j, c));
    };
    auto negate_row = [&](std::size_t i) {
        for (std::size_t c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
        if (U)
            for (std::size_t c = 0; c < U->cols; ++c) U->at(i, c) = -U->at(i, c);
    };

    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t piv = r;
        while (piv < m.rows && m.at(piv, c) == 0) ++piv;
        if (piv == m.rows) continue;
        swap_rows(r, piv);
        // fold all lower rows into the pivot row by gcd steps
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            while (m.at(i, c) != 0) {
                Int q = floor_div(m.at(r, c), m.at(i, c));
                axpy(r, i, q);
                swap_rows(r, i);
            }
        }
        if (m.at(r, c) < 0) negate_row(r);
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(m.at(i, c), m.at(r, c));
            if (q != 0) axpy(i, r, q);
        }
        ++r;
    }
    // drop zero rows (they sit at the bottom by construction); U keeps all its
    // rows, so rows >= r of U span the left kernel
    ZMat h(r, m.cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) h.at(i, j) = m.at(i, j);
    return h;
}

/// Left kernel of A: canonical basis of { v : v * A = 0 }.
inline ZMat left_kernel(const ZMat& A) {
    ZMat U;
    ZMat work = A;
    ZMat h = hnf_rows(work, &U);
    std::size_t rank = h.rows;
    ZMat ker(A.rows - rank, A.rows);
    for (std::size_t i = rank; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.rows; ++j) ker.at(i - rank, j) = U.at(i, j);
    return hnf_rows(ker);
}

/// Column index of the pivot of row i in an HNF matrix.
inline std::size_t hnf_pivot_col(const ZMat& h, std::size_t i) {
    for (std::size_t j = 0; j < h.cols; ++j)
        if (h.at(i, j) != 0) return j;
    throw std::logic_error("zero row in HNF");
}

/// Exact membership of integer vector v in the row span of HNF h.
inline bool hnf_contains(const ZMat& h, std::vector<Int> v) {
    for (std::size_t i = 0; i < h.rows; ++i) {
        std::size_t p = hnf_pivot_col(h, i);
        if (v[p] % h.at(i, p) != 0) return false;
        Int q = v[p] / h.at(i, p);
        if (q != 0)
            for (std::size_t j = p; j < h.cols; ++j) v[j] -= q * h.at(i, j);
    }
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

/// Canonical representative of v modulo the row span of full-rank square HNF h:
/// coordinate i lands in [0, h[i][i]).
inline std::vector<Int> hnf_reduce(const ZMat& h, std::vector<Int> v) {
    assert(h.rows == h.cols && v.size() == h.cols);
    for (std::size_t i = 0; i < h.rows; ++i) {
        Int q = floor_div(v[i], h.at(i, i));
        if (q != 0)
            for (std::size_t j = i; j < h.cols; ++j) v[j] -= q * h.at(i, j);
    }
    return v;
}

/// Same reduction for rational vectors (fundamental-domain rep of v mod lattice).
inline std::vector<Rat> hnf_reduce_rat(const ZMat& h, std::vector<Rat> v) {
    assert(h.rows == h.cols && v.size() == h.cols);
    for (std::size_t i = 0; i < h.rows; ++i) {
        Rat q = v[i] / Rat(h.at(i, i));
        Int qf = rat_floor(q);
        if (qf != 0)
            for (std::size_t j = i; j < h.cols; ++j) v[j] -= Rat(qf * h.at(i, j));
    }
    return v;
}

inline Int hnf_det(const ZMat& h) {
    if (h.rows != h.cols) throw std::invalid_argument("determinant of non-square HNF");
    Int d = 1;
    for (std::size_t i = 0; i < h.rows; ++i) d *= h.at(i, i);
    return d;
}

/// Solve x * A = b over the rationals (row-vector convention).
/// Returns std::nullopt when inconsistent. A need not be square; any solution.
inline std::optional<std::vector<Rat>> solve_left(const QMat& A, const std::vector<Rat>& b) {
    // transpose to the usual A^T x^T = b^T and run Gauss-Jordan
    std::size_t n = A.rows, m = A.cols;
    if (b.size() != m) throw std::invalid_argument("solve_left: size mismatch");
    QMat w(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) w.at(i, j) = A.at(j, i);
        w.at(i, n) = b[i];
    }
    std::vector<std::size_t> pivot_of_col(n, SIZE_MAX);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t piv = r;
        while (piv < m && w.at(piv, c) == 0) ++piv;
        if (piv == m) continue;
        for (std::size_t j = 0; j <= n; ++j) std::swap(w.at(r, j), w.at(piv, j));
        Rat inv = 1 / w.at(r, c);
        for (std::size_t j = c; j <= n; ++j) w.at(r, j) *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || w.at(i, c) == 0) continue;
            Rat f = w.at(i, c);
            for (std::size_t j = c; j <= n; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        pivot_of_col[c] = r;
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        if (w.at(i, n) != 0) return std::nullopt;
    std::vector<Rat> x(n, Rat(0));
    for (std::size_t c = 0; c < n; ++c)
        if (pivot_of_col[c] != SIZE_MAX) x[c] = w.at(pivot_of_col[c], n);
    return x;
}

/// Invert a small real matrix by Gauss-Jordan with partial pivoting.
inline std::vector<double> invert_real(std::vector<double> a, std::size_t n) {
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (std::abs(a[i * n + c]) > std::abs(a[piv * n + c])) piv = i;
        if (a[piv * n + c] == 0.0) throw std::runtime_error("singular embedding matrix");
        if (piv != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a[piv * n + j], a[c * n + j]);
                std::swap(inv[piv * n + j], inv[c * n + j]);
            }
        double d = a[c * n + c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c * n + j] /= d;
            inv[c * n + j] /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c) continue;
            double f = a[i * n + c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a[i * n + j] -= f * a[c * n + j];
                inv[i * n + j] -= f * inv[c * n + j];
            }
        }
    }
    return inv;
}

}  // namespace nfc
