#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nfc {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat_of(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "-p", or "p/q" (q > 0 after canonicalization).
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Floor of a rational (exact).
inline Int rat_floor(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }

inline bool fits_int64(const Int& z) { return z.fits_slong_p(); }

inline std::int64_t to_int64(const Int& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer exceeds 64-bit range");
    return z.get_si();
}

inline std::vector<Rat> rat_vec(std::initializer_list<long> xs) {
    std::vector<Rat> v;
    v.reserve(xs.size());
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace nfc
