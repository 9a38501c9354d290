#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace nfc {

/// Exit-code contract: 2 schema, 3 budget, 4 proven infeasibility, 5 internal.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic RNG with named substreams: the sequence drawn from
/// Rng(seed).stream(i) never depends on what other streams were used,
/// so chunked parallel work reproduces bit for bit at any --jobs value.
class Rng {
   public:
    explicit Rng(uint64_t seed) : seed_(seed) {}

    class Stream {
       public:
        Stream(uint64_t seed, uint64_t idx) {
            uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (idx + 1));
            // decorrelate nearby stream indices
            for (int i = 0; i < 4; ++i) splitmix64(s);
            state_ = s;
        }
        uint64_t next_u64() { return splitmix64(state_); }
        /// uniform in [0,1) with 53 random bits
        double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }
        /// uniform integer in [lo, hi] inclusive (unbiased rejection)
        int64_t next_int(int64_t lo, int64_t hi) {
            uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
            if (span == 0) return static_cast<int64_t>(next_u64());
            uint64_t limit = UINT64_MAX - UINT64_MAX % span;
            uint64_t v;
            do {
                v = next_u64();
            } while (v >= limit);
            return lo + static_cast<int64_t>(v % span);
        }

       private:
        uint64_t state_;
    };

    Stream stream(uint64_t idx) const { return Stream(seed_, idx); }
    uint64_t seed() const { return seed_; }

   private:
    uint64_t seed_;
};

/// Kahan-compensated complex accumulator; deterministic when fed in a fixed order.
class ComplexAccumulator {
   public:
    void add(std::complex<double> v) {
        add_part(re_, re_c_, v.real());
        add_part(im_, im_c_, v.imag());
    }
    std::complex<double> value() const { return {re_, im_}; }

   private:
    static void add_part(double& s, double& c, double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double re_ = 0, im_ = 0, re_c_ = 0, im_c_ = 0;
};

inline std::complex<double> unit_phase(double t) {
    double frac = t - std::floor(t);
    double ang = 6.283185307179586476925286766559 * frac;
    return {std::cos(ang), std::sin(ang)};
}

/// Run fn(chunk) for chunk = 0..nchunks-1 on up to `jobs` threads and merge the
/// results in chunk order, so the output is independent of thread scheduling.
template <typename Result>
std::vector<Result> parallel_chunks(std::size_t nchunks, unsigned jobs,
                                    const std::function<Result(std::size_t)>& fn) {
    std::vector<Result> out(nchunks);
    if (jobs <= 1 || nchunks <= 1) {
        for (std::size_t i = 0; i < nchunks; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    std::size_t nthreads = std::min<std::size_t>(jobs, nchunks);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= nchunks) return;
                try {
                    out[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

/// 17 significant digits: round-trips IEEE doubles and is stable across runs.
inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace nfc
