#pragma once

#include <complex>

#include "nfcircle/circle.hpp"

namespace nfc {

/// Complete sum S_gamma = Nm(a_gamma)^{-(2n+1)} sum over k in
/// (n mod n*a_gamma)^{2n+1} of e(Tr(gamma F(k))), with its block factors
/// T1(gamma), T2(gamma), T3(-gamma).
struct CompleteSumValue {
    std::vector<Rat> gamma;  // canonical representative
    Int denom_norm = 1;      // Nm(a_gamma)
    std::complex<double> T1, T2, T3;
    std::complex<double> S;
};

/// Exact-phase evaluation via the block factorization
/// S = Nm^{-(2n+1)} T1 T2 T3; when the full (2n+1)-fold sum fits the budget
/// it is also evaluated directly and the two must agree to 1e-12 relative.
CompleteSumValue complete_sum(const std::vector<Rat>& gamma, const EquationInstance& inst,
                              uint64_t budget = 2'000'000ULL);

struct LocalDensityResult {
    Int p;
    std::vector<double> mu;        // mu[j], j = 0..depth, mu[0] = 1
    std::vector<Rat> mu_counting;  // exact counting-form mu_j, j = 1.. (m=1)
    bool counting_asserted = false;
    unsigned j_stop = 0;    // first j with |mu[j+1] - mu[j]| < tol, 0 if none
    bool stabilized = false;
    double tail_gap = 0;  // |mu[depth] - mu[depth-1]|
};

/// Truncations mu_j = 1 + sum_{i<=j} sum_{a_gamma = p^i} S_gamma for
/// j <= j_max, for a rational prime p (m = 1). Level sums are computed from
/// the block value distributions mod p^i by character sums; the independent
/// counting form mu_j = p^{-2nj} #{k in (n mod n p^j)^{2n+1} :
/// q0 F(k) = 0 mod p^j} is evaluated alongside and, when the modulus is
/// the whole ring, asserted to agree to 1e-9.
LocalDensityResult local_density(const IdealSpec& p, unsigned j_max,
                                 const EquationInstance& inst,
                                 uint64_t budget = 400'000'000ULL);

/// Raises the depth until |mu_{j+1} - mu_j| < tol or j_cap is reached.
LocalDensityResult local_density_adaptive(const IdealSpec& p, const EquationInstance& inst,
                                          double tol = 1e-3, unsigned j_cap = 0,
                                          uint64_t budget = 400'000'000ULL);

struct SingularSeriesEstimate {
    // Euler product side
    struct PrimeFactor {
        Int p;
        double mu = 1;
        unsigned j_stop = 0;
        double tail_gap = 0;
        bool stabilized = false;
    };
    std::vector<PrimeFactor> per_prime;
    Int prime_cutoff = 0;
    double euler_product = 1;

    // direct gamma-sum side
    Int gamma_cutoff = 0;
    std::complex<double> direct_sum;  // includes the zero-class term 1
    std::vector<std::pair<Int, std::complex<double>>> dyadic;  // (R, block sum over R/2 < Nm <= R)
};

/// Both singular-series computations: the Euler product of adaptive local
/// densities over primes <= prime_cutoff, and the direct sum of S_gamma over
/// classes with Nm(a_gamma) <= gamma_cutoff together with its dyadic blocks.
SingularSeriesEstimate singular_series(const EquationInstance& inst, const Int& prime_cutoff,
                                       unsigned j_max, const Int& gamma_cutoff = Int(64),
                                       double tol = 1e-3,
                                       uint64_t budget = 400'000'000ULL);

struct SingularIntegralEstimate {
    double value = 0;  // extrapolated to eps -> 0
    double stderr_ = 0;
    std::string method;  // "slab" or "oscillatory"
    std::vector<double> eps_schedule;
    std::vector<double> value_at_eps;
    std::vector<double> stderr_at_eps;
    uint64_t samples = 0;
    uint64_t seed = 0;
};

/// Archimedean density over the unscaled box: the slab method estimates
/// vol{x in B' : |F0*(x)| < eps in every omega-coordinate} / (2 eps)^m on
/// the schedule eps_t = 0.1 * 2^{-t}, t = 0..4, by seeded uniform sampling,
/// then extrapolates linearly in eps. F0* is the homogeneous leading form:
/// the dilation P B' concentrates there as P grows. The oscillatory method
/// (m = 1) integrates sin(2 pi B F)/(pi F) as a cross-check at finite
/// beta-cutoff B.
SingularIntegralEstimate singular_integral(const EquationInstance& inst,
                                           const std::string& method = "slab",
                                           uint64_t samples = 2'000'000ULL,
                                           uint64_t seed = 1, unsigned jobs = 1,
                                           double beta_cutoff = 8.0);

struct PredictionValue {
    double value = 0;
    double stderr_ = 0;
    double series = 0;
    double integral = 0;
    double P = 0;
};

/// The Hardy-Littlewood main term S * J * P^{(n+1)m} with the integral's
/// uncertainty propagated.
PredictionValue prediction(const EquationInstance& inst, const SingularSeriesEstimate& series,
                           const SingularIntegralEstimate& integral, double P);

}  // namespace nfc
