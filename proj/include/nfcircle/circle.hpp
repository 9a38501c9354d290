#pragma once

#include <complex>
#include <optional>

#include "nfcircle/lattice.hpp"

namespace nfc {

/// Point alpha of the unit cube I in omega-coordinates, optionally carrying
/// a rational approximant gamma = lambda/mu with lambda, mu in n and the
/// norm of its denominator ideal a_gamma.
struct ArcPoint {
    std::vector<double> alpha;  // m coordinates in [0,1]
    bool has_gamma = false;
    std::vector<Rat> gamma;  // m rational omega-coordinates
    Int denom_norm = 0;      // Nm(a_gamma)
    std::string label;       // "major" | "minor" | "" when unclassified
    double theta = 0;
};

struct ExpSumValue {
    std::complex<double> value;
    uint64_t summands = 0;
    int j = 0;
    double P = 0;
};

/// S_j(alpha): sum of e(Tr(alpha * g(point))) with g = aN, bN, (.)^n for
/// j = 1, 2, 3, over the factor-j enumeration at dilation P. Phases use the
/// exact trace form; accumulation is compensated. The worst-case
/// accumulation error is O(eps * count) with Kahan summation, below 1e-9
/// per million terms.
ExpSumValue eval_exp_sum(int j, const ArcPoint& alpha, const EquationInstance& inst,
                         double P, const CountOptions& opts = {});

/// Major/minor classification of alpha at parameters (theta, P) relative to
/// the ideal n: major iff some gamma = lambda/mu (lambda, mu in n) has
/// Nm(a_gamma) <= C * P^{m(n-1)theta} and |alpha - gamma| <= P^{-n+m(n-1)theta}
/// in the max metric on omega-coordinates. m=1 searches denominators
/// exhaustively up to the norm bound (the bound caps Nm >= q) plus
/// continued-fraction convergents; m>1 enumerates mu in n with embedding
/// height <= P^{(n-1)theta} and takes lambda = nearest lattice point to
/// mu*alpha. Every returned gamma re-verifies both inequalities exactly.
ArcPoint classify_arc(const ArcPoint& alpha, double theta, double P, const IdealSpec& n,
                      unsigned deg_n, double C = 1.0);

/// Exact value of the integral of S1*S2*S3(-alpha) over I by frequency
/// counting: convolves the value multisets of the three blocks. Throws
/// InternalError if the result disagrees with count_solutions.
Int orthogonality_count(const EquationInstance& inst, double P, const CountOptions& opts = {});

struct MinorArcRow {
    double P = 0;
    double theta = 0;
    double max_abs_S3 = 0;
    std::size_t minor_samples = 0;
    std::size_t major_samples = 0;
};

struct ArcSampleRow {
    double P = 0;
    double theta = 0;
    std::vector<double> alpha;
    std::string label;
    std::vector<Rat> gamma;
    Int denom_norm = 0;
    double abs_S3 = 0;
};

struct MinorArcScan {
    std::vector<MinorArcRow> rows;
    double fitted_exponent = 0;  // least-squares slope of log max|S3| vs log P
};

/// Per-P maxima of |S3| over uniformly sampled minor-arc points, with a
/// log-log least-squares growth exponent. Sampling is seeded and
/// reproducible; samples classified major are excluded from the max but
/// counted. When `detail` is given every sample row is appended to it.
MinorArcScan minor_arc_scan(const EquationInstance& inst, const std::vector<double>& P_list,
                            double theta, std::size_t sample_count, uint64_t seed,
                            const CountOptions& opts = {},
                            std::vector<ArcSampleRow>* detail = nullptr);

struct MeanValueRow {
    double P = 0;
    Int value = 0;  // integral of |S_j|^2 = number of value coincidences
};

struct MeanValueCheck {
    int j = 0;
    std::vector<MeanValueRow> rows;
    double fitted_exponent = 0;
};

/// Exact integral of |S_j|^2 over I per P (Parseval: coincidence count of
/// block values), with the fitted growth exponent.
MeanValueCheck mean_value_check(int j, const EquationInstance& inst,
                                const std::vector<double>& P_list,
                                const CountOptions& opts = {});

/// Total Lebesgue measure of the major arcs at (theta, P): summed box
/// measures (2 * radius)^m over admissible gamma classes, radius clipped to
/// 1/2 per coordinate. Exact class counting is implemented for m = 1 with a
/// principal modulus; other shapes throw.
double major_arc_measure(const IdealSpec& n, unsigned deg_n, double theta, double P,
                         double C = 1.0);

/// slope of the least-squares line through (log x_i, log y_i)
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nfc
