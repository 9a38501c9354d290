#include "nfcircle/circle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nfcircle/util.hpp"

namespace nfc {

namespace {

// weights w[l] = sum_i alpha_i Tr(omega_i omega_l), so the phase of an
// integral value v is e(sum_l w_l v_l)
std::vector<double> trace_weights(const FieldSpec& k, const std::vector<double>& alpha) {
    std::vector<double> w(k.m, 0.0);
    for (std::size_t l = 0; l < k.m; ++l) {
        double acc = 0;
        for (std::size_t i = 0; i < k.m; ++i)
            acc += alpha[i] * k.trace_form[i * k.m + l].get_d();
        w[l] = acc;
    }
    return w;
}

}  // namespace

ExpSumValue eval_exp_sum(int j, const ArcPoint& alpha, const EquationInstance& inst,
                         double P, const CountOptions& opts) {
    if (j < 1 || j > 3) throw SchemaError("exponential sum index must be 1, 2 or 3");
    if (!(P >= 1)) throw SchemaError("P must be at least 1");
    const std::size_t m = inst.m();
    if (alpha.alpha.size() != m) throw SchemaError("alpha coordinate count mismatch");

    std::vector<SlotPoints> slots;
    for (std::size_t s = 0; s < inst.slots(); ++s) slots.push_back(slot_points(inst, P, s));
    BlockValues bv = block_values(inst, P, j - 1, slots, opts.budget_points);
    std::vector<double> w = trace_weights(*inst.k, alpha.alpha);

    const std::size_t nchunks = opts.jobs > 1 ? opts.jobs * 4 : 1;
    const uint64_t chunk = bv.count == 0 ? 1 : (bv.count + nchunks - 1) / nchunks;
    std::function<std::complex<double>(std::size_t)> worker = [&](std::size_t ci) {
        uint64_t beg = ci * chunk, end = std::min<uint64_t>(beg + chunk, bv.count);
        ComplexAccumulator acc;
        for (uint64_t t = beg; t < end; ++t) {
            double phase = 0;
            for (std::size_t l = 0; l < m; ++l)
                phase += w[l] * static_cast<double>(bv.values[t * m + l]);
            acc.add(unit_phase(phase));
        }
        return acc.value();
    };
    auto parts = parallel_chunks<std::complex<double>>(nchunks, opts.jobs, worker);
    ComplexAccumulator total;
    for (const auto& p : parts) total.add(p);

    ExpSumValue out;
    out.value = total.value();
    out.summands = bv.count;
    out.j = j;
    out.P = P;
    return out;
}

namespace {

struct GammaCandidate {
    std::vector<Rat> gamma;
    Int denom_norm;
};

// exact check of both major-arc inequalities
bool admits(const FieldSpec& k, const IdealSpec& n, const std::vector<double>& alpha,
            const std::vector<Rat>& gamma, double radius, double norm_bound,
            Int* norm_out) {
    double dist = 0;
    for (std::size_t i = 0; i < k.m; ++i)
        dist = std::max(dist, std::fabs(alpha[i] - gamma[i].get_d()));
    if (!(dist <= radius)) return false;
    IdealSpec a = denominator_ideal_coords(k, gamma, n);
    if (!(a.norm.get_d() <= norm_bound)) return false;
    if (norm_out) *norm_out = a.norm;
    return true;
}

void cf_convergents(double x, long long qcap,
                    std::vector<std::pair<long long, long long>>& out) {
    long long p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // p/q convergents of x
    double t = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(t);
        if (fl > 2e18 || fl < -2e18) break;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > qcap || q2 <= 0) break;
        out.emplace_back(p2, q2);
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = t - fl;
        if (rem < 1e-15) break;
        t = 1.0 / rem;
    }
}

}  // namespace

ArcPoint classify_arc(const ArcPoint& alpha, double theta, double P, const IdealSpec& n,
                      unsigned deg_n, double C) {
    if (!(theta > 0)) throw SchemaError("theta must be positive");
    if (!(P >= 2)) throw SchemaError("P must be at least 2");
    const FieldSpec& k = *n.k;
    const std::size_t m = k.m;
    if (alpha.alpha.size() != m) throw SchemaError("alpha coordinate count mismatch");

    const double mexp = static_cast<double>(m) * (deg_n - 1) * theta;
    const double norm_bound = C * std::pow(P, mexp);
    const double radius = std::pow(P, -static_cast<double>(deg_n) + mexp);

    ArcPoint out = alpha;
    out.theta = theta;

    auto accept = [&](std::vector<Rat> gamma, const Int& nm) {
        out.has_gamma = true;
        out.gamma = std::move(gamma);
        out.denom_norm = nm;
        out.label = "major";
    };

    if (m == 1) {
        // Nm(a_gamma) >= q for gamma = p/q in lowest terms, so denominators
        // up to the norm bound are exhaustive
        long long qmax = static_cast<long long>(std::floor(norm_bound));
        std::vector<std::pair<long long, long long>> cands;
        const long long scan_cap = 1000000;
        for (long long q = 1; q <= std::min(qmax, scan_cap); ++q) {
            long long p = llround(alpha.alpha[0] * static_cast<double>(q));
            cands.emplace_back(p, q);
        }
        if (qmax > scan_cap) cf_convergents(alpha.alpha[0], qmax, cands);
        for (auto [p, q] : cands) {
            std::vector<Rat> gamma = {Rat(Int(static_cast<long>(p)), Int(static_cast<long>(q)))};
            gamma[0].canonicalize();
            Int nm;
            if (admits(k, n, alpha.alpha, gamma, radius, norm_bound, &nm)) {
                accept(std::move(gamma), nm);
                return out;
            }
        }
        out.label = "minor";
        return out;
    }

    // m > 1: mu in n with every archimedean embedding at most P^{(deg_n-1)theta},
    // lambda = nearest n-lattice point to mu * alpha
    const double emb_bound = std::pow(P, (deg_n - 1) * theta);
    double coord_cap = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double row = 0;
        for (std::size_t l = 0; l < m; ++l) row += std::fabs(k.emb_rows_inv[i * m + l]);
        coord_cap = std::max(coord_cap, row);
    }
    double box = coord_cap * emb_bound * std::sqrt(2.0) + 1;
    auto mus = enumerate_congruence_class(n, std::vector<Int>(m, Int(0)),
                                          std::vector<double>(m, 0.0), 1.0, box);
    for (const auto& mu : mus) {
        bool zero = true;
        for (const auto& c : mu)
            if (c != 0) zero = false;
        if (zero) continue;
        FieldElement mu_fe = fe_from_coords(k, mu);
        AlgebraPoint mp = embed(mu_fe);
        double h = 0;
        for (double r : mp.real_comp) h = std::max(h, std::fabs(r));
        for (auto z : mp.cplx_comp) h = std::max(h, std::abs(z));
        if (h > emb_bound) continue;

        // mu * alpha in omega-coordinates
        QMat Mrows = mult_matrix_rows(mu_fe);
        std::vector<double> v(m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t l = 0; l < m; ++l)
                v[l] += alpha.alpha[i] * Mrows.at(i, l).get_d();
        // nearest n-point by triangular rounding from the last coordinate
        std::vector<Int> y(m, Int(0));
        std::vector<double> rem = v;
        for (std::size_t jj = m; jj > 0; --jj) {
            std::size_t col = jj - 1;
            double step = n.basis.at(col, col).get_d();
            long long c = llround(rem[col] / step);
            y[col] = Int(static_cast<long>(c));
            for (std::size_t l = 0; l < m; ++l)
                rem[l] -= static_cast<double>(c) * n.basis.at(col, l).get_d();
        }
        std::vector<Int> lam(m, Int(0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t l = 0; l < m; ++l) lam[l] += y[i] * n.basis.at(i, l);
        FieldElement lam_fe = fe_from_coords(k, lam);
        FieldElement gamma_fe = field_div(lam_fe, mu_fe);
        Int nm;
        if (admits(k, n, alpha.alpha, gamma_fe.c, radius, norm_bound, &nm)) {
            accept(gamma_fe.c, nm);
            return out;
        }
    }
    out.label = "minor";
    return out;
}

Int orthogonality_count(const EquationInstance& inst, double P, const CountOptions& opts) {
    const std::size_t m = inst.m();
    std::vector<SlotPoints> slots;
    for (std::size_t s = 0; s < inst.slots(); ++s) slots.push_back(slot_points(inst, P, s));

    auto freq = [&](int which) {
        BlockValues bv = block_values(inst, P, which, slots, opts.budget_points);
        std::map<std::vector<int64_t>, Int> f;
        std::vector<int64_t> key(m);
        for (uint64_t t = 0; t < bv.count; ++t) {
            for (std::size_t l = 0; l < m; ++l) key[l] = bv.values[t * m + l];
            f[key] += 1;
        }
        return f;
    };
    auto f1 = freq(0), f2 = freq(1), f3 = freq(2);

    uint64_t pairs = static_cast<uint64_t>(f1.size()) * f2.size();
    if (pairs > opts.budget_points)
        throw BudgetExceeded("frequency support exceeds budget");

    Int total(0);
    std::vector<int64_t> key(m);
    for (const auto& [v1, c1] : f1)
        for (const auto& [v2, c2] : f2) {
            for (std::size_t l = 0; l < m; ++l) key[l] = v1[l] + v2[l];
            auto it = f3.find(key);
            if (it != f3.end()) total += c1 * c2 * it->second;
        }

    CountRow direct = count_solutions(inst, P, opts);
    if (direct.count != total)
        throw InternalError("orthogonality count disagrees with direct count");
    return total;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw SchemaError("slope fit needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) continue;
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) throw SchemaError("slope fit needs at least two positive points");
    double d = n * sxx - sx * sx;
    if (d == 0) throw SchemaError("degenerate abscissae in slope fit");
    return (n * sxy - sx * sy) / d;
}

MinorArcScan minor_arc_scan(const EquationInstance& inst, const std::vector<double>& P_list,
                            double theta, std::size_t sample_count, uint64_t seed,
                            const CountOptions& opts, std::vector<ArcSampleRow>* detail) {
    const std::size_t m = inst.m();
    MinorArcScan scan;
    std::vector<double> Ps, maxima;
    for (std::size_t ip = 0; ip < P_list.size(); ++ip) {
        double P = P_list[ip];
        Rng::Stream rng(seed, ip);
        MinorArcRow row;
        row.P = P;
        row.theta = theta;
        for (std::size_t s = 0; s < sample_count; ++s) {
            ArcPoint a;
            a.alpha.resize(m);
            for (std::size_t i = 0; i < m; ++i) a.alpha[i] = rng.next_double();
            ArcPoint cl = classify_arc(a, theta, P, inst.modulus, inst.n);
            ExpSumValue s3 = eval_exp_sum(3, cl, inst, P, opts);
            double mag = std::abs(s3.value);
            if (cl.label == "major") {
                row.major_samples += 1;
            } else {
                row.minor_samples += 1;
                row.max_abs_S3 = std::max(row.max_abs_S3, mag);
            }
            if (detail) {
                ArcSampleRow d;
                d.P = P;
                d.theta = theta;
                d.alpha = cl.alpha;
                d.label = cl.label;
                d.gamma = cl.has_gamma ? cl.gamma : std::vector<Rat>();
                d.denom_norm = cl.denom_norm;
                d.abs_S3 = mag;
                detail->push_back(std::move(d));
            }
        }
        Ps.push_back(P);
        maxima.push_back(row.max_abs_S3);
        scan.rows.push_back(row);
    }
    scan.fitted_exponent = loglog_slope(Ps, maxima);
    return scan;
}

MeanValueCheck mean_value_check(int j, const EquationInstance& inst,
                                const std::vector<double>& P_list,
                                const CountOptions& opts) {
    if (j != 1 && j != 2) throw SchemaError("mean value check is for S1 or S2");
    const std::size_t m = inst.m();
    MeanValueCheck out;
    out.j = j;
    std::vector<double> Ps, vals;
    for (double P : P_list) {
        std::vector<SlotPoints> slots;
        for (std::size_t s = 0; s < inst.slots(); ++s)
            slots.push_back(slot_points(inst, P, s));
        BlockValues bv = block_values(inst, P, j - 1, slots, opts.budget_points);
        std::map<std::vector<int64_t>, Int> f;
        std::vector<int64_t> key(m);
        for (uint64_t t = 0; t < bv.count; ++t) {
            for (std::size_t l = 0; l < m; ++l) key[l] = bv.values[t * m + l];
            f[key] += 1;
        }
        Int coincidences(0);
        for (const auto& [v, c] : f) coincidences += c * c;
        MeanValueRow row;
        row.P = P;
        row.value = coincidences;
        out.rows.push_back(row);
        Ps.push_back(P);
        vals.push_back(coincidences.get_d());
    }
    out.fitted_exponent = loglog_slope(Ps, vals);
    return out;
}

double major_arc_measure(const IdealSpec& n, unsigned deg_n, double theta, double P,
                         double C) {
    const FieldSpec& k = *n.k;
    if (k.m != 1) throw SchemaError("arc measure implemented for m = 1 only");
    Int q0 = n.basis.at(0, 0);
    const double mexp = (deg_n - 1) * theta;
    const double norm_bound = C * std::pow(P, mexp);
    const double radius = std::min(std::pow(P, -static_cast<double>(deg_n) + mexp), 0.5);
    long long fmax = static_cast<long long>(std::floor(norm_bound));
    uint64_t classes = 0;
    for (long long f = 1; f <= fmax; ++f)
        for (long long e = 0; e < f; ++e) {
            Int E(static_cast<long>(e)), F(static_cast<long>(f));
            if (gcd(E, F) != 1) continue;
            Int nm = q0 * F / gcd(E, q0);
            if (nm.get_d() <= norm_bound) ++classes;
        }
    return static_cast<double>(classes) * 2.0 * radius;
}

}  // namespace nfc
