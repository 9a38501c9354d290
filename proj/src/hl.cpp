#include "nfcircle/hl.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nfcircle/util.hpp"

namespace nfc {

namespace {

FieldElement gamma_element(const FieldSpec& k, const std::vector<Rat>& gamma) {
    if (gamma.size() != k.m) throw SchemaError("gamma coordinate count mismatch");
    return FieldElement(k, gamma);
}

// exact fractional part of Tr(gamma * v) for integral v
double exact_phase(const FieldSpec& k, const FieldElement& gamma, const FieldElement& v) {
    Rat t = trace_exact(field_mul(gamma, v));
    Rat f = t - rat_floor(t);
    return f.get_d();
}

// the three block values at k-valued block arguments
FieldElement block_value(const EquationInstance& inst, int which,
                         const std::vector<FieldElement>& args) {
    const FieldSpec& k = *inst.k;
    if (which == 2) {
        FieldElement z = field_add(args[0], fe_from_coords(k, inst.residues[2 * inst.n]));
        FieldElement p = fe_one(k);
        for (unsigned r = 0; r < inst.n; ++r) p = field_mul(p, z);
        return p;
    }
    std::size_t base = which == 0 ? 0 : inst.n;
    std::vector<FieldElement> shifted;
    for (std::size_t i = 0; i < inst.n; ++i)
        shifted.push_back(field_add(args[i], fe_from_coords(k, inst.residues[base + i])));
    FieldElement nv = norm_form_eval(*inst.N, shifted);
    return field_mul(which == 0 ? inst.a : inst.b, nv);
}

std::complex<double> block_T(const EquationInstance& inst, int which,
                             const FieldElement& gamma,
                             const std::vector<std::vector<Int>>& reps) {
    const FieldSpec& k = *inst.k;
    std::size_t arity = which == 2 ? 1 : inst.n;
    std::vector<std::size_t> idx(arity, 0);
    ComplexAccumulator acc;
    for (;;) {
        std::vector<FieldElement> args;
        for (std::size_t s = 0; s < arity; ++s) args.push_back(fe_from_coords(k, reps[idx[s]]));
        acc.add(unit_phase(exact_phase(k, gamma, block_value(inst, which, args))));
        std::size_t s = arity;
        bool done = true;
        while (s > 0) {
            --s;
            if (++idx[s] < reps.size()) {
                done = false;
                break;
            }
            idx[s] = 0;
        }
        if (done) break;
    }
    return acc.value();
}

// m = 1 machinery: distributions of q0 * (block value) mod M over the
// offsets q0 * s, s in [0, M)
struct BlockPolys {
    Int64Poly x, y, z;  // n, n, 1 variables
    Int q0;
};

MPoly<Rat> restrict_block(const MPoly<Rat>& F, std::size_t lo, std::size_t hi,
                          std::size_t arity, const Rat& constant, bool negate) {
    MPoly<Rat> out(arity);
    for (const auto& [e, c] : F.terms) {
        bool inside = true, constant_term = true;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            constant_term = false;
            if (v < lo || v >= hi) inside = false;
        }
        if (constant_term || !inside) continue;
        std::vector<unsigned> re(arity, 0);
        for (std::size_t v = lo; v < hi; ++v) re[v - lo] = e[v];
        out.add_term(re, negate ? Rat(-c) : c);
    }
    out.add_term(std::vector<unsigned>(arity, 0), constant);
    return out;
}

BlockPolys compile_block_polys(const EquationInstance& inst) {
    const FieldSpec& k = *inst.k;
    if (k.m != 1) throw SchemaError("local densities are implemented for m = 1");
    const std::size_t n = inst.n;
    const MPoly<Rat>& F = inst.form->Fstar[0];

    auto const_of = [&](int which) {
        std::vector<FieldElement> zero(which == 2 ? 1 : n, fe_zero(k));
        return block_value(inst, which, zero).c[0];
    };
    MPoly<Rat> Px = restrict_block(F, 0, n, n, const_of(0), false);
    MPoly<Rat> Py = restrict_block(F, n, 2 * n, n, const_of(1), false);
    MPoly<Rat> Pz = restrict_block(F, 2 * n, 2 * n + 1, 1, const_of(2), true);

    // consistency: the three block polynomials reassemble F
    {
        MPoly<Rat> check(2 * n + 1);
        auto lift = [&](const MPoly<Rat>& p, std::size_t off, bool neg) {
            for (const auto& [e, c] : p.terms) {
                std::vector<unsigned> le(2 * n + 1, 0);
                for (std::size_t v = 0; v < e.size(); ++v) le[off + v] = e[v];
                check.add_term(le, neg ? Rat(-c) : c);
            }
        };
        lift(Px, 0, false);
        lift(Py, n, false);
        lift(Pz, 2 * n, true);
        if (!(check.terms == F.terms)) throw InternalError("block split does not reassemble F");
    }

    BlockPolys bp;
    bp.x = Int64Poly::compile(Px);
    bp.y = Int64Poly::compile(Py);
    bp.z = Int64Poly::compile(Pz);
    bp.q0 = inst.modulus.basis.at(0, 0);
    return bp;
}

}  // namespace

CompleteSumValue complete_sum(const std::vector<Rat>& gamma_in, const EquationInstance& inst,
                              uint64_t budget) {
    const FieldSpec& k = *inst.k;
    const std::size_t n = inst.n;
    CompleteSumValue out;
    out.gamma = gamma_canonical(inst.modulus, gamma_in);
    FieldElement gamma = gamma_element(k, out.gamma);
    FieldElement neg_gamma = field_neg(gamma);

    IdealSpec a = denominator_ideal_coords(k, out.gamma, inst.modulus);
    out.denom_norm = a.norm;
    IdealSpec na = ideal_mul(inst.modulus, a);
    std::vector<std::vector<Int>> reps = sublattice_residues(inst.modulus, na);
    if (Int(reps.size()) != a.norm) throw InternalError("representative count mismatch");

    double cost = std::pow(a.norm.get_d(), static_cast<double>(n));
    if (2 * cost + a.norm.get_d() > static_cast<double>(budget))
        throw BudgetExceeded("complete sum exceeds budget");

    // m = 1 fast path: compiled int64 block values with exact rational phases
    bool fast = false;
    if (k.m == 1 && out.gamma[0].get_den().fits_slong_p() &&
        out.gamma[0].get_num().fits_slong_p() &&
        out.gamma[0].get_den() <= Int(1L << 30)) {
        BlockPolys bp = compile_block_polys(inst);
        std::vector<int64_t> rv(reps.size());
        Int rmax(0);
        bool ok = true;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (!reps[i][0].fits_slong_p()) {
                ok = false;
                break;
            }
            rv[i] = reps[i][0].get_si();
            Int av = abs(reps[i][0]);
            if (av > rmax) rmax = av;
        }
        std::vector<Int> bn(n, rmax + 1), bz(1, rmax + 1);
        if (ok && bp.x.safe_for(bn) && bp.y.safe_for(bn) && bp.z.safe_for(bz)) {
            int64_t f = out.gamma[0].get_den().get_si();
            int64_t e = out.gamma[0].get_num().get_si() % f;
            if (e < 0) e += f;
            auto sum_T = [&](const Int64Poly& poly, std::size_t arity, int64_t ph) {
                ComplexAccumulator acc;
                std::vector<std::size_t> idx(arity, 0);
                std::vector<int64_t> args(arity, 0);
                for (;;) {
                    for (std::size_t s = 0; s < arity; ++s) args[s] = rv[idx[s]];
                    int64_t v = poly.eval(args.data()) % f;
                    if (v < 0) v += f;
                    acc.add(unit_phase(static_cast<double>(ph * v % f) /
                                       static_cast<double>(f)));
                    std::size_t s = arity;
                    bool done = true;
                    while (s > 0) {
                        --s;
                        if (++idx[s] < rv.size()) {
                            done = false;
                            break;
                        }
                        idx[s] = 0;
                    }
                    if (done) break;
                }
                return acc.value();
            };
            out.T1 = sum_T(bp.x, n, e);
            out.T2 = sum_T(bp.y, n, e);
            out.T3 = sum_T(bp.z, 1, (f - e) % f);
            fast = true;
        }
    }
    if (!fast) {
        out.T1 = block_T(inst, 0, gamma, reps);
        out.T2 = block_T(inst, 1, gamma, reps);
        out.T3 = block_T(inst, 2, neg_gamma, reps);
    }

    double nm = a.norm.get_d();
    double scale = std::pow(nm, -static_cast<double>(2 * n + 1));
    out.S = scale * out.T1 * out.T2 * out.T3;
    if (std::abs(out.S) > 1.0 + 1e-9)
        throw InternalError("complete sum magnitude exceeds 1");

    // direct (2n+1)-fold verification for small denominators
    double full = std::pow(nm, static_cast<double>(2 * n + 1));
    if (full <= 8000.0 && reps.size() > 0) {
        std::size_t slots = 2 * n + 1;
        std::vector<std::size_t> idx(slots, 0);
        ComplexAccumulator acc;
        for (;;) {
            std::vector<std::vector<Int>> coords;
            for (std::size_t s = 0; s < slots; ++s) coords.push_back(reps[idx[s]]);
            FieldElement fv = shifted_form_eval_coords(*inst.form, coords);
            acc.add(unit_phase(exact_phase(k, gamma, fv)));
            std::size_t s = slots;
            bool done = true;
            while (s > 0) {
                --s;
                if (++idx[s] < reps.size()) {
                    done = false;
                    break;
                }
                idx[s] = 0;
            }
            if (done) break;
        }
        std::complex<double> direct = scale * acc.value();
        if (std::abs(direct - out.S) > 1e-12 * std::max(1.0, std::abs(out.S)))
            throw InternalError("complete sum factorization mismatch");
    }
    return out;
}

namespace {


// distribution over w in [0, M) of q0 * P(q0 s) mod M, s ranging over
// [0, M)^arity
std::vector<int64_t> block_distribution(const Int64Poly& poly, std::size_t arity, int64_t q0,
                                        int64_t M, uint64_t budget) {
    double cost = std::pow(static_cast<double>(M), static_cast<double>(arity));
    if (cost > static_cast<double>(budget))
        throw BudgetExceeded("residue distribution exceeds budget");
    std::vector<Int> bound(arity, Int(static_cast<long>(q0 * (M - 1) + 1)));
    if (!poly.safe_for(bound)) throw BudgetExceeded("block values cannot be certified into int64");
    std::vector<int64_t> D(M, 0);
    std::vector<int64_t> args(arity, 0);
    std::vector<int64_t> s(arity, 0);
    uint64_t total = 1;
    for (std::size_t i = 0; i < arity; ++i) total *= static_cast<uint64_t>(M);
    for (uint64_t t = 0; t < total; ++t) {
        for (std::size_t i = 0; i < arity; ++i) args[i] = q0 * s[i];
        int64_t v = poly.eval(args.data()) % M;
        int64_t w = (v % M * (q0 % M)) % M;
        if (w < 0) w += M;
        D[static_cast<std::size_t>(w)] += 1;
        std::size_t i = arity;
        while (i > 0) {
            --i;
            if (++s[i] < M) break;
            s[i] = 0;
        }
    }
    return D;
}

struct LevelData {
    std::complex<double> level_sum;  // sum of S_gamma over a_gamma = <p^i>
    bool have_count = false;
    Int count = 0;  // roots of q0 F = 0 mod p^i over the offset classes
};

LevelData level_sums(const BlockPolys& bp, std::size_t n, int64_t p, unsigned i,
                     uint64_t budget) {
    int64_t M = 1;
    for (unsigned t = 0; t < i; ++t) {
        if (M > (int64_t(1) << 40) / p) throw BudgetExceeded("modulus exceeds depth budget");
        M *= p;
    }
    int64_t q0 = bp.q0.get_si();
    std::vector<int64_t> Dx = block_distribution(bp.x, n, q0, M, budget);
    std::vector<int64_t> Dy = block_distribution(bp.y, n, q0, M, budget);
    std::vector<int64_t> Dz = block_distribution(bp.z, 1, q0, M, budget);

    // character sums over units u mod M
    std::vector<std::complex<double>> root(M);
    for (int64_t w = 0; w < M; ++w)
        root[w] = unit_phase(static_cast<double>(w) / static_cast<double>(M));

    double unit_cost = static_cast<double>(M) * static_cast<double>(M) * 3.0;
    if (unit_cost > static_cast<double>(budget))
        throw BudgetExceeded("character sums exceed budget");

    ComplexAccumulator lsum;
    for (int64_t u = 1; u < M; ++u) {
        if (u % p == 0) continue;
        ComplexAccumulator t1a, t2a, t3a;
        int64_t idx = 0;
        for (int64_t w = 0; w < M; ++w) {
            if (Dx[w]) t1a.add(static_cast<double>(Dx[w]) * root[idx]);
            if (Dy[w]) t2a.add(static_cast<double>(Dy[w]) * root[idx]);
            if (Dz[w]) t3a.add(static_cast<double>(Dz[w]) * root[idx]);
            idx += u;
            if (idx >= M) idx -= M;
        }
        lsum.add(t1a.value() * t2a.value() * std::conj(t3a.value()));
    }
    LevelData out;
    double scale = std::pow(static_cast<double>(M), -static_cast<double>(2 * n + 1));
    out.level_sum = scale * lsum.value();

    // exact counting form: sum over wx + wy - wz = 0 mod M, int64-safe when
    // M^4 fits
    if (static_cast<double>(M) <= 55000.0) {
        Int N(0);
        for (int64_t wx = 0; wx < M; ++wx) {
            if (!Dx[wx]) continue;
            int64_t inner = 0;
            for (int64_t wy = 0; wy < M; ++wy) {
                if (!Dy[wy]) continue;
                int64_t wz = wx + wy;
                if (wz >= M) wz -= M;
                inner += Dy[wy] * Dz[wz];
            }
            N += Int(static_cast<long>(Dx[wx])) * Int(static_cast<long>(inner));
        }
        out.have_count = true;
        out.count = N;
    }
    return out;
}

bool is_prime_int(const Int& p) { return mpz_probab_prime_p(p.get_mpz_t(), 30) > 0; }

}  // namespace

LocalDensityResult local_density(const IdealSpec& p, unsigned j_max,
                                 const EquationInstance& inst, uint64_t budget) {
    const FieldSpec& k = *inst.k;
    if (k.m != 1) throw SchemaError("local densities are implemented for m = 1");
    if (p.k != &k) throw SchemaError("prime over wrong field");
    if (!is_prime_int(p.norm)) throw SchemaError("ideal is not prime");

    BlockPolys bp = compile_block_polys(inst);
    int64_t pp = p.norm.get_si();

    LocalDensityResult out;
    out.p = p.norm;
    out.mu = {1.0};
    double running = 1.0;
    Int Mj(1);
    for (unsigned j = 1; j <= j_max; ++j) {
        LevelData ld = level_sums(bp, inst.n, pp, j, budget);
        if (std::fabs(ld.level_sum.imag()) > 1e-9 * std::max(1.0, std::abs(ld.level_sum)))
            throw InternalError("level sum has a non-real component");
        running += ld.level_sum.real();
        out.mu.push_back(running);
        Mj *= p.norm;
        if (ld.have_count) {
            Rat scale(1, 1);
            Rat Mq(Mj);
            for (unsigned t = 0; t < 2 * inst.n; ++t) scale /= Mq;
            Rat mu_count = Rat(ld.count) * scale;
            out.mu_counting.push_back(mu_count);
            if (inst.modulus.norm == 1) {
                out.counting_asserted = true;
                if (std::fabs(mu_count.get_d() - running) > 1e-9 * std::max(1.0, running))
                    throw InternalError("counting form disagrees with the gamma sum");
            }
        }
    }
    for (std::size_t j = 0; j + 1 < out.mu.size(); ++j) {
        if (std::fabs(out.mu[j + 1] - out.mu[j]) < 1e-3) {
            out.j_stop = static_cast<unsigned>(j);
            out.stabilized = true;
            break;
        }
    }
    if (out.mu.size() >= 2)
        out.tail_gap = std::fabs(out.mu[out.mu.size() - 1] - out.mu[out.mu.size() - 2]);
    return out;
}

LocalDensityResult local_density_adaptive(const IdealSpec& p, const EquationInstance& inst,
                                          double tol, unsigned j_cap, uint64_t budget) {
    if (j_cap == 0) {
        long pv = p.norm.get_si();
        j_cap = pv == 2 ? 14 : (pv == 3 ? 10 : 7);
    }
    for (unsigned j = 2; j <= j_cap; ++j) {
        LocalDensityResult r = local_density(p, j, inst, budget);
        if (std::fabs(r.mu[j] - r.mu[j - 1]) < tol) {
            r.j_stop = j - 1;
            r.stabilized = true;
            r.tail_gap = std::fabs(r.mu[j] - r.mu[j - 1]);
            return r;
        }
        if (j == j_cap) return r;
    }
    return local_density(p, j_cap, inst, budget);
}

SingularSeriesEstimate singular_series(const EquationInstance& inst, const Int& prime_cutoff,
                                       unsigned j_max, const Int& gamma_cutoff, double tol,
                                       uint64_t budget) {
    const FieldSpec& k = *inst.k;
    if (k.m != 1) throw SchemaError("the singular series is implemented for m = 1");
    SingularSeriesEstimate est;
    est.prime_cutoff = prime_cutoff;
    est.gamma_cutoff = gamma_cutoff;

    for (Int p(2); p <= prime_cutoff; ++p) {
        if (!is_prime_int(p)) continue;
        IdealSpec pid = principal_ideal(fe_from_int(k, p));
        LocalDensityResult r = local_density_adaptive(pid, inst, tol, j_max, budget);
        SingularSeriesEstimate::PrimeFactor f;
        f.p = p;
        f.mu = r.mu.back();
        f.j_stop = r.j_stop;
        f.tail_gap = r.tail_gap;
        f.stabilized = r.stabilized;
        est.per_prime.push_back(f);
        est.euler_product *= f.mu;
    }

    // direct gamma sum over classes with Nm(a_gamma) <= gamma_cutoff
    Int q0 = inst.modulus.basis.at(0, 0);
    std::complex<double> total(1.0, 0.0);  // zero class
    std::map<Int, std::complex<double>> blocks;
    long fmax = gamma_cutoff.get_si();
    for (long f = 1; f <= fmax; ++f) {
        for (long e = (f == 1 ? 1 : 0); e < q0.get_si() * f; ++e) {
            Int E(e), F(f);
            if (gcd(E, F) != 1) continue;
            Int nm = q0 * F / gcd(E, q0);
            if (nm > gamma_cutoff || nm == 1) continue;
            CompleteSumValue sv = complete_sum({Rat(E, F)}, inst, budget);
            if (sv.denom_norm != nm) throw InternalError("denominator norm mismatch");
            total += sv.S;
            Int R(2);
            while (R < nm) R *= 2;
            blocks[R] += sv.S;
        }
    }
    est.direct_sum = total;
    for (const auto& [R, v] : blocks) est.dyadic.emplace_back(R, v);
    return est;
}

SingularIntegralEstimate singular_integral(const EquationInstance& inst,
                                           const std::string& method, uint64_t samples,
                                           uint64_t seed, unsigned jobs, double beta_cutoff) {
    const FieldSpec& k = *inst.k;
    const std::size_t m = k.m;
    const std::size_t nvars = inst.slots() * m;
    const double rho = inst.box.rho;

    std::vector<DblPoly> F0;
    for (const auto& poly : inst.form->F0star) F0.push_back(DblPoly::compile(poly));
    std::vector<std::vector<DblPoly>> grad(nvars);
    for (std::size_t v = 0; v < nvars; ++v)
        for (const auto& poly : inst.form->F0star) grad[v].push_back(DblPoly::compile(poly.derivative(v)));

    auto grad_norm = [&](const double* x) {
        double g2 = 0;
        for (std::size_t v = 0; v < nvars; ++v)
            for (std::size_t l = 0; l < m; ++l) {
                double gv = grad[v][l].eval(x);
                g2 += gv * gv;
            }
        return std::sqrt(g2);
    };

    if (grad_norm(inst.box.center.data()) < 1e-9)
        throw InfeasibleError("singular center: the leading form gradient vanishes there");

    double vol = std::pow(2.0 * rho, static_cast<double>(nvars));

    SingularIntegralEstimate est;
    est.method = method;
    est.samples = samples;
    est.seed = seed;

    if (method == "oscillatory") {
        if (m != 1) throw SchemaError("oscillatory method is implemented for m = 1");
        const std::size_t nchunks = 64;
        uint64_t per = samples / nchunks;
        struct OA {
            double sum = 0, sumsq = 0;
            uint64_t n = 0;
        };
        std::function<OA(std::size_t)> worker = [&](std::size_t ci) {
            Rng::Stream rng(seed, ci);
            uint64_t mine = ci + 1 == nchunks ? samples - per * (nchunks - 1) : per;
            OA acc;
            std::vector<double> x(nvars);
            for (uint64_t t = 0; t < mine; ++t) {
                for (std::size_t v = 0; v < nvars; ++v)
                    x[v] = inst.box.center[v] + rho * (2.0 * rng.next_double() - 1.0);
                double f = F0[0].eval(x.data());
                double g = std::fabs(f) < 1e-12 ? 2.0 * beta_cutoff
                                                : std::sin(2.0 * M_PI * beta_cutoff * f) /
                                                      (M_PI * f);
                acc.sum += g;
                acc.sumsq += g * g;
                acc.n += 1;
            }
            return acc;
        };
        auto parts = parallel_chunks<OA>(nchunks, jobs, worker);
        double sum = 0, sumsq = 0;
        uint64_t n = 0;
        for (const auto& a : parts) {
            sum += a.sum;
            sumsq += a.sumsq;
            n += a.n;
        }
        double mean = sum / n;
        double var = std::max(0.0, sumsq / n - mean * mean);
        est.value = vol * mean;
        est.stderr_ = vol * std::sqrt(var / n);
        est.eps_schedule = {beta_cutoff};
        est.value_at_eps = {est.value};
        est.stderr_at_eps = {est.stderr_};
        return est;
    }
    if (method != "slab") throw SchemaError("unknown singular integral method");

    const std::vector<double> eps = {0.1, 0.05, 0.025, 0.0125, 0.00625};
    const std::size_t nchunks = 64;
    uint64_t per = samples / nchunks;
    struct SA {
        std::vector<uint64_t> hits;
        uint64_t singular_hits = 0;
        uint64_t n = 0;
    };
    std::function<SA(std::size_t)> worker = [&](std::size_t ci) {
        Rng::Stream rng(seed, ci);
        uint64_t mine = ci + 1 == nchunks ? samples - per * (nchunks - 1) : per;
        SA acc;
        acc.hits.assign(eps.size(), 0);
        std::vector<double> x(nvars), val(m);
        for (uint64_t t = 0; t < mine; ++t) {
            for (std::size_t v = 0; v < nvars; ++v)
                x[v] = inst.box.center[v] + rho * (2.0 * rng.next_double() - 1.0);
            double worst = 0;
            for (std::size_t l = 0; l < m; ++l)
                worst = std::max(worst, std::fabs(F0[l].eval(x.data())));
            for (std::size_t t2 = 0; t2 < eps.size(); ++t2)
                if (worst < eps[t2]) acc.hits[t2] += 1;
            if (worst < eps[0] && grad_norm(x.data()) < 1e-6) acc.singular_hits += 1;
            acc.n += 1;
        }
        return acc;
    };
    auto parts = parallel_chunks<SA>(nchunks, jobs, worker);
    std::vector<uint64_t> hits(eps.size(), 0);
    uint64_t singular_hits = 0, n = 0;
    for (const auto& a : parts) {
        for (std::size_t t = 0; t < eps.size(); ++t) hits[t] += a.hits[t];
        singular_hits += a.singular_hits;
        n += a.n;
    }
    if (hits[0] > 0 && singular_hits * 100 > hits[0])
        throw InfeasibleError("singular center: gradient vanishes on a non-negligible fraction");

    est.eps_schedule = eps;
    for (std::size_t t = 0; t < eps.size(); ++t) {
        double frac = static_cast<double>(hits[t]) / static_cast<double>(n);
        double scale = vol / std::pow(2.0 * eps[t], static_cast<double>(m));
        double se = scale * std::sqrt(std::max(frac * (1 - frac), 1.0 / n) /
                                      static_cast<double>(n));
        est.value_at_eps.push_back(frac * scale);
        est.stderr_at_eps.push_back(se);
    }

    // weighted linear fit J(eps) = J0 + c eps, report the intercept
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (std::size_t t = 0; t < eps.size(); ++t) {
        double w = 1.0 / (est.stderr_at_eps[t] * est.stderr_at_eps[t]);
        sw += w;
        swx += w * eps[t];
        swy += w * est.value_at_eps[t];
        swxx += w * eps[t] * eps[t];
        swxy += w * eps[t] * est.value_at_eps[t];
    }
    double det = sw * swxx - swx * swx;
    est.value = (swxx * swy - swx * swxy) / det;
    est.stderr_ = std::sqrt(swxx / det);
    return est;
}

PredictionValue prediction(const EquationInstance& inst, const SingularSeriesEstimate& series,
                           const SingularIntegralEstimate& integral, double P) {
    PredictionValue out;
    out.series = series.euler_product;
    out.integral = integral.value;
    out.P = P;
    double power = std::pow(P, static_cast<double>((inst.n + 1) * inst.m()));
    out.value = out.series * out.integral * power;
    out.stderr_ = std::fabs(out.series) * integral.stderr_ * power;
    return out;
}

}  // namespace nfc
