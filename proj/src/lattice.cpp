#include "nfcircle/lattice.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <unordered_map>

#include "nfcircle/poly.hpp"
#include "nfcircle/util.hpp"

namespace nfc {

double rho_for_eta(const FieldSpec& k, double eta) {
    double c = arch_constants(k).c;
    return eta / (2.0 * c * c);
}

EquationInstance make_instance(std::shared_ptr<const FieldSpec> k,
                               std::shared_ptr<const ExtensionSpec> K,
                               const FieldElement& a, const FieldElement& b,
                               const IdealSpec& modulus,
                               std::vector<std::vector<Int>> residues,
                               std::vector<double> targets, double eta,
                               double rho_override, std::vector<double> center_override,
                               std::string label) {
    if (!k || !K || K->k != k.get()) throw SchemaError("extension base field mismatch");
    if (a.k != k.get() || b.k != k.get()) throw SchemaError("coefficients over wrong field");
    if (modulus.k != k.get()) throw SchemaError("modulus over wrong field");
    const std::size_t n = K->n;
    const std::size_t m = k->m;
    const std::size_t slots = 2 * n + 1;
    if (residues.size() != slots) throw SchemaError("need 2n+1 residue slots");
    for (auto& r : residues) {
        if (r.size() != m) throw SchemaError("residue coordinate length mismatch");
        r = ideal_reduce(modulus, r);
    }
    if (targets.empty()) targets.assign(slots * m, 0.0);
    if (targets.size() != slots * m) throw SchemaError("need (2n+1)m archimedean targets");

    EquationInstance inst;
    inst.k = k;
    inst.K = K;
    inst.a = a;
    inst.b = b;
    inst.n = static_cast<unsigned>(n);
    inst.modulus = modulus;
    inst.residues = residues;
    inst.targets = targets;
    inst.eta = eta;
    inst.label = std::move(label);

    inst.N = std::make_shared<const NormFormPoly>(build_norm_form(*K));
    std::vector<FieldElement> xs, ys;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(fe_from_coords(*k, residues[i]));
    for (std::size_t i = 0; i < n; ++i) ys.push_back(fe_from_coords(*k, residues[n + i]));
    FieldElement zs = fe_from_coords(*k, residues[2 * n]);
    inst.form = std::make_shared<const ShiftedForm>(build_shifted_form(a, b, *K, xs, ys, zs));

    inst.box.m = m;
    inst.box.n = n;
    inst.box.rho = rho_override > 0 ? rho_override : rho_for_eta(*k, eta);
    if (!(inst.box.rho > 0) || !(inst.box.rho < 1))
        throw SchemaError("box radius must lie in (0,1)");
    inst.box.center = center_override.empty() ? targets : std::move(center_override);
    if (inst.box.center.size() != slots * m) throw SchemaError("box center length mismatch");
    return inst;
}

namespace {

void enum_rec(const ZMat& H, const std::vector<Int>& residue, const double* ctr,
              double rho, double P, std::size_t level, std::vector<Int>& acc_coord,
              std::vector<std::vector<Int>>& out) {
    const std::size_t m = H.rows;
    // coordinate `level` value so far: residue[level] + sum_{i<level} a_i H[i][level]
    // is already accumulated in acc_coord[level]
    const Int& step = H.at(level, level);
    double base = acc_coord[level].get_d();
    double s = step.get_d();
    double lo = P * ctr[level] - P * rho, hi = P * ctr[level] + P * rho;
    long long amin = static_cast<long long>(std::floor((lo - base) / s)) - 1;
    long long amax = static_cast<long long>(std::ceil((hi - base) / s)) + 1;
    for (long long av = amin; av <= amax; ++av) {
        Int a(static_cast<long>(av));
        Int x = acc_coord[level] + a * step;
        double xd = x.get_d();
        // same strict predicate as BoxSpec::contains
        if (!(std::fabs(xd - P * ctr[level]) < P * rho)) continue;
        std::vector<Int> next = acc_coord;
        next[level] = x;
        for (std::size_t j = level + 1; j < m; ++j) next[j] += a * H.at(level, j);
        if (level + 1 == m) {
            out.push_back(next);
        } else {
            enum_rec(H, residue, ctr, rho, P, level + 1, next, out);
        }
    }
}

}  // namespace

std::vector<std::vector<Int>> enumerate_congruence_class(const IdealSpec& ideal,
                                                         const std::vector<Int>& residue,
                                                         const std::vector<double>& center,
                                                         double rho, double P) {
    const std::size_t m = ideal.basis.rows;
    if (residue.size() != m || center.size() != m)
        throw SchemaError("enumeration dimension mismatch");
    std::vector<std::vector<Int>> out;
    std::vector<Int> acc = residue;
    enum_rec(ideal.basis, residue, center.data(), rho, P, 0, acc, out);
    return out;
}

SlotPoints slot_points(const EquationInstance& inst, double P, std::size_t slot) {
    const std::size_t m = inst.m();
    std::vector<double> center(m);
    for (std::size_t i = 0; i < m; ++i) center[i] = inst.box.slot_center(slot)[i];
    auto pts = enumerate_congruence_class(inst.modulus, inst.residues[slot], center,
                                          inst.box.rho, P);
    SlotPoints sp;
    sp.m = m;
    sp.count = pts.size();
    sp.flat.reserve(pts.size() * m);
    for (const auto& p : pts)
        for (const auto& c : p) {
            if (!fits_int64(c)) throw BudgetExceeded("lattice coordinates exceed int64");
            sp.flat.push_back(to_int64(c));
        }
    return sp;
}

namespace {

struct CompiledBlocks {
    std::size_t m = 0, n = 0;
    // int64 evaluators for the m coordinates of aN, bN, z^n
    std::vector<Int64Poly> aN, bN, zn;
    // exact counterparts
    std::vector<MPoly<Rat>> aN_q, bN_q, zn_q;
};

CompiledBlocks compile_blocks(const EquationInstance& inst) {
    const FieldSpec& k = *inst.k;
    CompiledBlocks cb;
    cb.m = k.m;
    cb.n = inst.n;
    cb.aN_q = flatten_over_Q(inst.N->form.scaled(inst.a), k);
    cb.bN_q = flatten_over_Q(inst.N->form.scaled(inst.b), k);
    MPoly<FieldElement> z = MPoly<FieldElement>::variable(1, 0, fe_one(k));
    MPoly<FieldElement> zn = MPoly<FieldElement>::constant(1, fe_one(k));
    for (unsigned r = 0; r < inst.n; ++r) zn = zn * z;
    cb.zn_q = flatten_over_Q(zn, k);
    for (std::size_t l = 0; l < k.m; ++l) {
        cb.aN.push_back(Int64Poly::compile(cb.aN_q[l]));
        cb.bN.push_back(Int64Poly::compile(cb.bN_q[l]));
        cb.zn.push_back(Int64Poly::compile(cb.zn_q[l]));
    }
    return cb;
}

std::vector<Int> slot_bound(const EquationInstance& inst, double P, std::size_t slot) {
    std::vector<Int> B(inst.m());
    for (std::size_t i = 0; i < inst.m(); ++i) {
        double b = std::fabs(P * inst.box.slot_center(slot)[i]) + P * inst.box.rho + 2.0;
        B[i] = Int(static_cast<long>(std::ceil(b)));
    }
    return B;
}

void certify_block(const std::vector<Int64Poly>& polys, const std::vector<Int>& bounds) {
    for (const auto& p : polys)
        if (!p.safe_for(bounds))
            throw BudgetExceeded("block values cannot be certified into int64");
}

}  // namespace

BlockValues block_values(const EquationInstance& inst, double P, int which,
                         const std::vector<SlotPoints>& slots, uint64_t budget) {
    const std::size_t m = inst.m();
    const std::size_t n = inst.n;
    CompiledBlocks cb = compile_blocks(inst);

    std::size_t first = which == 0 ? 0 : (which == 1 ? n : 2 * n);
    std::size_t arity = which == 2 ? 1 : n;
    const std::vector<Int64Poly>& polys = which == 0 ? cb.aN : (which == 1 ? cb.bN : cb.zn);

    std::vector<Int> bounds;
    for (std::size_t s = 0; s < arity; ++s) {
        auto B = slot_bound(inst, P, first + s);
        bounds.insert(bounds.end(), B.begin(), B.end());
    }
    certify_block(polys, bounds);

    uint64_t total = 1;
    for (std::size_t s = 0; s < arity; ++s) {
        total *= slots[first + s].count;
        if (total > budget) throw BudgetExceeded("block enumeration exceeds point budget");
    }

    BlockValues bv;
    bv.m = m;
    bv.arity = arity;
    bv.count = total;
    bv.values.resize(total * m);
    bv.tuple.resize(total * arity);
    if (total == 0) return bv;

    std::vector<uint32_t> idx(arity, 0);
    std::vector<int64_t> args(arity * m);
    for (uint64_t t = 0;; ++t) {
        for (std::size_t s = 0; s < arity; ++s) {
            const SlotPoints& sp = slots[first + s];
            for (std::size_t i = 0; i < m; ++i) args[s * m + i] = sp.point(idx[s])[i];
            bv.tuple[t * arity + s] = idx[s];
        }
        for (std::size_t l = 0; l < m; ++l) bv.values[t * m + l] = polys[l].eval(args.data());
        // odometer, last slot fastest
        std::size_t s = arity;
        bool done = true;
        while (s > 0) {
            --s;
            if (++idx[s] < slots[first + s].count) {
                done = false;
                break;
            }
            idx[s] = 0;
        }
        if (done) break;
    }
    return bv;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct VecKeyLess {
    bool operator()(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const {
        return a < b;
    }
};

}  // namespace

CountRow count_solutions(const EquationInstance& inst, double P, const CountOptions& opts,
                         std::vector<Witness>* witnesses) {
    auto t0 = Clock::now();
    const std::size_t m = inst.m();
    const std::size_t n = inst.n;
    std::vector<SlotPoints> slots;
    for (std::size_t s = 0; s < inst.slots(); ++s) slots.push_back(slot_points(inst, P, s));

    uint64_t nx = 1, ny = 1;
    for (std::size_t s = 0; s < n; ++s) {
        nx *= slots[s].count;
        ny *= slots[n + s].count;
    }
    uint64_t nz = slots[2 * n].count;
    if (nx > 0 && nz > 0 && nx * nz / nz != nx)
        throw BudgetExceeded("index size overflows");
    if (nx * nz + ny > opts.budget_points)
        throw BudgetExceeded("count exceeds point budget");

    BlockValues vx = block_values(inst, P, 0, slots, opts.budget_points);
    BlockValues vy = block_values(inst, P, 1, slots, opts.budget_points);
    BlockValues vz = block_values(inst, P, 2, slots, opts.budget_points);

    CountRow row;
    row.P = P;

    const bool want_wit = opts.collect_witnesses && witnesses != nullptr;

    if (m == 1 && !want_wit) {
        // dense or hashed index of z^n - aN(x)
        int64_t vx_min = 0, vx_max = 0, vz_min = 0, vz_max = 0;
        for (uint64_t i = 0; i < vx.count; ++i) {
            vx_min = i == 0 ? vx.values[i] : std::min(vx_min, vx.values[i]);
            vx_max = i == 0 ? vx.values[i] : std::max(vx_max, vx.values[i]);
        }
        for (uint64_t i = 0; i < vz.count; ++i) {
            vz_min = i == 0 ? vz.values[i] : std::min(vz_min, vz.values[i]);
            vz_max = i == 0 ? vz.values[i] : std::max(vz_max, vz.values[i]);
        }
        Int count(0);
        if (vx.count == 0 || vz.count == 0 || vy.count == 0) {
            row.count = 0;
            row.elapsed_ms = ms_since(t0);
            return row;
        }
        int64_t minV = vz_min - vx_max, maxV = vz_max - vx_min;
        uint64_t span = static_cast<uint64_t>(maxV - minV) + 1;
        const uint64_t dense_cap = 1ULL << 25;
        if (span <= dense_cap) {
            std::vector<int64_t> table(span, 0);
            for (uint64_t zi = 0; zi < vz.count; ++zi) {
                int64_t zv = vz.values[zi];
                for (uint64_t xi = 0; xi < vx.count; ++xi)
                    table[static_cast<uint64_t>(zv - vx.values[xi] - minV)] += 1;
            }
            // probe in parallel chunks, deterministic ordered merge
            const std::size_t nchunks = opts.jobs > 1 ? opts.jobs * 4 : 1;
            uint64_t chunk = (vy.count + nchunks - 1) / nchunks;
            std::function<Int(std::size_t)> worker = [&](std::size_t ci) {
                uint64_t beg = ci * chunk, end = std::min<uint64_t>(beg + chunk, vy.count);
                int64_t local = 0;
                Int big(0);
                for (uint64_t yi = beg; yi < end; ++yi) {
                    int64_t v = vy.values[yi];
                    if (v < minV || v > maxV) continue;
                    local += table[static_cast<uint64_t>(v - minV)];
                    if (local > (int64_t(1) << 60)) {
                        big += local;
                        local = 0;
                    }
                }
                big += local;
                return big;
            };
            auto parts = parallel_chunks<Int>(nchunks, opts.jobs, worker);
            for (const auto& p : parts) count += p;
        } else {
            std::unordered_map<int64_t, int64_t> table;
            table.reserve(static_cast<std::size_t>(std::min<uint64_t>(vx.count * vz.count, 1u << 22)));
            for (uint64_t zi = 0; zi < vz.count; ++zi)
                for (uint64_t xi = 0; xi < vx.count; ++xi)
                    table[vz.values[zi] - vx.values[xi]] += 1;
            for (uint64_t yi = 0; yi < vy.count; ++yi) {
                auto it = table.find(vy.values[yi]);
                if (it != table.end()) count += it->second;
            }
        }
        row.count = count;
        row.elapsed_ms = ms_since(t0);
        return row;
    }

    // general path: exact map keyed by the m-coordinate value vector
    std::map<std::vector<int64_t>, std::vector<std::pair<uint32_t, uint32_t>>> wit_index;
    std::map<std::vector<int64_t>, int64_t> table;
    std::vector<int64_t> key(m);
    for (uint64_t zi = 0; zi < vz.count; ++zi)
        for (uint64_t xi = 0; xi < vx.count; ++xi) {
            for (std::size_t l = 0; l < m; ++l)
                key[l] = vz.values[zi * m + l] - vx.values[xi * m + l];
            table[key] += 1;
            if (want_wit) {
                auto& lst = wit_index[key];
                if (lst.size() < opts.witness_cap)
                    lst.emplace_back(static_cast<uint32_t>(xi), static_cast<uint32_t>(zi));
            }
        }
    Int count(0);
    for (uint64_t yi = 0; yi < vy.count; ++yi) {
        for (std::size_t l = 0; l < m; ++l) key[l] = vy.values[yi * m + l];
        auto it = table.find(key);
        if (it == table.end()) continue;
        count += it->second;
        if (want_wit && witnesses->size() < opts.witness_cap) {
            for (const auto& [xi, zi] : wit_index[key]) {
                if (witnesses->size() >= opts.witness_cap) break;
                Witness w;
                w.P = P;
                for (std::size_t s = 0; s < n; ++s) {
                    uint32_t pi = vx.tuple[xi * vx.arity + s];
                    std::vector<Int> c(m);
                    for (std::size_t l = 0; l < m; ++l) c[l] = Int(slots[s].point(pi)[l]);
                    w.slot_coords.push_back(std::move(c));
                }
                for (std::size_t s = 0; s < n; ++s) {
                    uint32_t pi = vy.tuple[yi * vy.arity + s];
                    std::vector<Int> c(m);
                    for (std::size_t l = 0; l < m; ++l)
                        c[l] = Int(slots[n + s].point(pi)[l]);
                    w.slot_coords.push_back(std::move(c));
                }
                {
                    uint32_t pi = vz.tuple[zi];
                    std::vector<Int> c(m);
                    for (std::size_t l = 0; l < m; ++l)
                        c[l] = Int(slots[2 * n].point(pi)[l]);
                    w.slot_coords.push_back(std::move(c));
                }
                witnesses->push_back(std::move(w));
            }
        }
    }
    row.count = count;
    row.elapsed_ms = ms_since(t0);
    return row;
}

Int naive_count(const EquationInstance& inst, double P, uint64_t budget) {
    const FieldSpec& k = *inst.k;
    const std::size_t n = inst.n;
    std::vector<SlotPoints> slots;
    for (std::size_t s = 0; s < inst.slots(); ++s) slots.push_back(slot_points(inst, P, s));

    // exact block values through field arithmetic (independent of the
    // compiled-evaluator path)
    auto block_exact = [&](std::size_t first, std::size_t arity,
                           const FieldElement& coeff) -> std::vector<std::vector<Rat>> {
        std::vector<std::vector<Rat>> vals;
        std::vector<uint32_t> idx(arity, 0);
        bool empty = false;
        for (std::size_t s = 0; s < arity; ++s)
            if (slots[first + s].count == 0) empty = true;
        if (empty) return vals;
        for (;;) {
            std::vector<FieldElement> pt;
            for (std::size_t s = 0; s < arity; ++s) {
                std::vector<Int> c(k.m);
                for (std::size_t l = 0; l < k.m; ++l)
                    c[l] = Int(slots[first + s].point(idx[s])[l]);
                pt.push_back(fe_from_coords(k, c));
            }
            FieldElement v = field_mul(coeff, norm_form_eval(*inst.N, pt));
            vals.push_back(v.c);
            std::size_t s = arity;
            bool done = true;
            while (s > 0) {
                --s;
                if (++idx[s] < slots[first + s].count) {
                    done = false;
                    break;
                }
                idx[s] = 0;
            }
            if (done) return vals;
        }
    };

    std::vector<std::vector<Rat>> ax = block_exact(0, n, inst.a);
    std::vector<std::vector<Rat>> by = block_exact(n, n, inst.b);
    std::vector<std::vector<Rat>> zn;
    for (std::size_t i = 0; i < slots[2 * n].count; ++i) {
        std::vector<Int> c(k.m);
        for (std::size_t l = 0; l < k.m; ++l) c[l] = Int(slots[2 * n].point(i)[l]);
        FieldElement z = fe_from_coords(k, c);
        FieldElement p = fe_one(k);
        for (unsigned r = 0; r < inst.n; ++r) p = field_mul(p, z);
        zn.push_back(p.c);
    }

    uint64_t combos = static_cast<uint64_t>(ax.size()) * by.size() * zn.size();
    if (combos > budget) throw BudgetExceeded("naive oracle exceeds point budget");

    Int count(0);
    std::vector<Rat> s(k.m);
    for (const auto& vx : ax)
        for (const auto& vy : by) {
            for (std::size_t l = 0; l < k.m; ++l) s[l] = vx[l] + vy[l];
            for (const auto& vz : zn) {
                bool eq = true;
                for (std::size_t l = 0; l < k.m; ++l)
                    if (s[l] != vz[l]) {
                        eq = false;
                        break;
                    }
                if (eq) count += 1;
            }
        }
    return count;
}

namespace {

bool congruence_ok(const EquationInstance& inst, const std::vector<std::vector<Int>>& coords) {
    for (std::size_t s = 0; s < inst.slots(); ++s) {
        std::vector<Int> diff(inst.m());
        for (std::size_t l = 0; l < inst.m(); ++l) diff[l] = coords[s][l] - inst.residues[s][l];
        if (!hnf_contains(inst.modulus.basis, diff)) return false;
    }
    return true;
}

bool equation_exact(const EquationInstance& inst, const std::vector<std::vector<Int>>& coords) {
    const FieldSpec& k = *inst.k;
    std::vector<FieldElement> xs, ys;
    for (std::size_t i = 0; i < inst.n; ++i) xs.push_back(fe_from_coords(k, coords[i]));
    for (std::size_t i = 0; i < inst.n; ++i)
        ys.push_back(fe_from_coords(k, coords[inst.n + i]));
    FieldElement z = fe_from_coords(k, coords[2 * inst.n]);
    FieldElement lhs = field_add(field_mul(inst.a, norm_form_eval(*inst.N, xs)),
                                 field_mul(inst.b, norm_form_eval(*inst.N, ys)));
    FieldElement zp = fe_one(k);
    for (unsigned r = 0; r < inst.n; ++r) zp = field_mul(zp, z);
    return fe_is_zero(field_sub(lhs, zp));
}

std::vector<PlaceDistance> place_distances(const EquationInstance& inst, double P,
                                           const std::vector<std::vector<Int>>& coords) {
    const FieldSpec& k = *inst.k;
    std::vector<PlaceDistance> out;
    for (std::size_t s = 0; s < inst.slots(); ++s) {
        std::vector<double> pc(k.m), tc(k.m);
        for (std::size_t l = 0; l < k.m; ++l) {
            pc[l] = coords[s][l].get_d();
            tc[l] = inst.targets[s * k.m + l];
        }
        AlgebraPoint pp = point_from_coords(k, pc);
        AlgebraPoint tp = point_from_coords(k, tc);
        for (std::size_t pl = 0; pl < k.n1; ++pl) {
            PlaceDistance d;
            d.slot = s;
            d.place = pl;
            d.distance = std::fabs(pp.real_comp[pl] - P * tp.real_comp[pl]);
            d.bound = P * inst.eta;
            out.push_back(d);
        }
        for (std::size_t pl = 0; pl < k.n2; ++pl) {
            PlaceDistance d;
            d.slot = s;
            d.place = k.n1 + pl;
            d.distance = std::abs(pp.cplx_comp[pl] -
                                  std::complex<double>(P, 0) * tp.cplx_comp[pl]);
            d.bound = P * inst.eta;
            out.push_back(d);
        }
    }
    return out;
}

}  // namespace

WitnessCertificate weak_approx_search(const EquationInstance& inst,
                                      const std::vector<double>& schedule,
                                      const CountOptions& opts) {
    // residues must satisfy the equation mod n
    FieldElement f0 = shifted_form_eval_coords(
        *inst.form, std::vector<std::vector<Int>>(inst.slots(), std::vector<Int>(inst.m(), 0)));
    if (!ideal_contains(inst.modulus, f0))
        throw SchemaError("residues do not satisfy the equation modulo the ideal");

    WitnessCertificate cert;
    CountOptions wopts = opts;
    wopts.collect_witnesses = true;
    for (double P : schedule) {
        cert.P_tried.push_back(P);
        std::vector<Witness> found;
        count_solutions(inst, P, wopts, &found);
        for (const auto& w : found) {
            WitnessCertificate trial;
            trial.found = true;
            trial.P = P;
            trial.slot_coords = w.slot_coords;
            trial.P_tried = cert.P_tried;
            if (replay_witness(inst, trial)) return trial;
        }
    }
    cert.found = false;
    return cert;
}

bool replay_witness(const EquationInstance& inst, WitnessCertificate& cert) {
    cert.equation_exact = equation_exact(inst, cert.slot_coords);
    cert.congruence_ok = congruence_ok(inst, cert.slot_coords);
    cert.distances = place_distances(inst, cert.P, cert.slot_coords);
    bool near = true;
    for (const auto& d : cert.distances)
        if (!(d.distance < d.bound)) near = false;
    return cert.equation_exact && cert.congruence_ok && near;
}

}  // namespace nfc
