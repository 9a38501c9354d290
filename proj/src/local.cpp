#include "nfcircle/local.hpp"

#include <cmath>

#include "nfcircle/ideal.hpp"
#include "nfcircle/shifted_form.hpp"
#include "nfcircle/util.hpp"

namespace nfc {

namespace {

Int int_pow(const Int& p, unsigned e) {
    Int r(1);
    for (unsigned i = 0; i < e; ++i) r *= p;
    return r;
}

Int mod_reduce(const Int& v, const Int& M) {
    Int r = v % M;
    if (r < 0) r += M;
    return r;
}

unsigned val_p(Int v, const Int& p, unsigned cap) {
    if (v == 0) return cap;
    unsigned t = 0;
    while (t < cap && v % p == 0) {
        v /= p;
        ++t;
    }
    return t;
}

Int eval_int(const MPoly<Rat>& F, const std::vector<Int>& x) {
    Rat v = eval_rat_at_int(F, x);
    if (!is_integer(v)) throw SchemaError("form has non-integral coefficients");
    return Int(v.get_num());
}

}  // namespace

LocalCertificate hensel_certify_poly(const MPoly<Rat>& F, const Int& p, unsigned j_target,
                                     const std::vector<Int>& residue, unsigned residue_depth,
                                     uint64_t budget) {
    if (p < 2) throw SchemaError("prime must be at least 2");
    const std::size_t nv = F.nvars;
    if (!residue.empty() && residue.size() != nv)
        throw SchemaError("residue constraint arity mismatch");

    LocalCertificate cert;
    cert.p = p;
    cert.residue_depth = residue_depth;
    Int pv = int_pow(p, residue_depth);
    cert.residue.assign(nv, Int(0));
    if (!residue.empty())
        for (std::size_t i = 0; i < nv; ++i) cert.residue[i] = mod_reduce(residue[i], pv);

    std::vector<MPoly<Rat>> partials;
    for (std::size_t i = 0; i < nv; ++i) partials.push_back(F.derivative(i));

    uint64_t examined = 0;
    for (unsigned t = 0;; ++t) {
        unsigned j0 = std::max(2 * t + 1, residue_depth);
        if (j_target < 2 * t + 1) {
            cert.note = "no nonsingular root within the requested depth";
            cert.examined = examined;
            return cert;
        }
        Int M = int_pow(p, j0);
        Int Mt = int_pow(p, 2 * t + 1);
        Int free_span = int_pow(p, j0 - residue_depth);
        if (!free_span.fits_ulong_p()) {
            cert.note = "search space too deep";
            cert.examined = examined;
            return cert;
        }
        uint64_t span = free_span.get_ui();

        Int64Poly fast = Int64Poly::compile(F);
        bool use_fast = M.fits_slong_p() && fast.safe_for(std::vector<Int>(nv, M));
        int64_t mt64 = use_fast ? Mt.get_si() : 0;

        bool any_root = false;
        std::vector<uint64_t> s(nv, 0);
        std::vector<Int> w(nv);
        std::vector<int64_t> w64(nv);
        for (std::size_t i = 0; i < nv; ++i) w[i] = cert.residue[i];
        bool carry_done = false;
        while (!carry_done) {
            if (++examined > budget) {
                cert.search_depth = 2 * t + 1;
                cert.note = "budget exhausted during search";
                cert.examined = examined;
                return cert;
            }
            bool is_root;
            if (use_fast) {
                for (std::size_t i = 0; i < nv; ++i) w64[i] = w[i].get_si();
                is_root = fast.eval(w64.data()) % mt64 == 0;
            } else {
                is_root = eval_int(F, w) % Mt == 0;
            }
            if (is_root) {
                any_root = true;
                unsigned tmin = t + 1;
                std::size_t imin = 0;
                for (std::size_t i = 0; i < nv; ++i) {
                    unsigned ti = val_p(eval_int(partials[i], w), p, t + 1);
                    if (ti < tmin) {
                        tmin = ti;
                        imin = i;
                        break;
                    }
                }
                if (tmin == t) {
                    // Newton lift along coordinate imin up to p^{j_target}
                    std::vector<Int> W = w;
                    Int pt = int_pow(p, t);
                    for (unsigned j = 2 * t + 1; j < j_target; ++j) {
                        Int pj = int_pow(p, j);
                        Int c = mod_reduce(eval_int(F, W) / pj, p);
                        Int u = mod_reduce(eval_int(partials[imin], W) / pt, p);
                        Int uinv;
                        if (mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t()) == 0)
                            throw InternalError("derivative unit is not invertible");
                        Int delta = mod_reduce(-c * uinv, p);
                        W[imin] += delta * int_pow(p, j - t);
                    }
                    Int pjt = int_pow(p, j_target);
                    cert.found = true;
                    cert.j = j_target;
                    cert.witness.resize(nv);
                    for (std::size_t i = 0; i < nv; ++i) cert.witness[i] = mod_reduce(W[i], pjt);
                    cert.deriv_index = imin;
                    cert.deriv_val = t;
                    cert.search_depth = j0;
                    cert.examined = examined;
                    return cert;
                }
            }
            // odometer over the free digits, last coordinate fastest
            std::size_t i = nv;
            carry_done = true;
            while (i > 0) {
                --i;
                if (++s[i] < span) {
                    w[i] = cert.residue[i] + Int(static_cast<unsigned long>(s[i])) * pv;
                    carry_done = false;
                    break;
                }
                s[i] = 0;
                w[i] = cert.residue[i];
            }
        }
        cert.search_depth = 2 * t + 1;
        if (!any_root) {
            cert.definitive_insoluble = true;
            cert.note = "no roots at all at this depth";
            cert.examined = examined;
            return cert;
        }
    }
}

LocalCertificate hensel_certify(const IdealSpec& p, const EquationInstance& inst,
                                unsigned j_target, uint64_t budget) {
    const FieldSpec& k = *inst.k;
    if (k.m != 1) throw SchemaError("hensel certification is implemented for m = 1");
    if (p.k != &k) throw SchemaError("prime over wrong field");
    Int pr = p.norm;
    if (mpz_probab_prime_p(pr.get_mpz_t(), 30) == 0) throw SchemaError("ideal is not prime");

    Int q0 = inst.modulus.basis.at(0, 0);
    unsigned v = val_p(q0, pr, 64);
    std::vector<Int> res;
    for (const auto& rc : inst.residues) res.push_back(rc[0]);
    return hensel_certify_poly(inst.form->F0star[0], pr, std::max(j_target, v + 1), res, v,
                               budget);
}

bool replay_hensel(const LocalCertificate& c, const MPoly<Rat>& F) {
    if (!c.found) return false;
    if (c.witness.size() != F.nvars) return false;
    if (c.j < 2 * c.deriv_val + 1) return false;
    Int pj = int_pow(c.p, c.j);
    std::vector<Int> w(F.nvars);
    for (std::size_t i = 0; i < F.nvars; ++i) {
        w[i] = mod_reduce(c.witness[i], pj);
        if (w[i] != c.witness[i]) return false;
    }
    if (eval_int(F, w) % pj != 0) return false;
    Int d = eval_int(F.derivative(c.deriv_index), w);
    if (val_p(d, c.p, c.deriv_val + 1) != c.deriv_val) return false;
    if (c.residue_depth > 0) {
        Int pv = int_pow(c.p, c.residue_depth);
        for (std::size_t i = 0; i < F.nvars; ++i)
            if (mod_reduce(w[i] - c.residue[i], pv) != 0) return false;
    }
    return true;
}

bool replay_hensel(const LocalCertificate& c, const EquationInstance& inst) {
    if (inst.k->m != 1) return false;
    return replay_hensel(c, inst.form->F0star[0]);
}

std::vector<RealPlaceCertificate> real_place_certify(const EquationInstance& inst, double tol,
                                                     double margin) {
    const std::size_t m = inst.m();
    const std::size_t nvars = inst.slots() * m;
    std::vector<RealPlaceCertificate> out;
    for (std::size_t l = 0; l < m; ++l) {
        const MPoly<Rat>& Fl = inst.form->F0star[l];
        RealPlaceCertificate c;
        c.place = l;
        c.tol = tol;
        c.margin = margin;
        c.value = DblPoly::compile(Fl).eval(inst.box.center.data());
        double g2 = 0;
        for (std::size_t vvar = 0; vvar < nvars; ++vvar) {
            double gv = DblPoly::compile(Fl.derivative(vvar)).eval(inst.box.center.data());
            g2 += gv * gv;
        }
        c.grad_norm = std::sqrt(g2);
        c.ok = std::fabs(c.value) < tol && c.grad_norm > margin;
        out.push_back(c);
    }
    return out;
}

}  // namespace nfc
