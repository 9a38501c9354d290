#include "nfcircle/algebra_point.hpp"

#include <cmath>

#include "nfcircle/util.hpp"

namespace nfc {

AlgebraPoint point_from_coords(const FieldSpec& k, std::vector<double> coords) {
    if (coords.size() != k.m) throw SchemaError("coordinate length mismatch");
    AlgebraPoint p;
    p.k = &k;
    p.coords = std::move(coords);
    p.real_comp.resize(k.n1);
    p.cplx_comp.resize(k.n2);
    for (std::size_t pl = 0; pl < k.n1; ++pl) {
        double s = 0;
        for (std::size_t j = 0; j < k.m; ++j) s += p.coords[j] * k.sigma(pl, j).real();
        p.real_comp[pl] = s;
    }
    for (std::size_t pl = 0; pl < k.n2; ++pl) {
        std::complex<double> s(0, 0);
        for (std::size_t j = 0; j < k.m; ++j) s += p.coords[j] * k.sigma(k.n1 + pl, j);
        p.cplx_comp[pl] = s;
    }
    return p;
}

AlgebraPoint embed(const FieldElement& u) {
    std::vector<double> coords(u.c.size());
    for (std::size_t j = 0; j < u.c.size(); ++j) coords[j] = u.c[j].get_d();
    return point_from_coords(*u.k, std::move(coords));
}

ArchInvariants archimedean_invariants(const AlgebraPoint& x) {
    ArchInvariants inv;
    double tr = 0;
    double nm = 1;
    for (double r : x.real_comp) {
        tr += r;
        nm *= r;
    }
    for (const auto& z : x.cplx_comp) {
        tr += 2 * z.real();
        nm *= std::norm(z);
    }
    inv.trace = tr;
    inv.norm_signed = nm;
    inv.norm = std::fabs(nm);
    double h = 0;
    for (double c : x.coords) h = std::max(h, std::fabs(c));
    inv.height = h;
    return inv;
}

ArchConstants arch_constants(const FieldSpec& k) {
    ArchConstants out;
    // per-place row sums of |sigma_i(omega_j)|
    std::vector<double> rowsum(k.places(), 0.0);
    for (std::size_t p = 0; p < k.places(); ++p)
        for (std::size_t j = 0; j < k.m; ++j) rowsum[p] += std::abs(k.sigma(p, j));
    double c = 0;
    for (double s : rowsum) c = std::max(c, s);
    out.c = c;
    // |(vw)_l| <= (sum_{ij} |t(i,j,l)|) |v||w|, exact from the table
    double c1 = 0;
    for (std::size_t l = 0; l < k.m; ++l) {
        Rat s(0);
        for (std::size_t i = 0; i < k.m; ++i)
            for (std::size_t j = 0; j < k.m; ++j) s += abs(k.t(i, j, l));
        c1 = std::max(c1, s.get_d());
    }
    out.C1 = std::max(c1, 1.0);
    // |Nm(v)| = prod |pi(v)|^(1 or 2) <= prod rowsum^(1 or 2) * |v|^m
    double c2 = 1;
    for (std::size_t p = 0; p < k.n1; ++p) c2 *= rowsum[p];
    for (std::size_t p = k.n1; p < k.places(); ++p) c2 *= rowsum[p] * rowsum[p];
    out.C2 = std::max(c2, 1.0);
    return out;
}

double trace_pairing(const FieldSpec& k, const std::vector<double>& x,
                     const std::vector<Int>& y) {
    // (G y) computed exactly, then dotted with the real vector x
    double s = 0;
    for (std::size_t i = 0; i < k.m; ++i) {
        Rat gi(0);
        for (std::size_t j = 0; j < k.m; ++j)
            if (y[j] != 0) gi += k.trace_form[i * k.m + j] * Rat(y[j]);
        if (gi != 0) s += x[i] * gi.get_d();
    }
    return s;
}

}  // namespace nfc
