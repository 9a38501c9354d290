#pragma once

#include <complex>
#include <vector>

#include "nfcircle/field.hpp"

namespace nfc {

/// A point of V = k tensor R: n1 real projections, n2 complex projections,
/// plus the m real omega-coordinates (linked by the embedding matrix).
struct AlgebraPoint {
    const FieldSpec* k = nullptr;
    std::vector<double> real_comp;                // n1
    std::vector<std::complex<double>> cplx_comp;  // n2
    std::vector<double> coords;                   // m
};

struct ArchInvariants {
    double trace = 0;
    double norm = 0;         // |product|, always non-negative
    double norm_signed = 0;  // raw product of real parts x |complex|^2
    double height = 0;       // max |omega-coordinate|
};

/// Operator constants of the embedding: |pi_i(x)| <= c |x|,
/// |vw| <= C1 |v||w|, |Nm(v)| <= C2 |v|^m.
struct ArchConstants {
    double c = 1;
    double C1 = 1;
    double C2 = 1;
};

AlgebraPoint embed(const FieldElement& u);

/// Point from raw omega-coordinates (projections via the embedding rows).
AlgebraPoint point_from_coords(const FieldSpec& k, std::vector<double> coords);

ArchInvariants archimedean_invariants(const AlgebraPoint& x);

ArchConstants arch_constants(const FieldSpec& k);

/// Tr(x*y) evaluated numerically for x given by real omega-coordinates and y
/// integral: x^T G y with G the exact trace form.
double trace_pairing(const FieldSpec& k, const std::vector<double>& x,
                     const std::vector<Int>& y);

}  // namespace nfc
