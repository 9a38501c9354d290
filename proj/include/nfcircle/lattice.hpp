#pragma once

#include "nfcircle/instance.hpp"

namespace nfc {

/// Integral elements of the congruence class (residue + ideal lattice)
/// inside the dilated 1-factor box |x - P*center| < P*rho, in lexicographic
/// lattice-coordinate order. Returns omega-coordinate vectors.
std::vector<std::vector<Int>> enumerate_congruence_class(const IdealSpec& ideal,
                                                         const std::vector<Int>& residue,
                                                         const std::vector<double>& center,
                                                         double rho, double P);

/// Per-slot point lists for an instance at dilation P, int64 coordinates,
/// flattened row-major (count x m).
struct SlotPoints {
    std::size_t m = 0;
    std::size_t count = 0;
    std::vector<int64_t> flat;

    const int64_t* point(std::size_t i) const { return flat.data() + i * m; }
};

SlotPoints slot_points(const EquationInstance& inst, double P, std::size_t slot);

/// Exact values of the three form blocks over their enumerations: for every
/// x-block tuple the m coordinates of a*N(x), likewise b*N(y) and z^n.
/// Values are int64 with a precomputed overflow certificate; throws
/// BudgetExceeded when coordinates or values cannot be certified into int64.
struct BlockValues {
    std::size_t m = 0;
    uint64_t count = 0;            // number of tuples
    std::vector<int64_t> values;   // count x m
    std::vector<uint32_t> tuple;   // count x (block slot arity), point indices
    std::size_t arity = 0;
};

struct CountOptions {
    uint64_t budget_points = 2'000'000'000ULL;
    unsigned jobs = 1;
    bool collect_witnesses = false;
    std::size_t witness_cap = 16;
};

BlockValues block_values(const EquationInstance& inst, double P, int which /*0=x,1=y,2=z*/,
                         const std::vector<SlotPoints>& slots, uint64_t budget);

/// Meet-in-the-middle count of solutions in the dilated box with the
/// congruence conditions. Exact; throws BudgetExceeded instead of returning
/// a partial count.
CountRow count_solutions(const EquationInstance& inst, double P, const CountOptions& opts,
                         std::vector<Witness>* witnesses = nullptr);

/// Plain nested-loop oracle, exact arithmetic; only for desk-scale boxes.
Int naive_count(const EquationInstance& inst, double P, uint64_t budget);

struct PlaceDistance {
    std::size_t slot = 0;
    std::size_t place = 0;
    double distance = 0;  // |pi(x) - P * pi(target)|
    double bound = 0;     // P * eta
};

struct WitnessCertificate {
    bool found = false;
    double P = 0;
    std::vector<std::vector<Int>> slot_coords;
    bool equation_exact = false;
    bool congruence_ok = false;
    std::vector<PlaceDistance> distances;  // all must satisfy distance < bound
    std::vector<double> P_tried;
};

/// Main-Lemma search: walk the P schedule, look for an exact solution in the
/// box satisfying the congruences, certify the archimedean distances.
WitnessCertificate weak_approx_search(const EquationInstance& inst,
                                      const std::vector<double>& schedule,
                                      const CountOptions& opts);

/// Re-check a certificate from scratch (exact equation, congruences,
/// archimedean distances). Used by `verify-cert`.
bool replay_witness(const EquationInstance& inst, WitnessCertificate& cert);

}  // namespace nfc
