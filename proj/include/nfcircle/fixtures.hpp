#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nfcircle/instance.hpp"

namespace nfc {

/// Base field specs with power bases: Q, Q(sqrt2), Q(i), Q(cbrt2).
std::shared_ptr<const FieldSpec> field_Q();
std::shared_ptr<const FieldSpec> field_Qsqrt2();
std::shared_ptr<const FieldSpec> field_Qi();
std::shared_ptr<const FieldSpec> field_Qcbrt2();

/// Built-in instances:
///   qi            Q(i)/Q, a=b=1, trivial congruence, nonsingular center
///   qi-insoluble3 Q(i)/Q with residues forcing F = 1 mod 3
///   wapprox-qi    Q(i)/Q congruence mod 3 with soluble residues, offset box
///   qcbrt2        Q(cbrt2)/Q, n = 3, center on N(x) - N(-x') = z^3
EquationInstance builtin_fixture(const std::string& name);
std::vector<std::string> builtin_fixture_names();

/// Deterministic small instance for counting cross-checks: mixes k = Q and
/// k = Q(sqrt2) bases, quadratic extensions, small coefficients and moduli.
EquationInstance random_small_instance(uint64_t seed, std::size_t index);

}  // namespace nfc
