#pragma once

// The decision procedure for logarithmic good reduction of genus-1 curves,
// together with the numeric criterion m = mu and its sanity gates.

#include <optional>
#include <string>

#include "logred/error.hpp"

namespace logred {

enum class JacobianReduction { Good, Multiplicative, Additive };

struct Genus1Input {
  long long p = 2;
  long long period = 1;  // order in H^1(K, Jac C); equals the index here
  bool h1_tame = false;  // Galois action on H^1 is tamely ramified
  JacobianReduction jacobian_reduction = JacobianReduction::Good;
  std::optional<bool> coh_flat;
  std::optional<long long> mu;  // order of O(D)|_E in Pic E
  std::optional<bool> supersingular;
};

struct NumericCriterion {
  long long m = 1;   // gcd of the multiplicities
  long long mu = 1;  // Pic-order of O(D) restricted to the reduced fibre
  long long p = 2;
};

struct Genus1Verdict {
  bool log_good_reduction = false;
  std::string reason;
};

struct GateResult {
  bool ok = true;
  std::string message;
};

// ok iff mu | m and m/mu is a power of p (p^0 allowed).
GateResult validate_numeric(const NumericCriterion& c);

// The model is log smooth at some point iff m == mu; requires the numeric
// gate to pass.
bool somewhere_log_smooth(const NumericCriterion& c);

// Full decision: tame H^1, and in the wild-period case good Jacobian
// reduction plus cohomological flatness (coh_flat, or period == mu).
Genus1Verdict decide(const Genus1Input& input);

// The m = mu case forces the reduced fibre to be ordinary; a supersingular
// curve with period == mu is inconsistent input.
GateResult ordinarity_gate(const Genus1Input& input);

// Tameness is automatic for p >= 5 when the Jacobian has good or
// multiplicative reduction.
bool h1_tame_automatic(long long p, JacobianReduction reduction);

}  // namespace logred
