#include "logred/genus1.hpp"

#include "logred/fan.hpp"

namespace logred {

GateResult validate_numeric(const NumericCriterion& c) {
  if (c.m < 1 || c.mu < 1)
    fail(ErrorCode::InvalidArg, "m and mu must be >= 1");
  if (!is_prime(c.p)) fail(ErrorCode::InvalidArg, "p must be prime");
  if (c.m % c.mu != 0)
    return {false, "mu = " + std::to_string(c.mu) + " does not divide m = " +
                       std::to_string(c.m)};
  long long ratio = c.m / c.mu;
  while (ratio % c.p == 0) ratio /= c.p;
  if (ratio != 1)
    return {false, "m/mu = " + std::to_string(c.m / c.mu) +
                       " is not a power of p = " + std::to_string(c.p)};
  return {true, ""};
}

bool somewhere_log_smooth(const NumericCriterion& c) {
  GateResult gate = validate_numeric(c);
  if (!gate.ok) fail(ErrorCode::InvalidArg, "numeric gate: " + gate.message);
  return c.m == c.mu;
}

bool h1_tame_automatic(long long p, JacobianReduction reduction) {
  return p >= 5 && reduction != JacobianReduction::Additive;
}

namespace {

void check_input(const Genus1Input& in) {
  if (!is_prime(in.p)) fail(ErrorCode::InvalidArg, "p must be prime");
  if (in.period < 1) fail(ErrorCode::InvalidArg, "period must be >= 1");
  if (in.mu && *in.mu < 1) fail(ErrorCode::InvalidArg, "mu must be >= 1");
  if (in.coh_flat && in.mu && *in.coh_flat != (in.period == *in.mu))
    fail(ErrorCode::Inconsistent,
         "coh_flat and mu disagree: cohomological flatness is equivalent to "
         "period == mu");
}

bool cohomologically_flat(const Genus1Input& in) {
  if (in.coh_flat) return *in.coh_flat;
  if (in.mu) return in.period == *in.mu;
  fail(ErrorCode::MissingData,
       "wild period with good Jacobian reduction: either coh_flat or mu is "
       "required");
}

}  // namespace

Genus1Verdict decide(const Genus1Input& input) {
  check_input(input);

  if (!input.h1_tame)
    return {false, "condition (a) fails: the Galois action on H^1 is wildly "
                   "ramified"};

  if (input.period % input.p != 0)
    return {true, "period prime to p and tame H^1: log good reduction"};

  if (input.jacobian_reduction != JacobianReduction::Good)
    return {false, "condition (b) fails: p divides the period and the "
                   "Jacobian has bad reduction"};

  if (cohomologically_flat(input))
    return {true, "wild period with good Jacobian reduction and a "
                  "cohomologically flat minimal model (period == mu)"};
  return {false, "condition (b) fails: the minimal model is not "
                 "cohomologically flat (period != mu)"};
}

GateResult ordinarity_gate(const Genus1Input& input) {
  check_input(input);
  if (input.period % input.p != 0 ||
      input.jacobian_reduction != JacobianReduction::Good || !input.mu ||
      !input.supersingular)
    fail(ErrorCode::NotApplicable,
         "ordinarity gate requires wild period, good Jacobian reduction, mu "
         "and supersingular data");
  if (input.period == *input.mu && *input.supersingular)
    return {false,
            "period == mu forces the reduced fibre to be ordinary; a "
            "supersingular reduction cannot occur"};
  return {true, ""};
}

}  // namespace logred
