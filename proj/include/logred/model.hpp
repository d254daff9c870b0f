#pragma once

// Proper log regular models presented as fans with stratum invariants:
// tame monodromy zeta function, tame Euler characteristic, tame-point
// existence, and the consistency checkers for log smooth degenerations.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logred/fan.hpp"

namespace logred {

struct StratumData {
  std::string point_id;
  long long chi_open = 0;  // chi(U_p)
  long long dim_closed = 0;
  std::optional<long long> genus;  // for one-dimensional closed strata
};

struct LogModel {
  KatoFan fan;
  std::map<std::string, StratumData> strata;
  long long p = 2;
  bool log_smooth_claimed = false;
};

// Formal product of factors (t^order - 1)^exponent; canonical form merges
// equal orders and drops zero exponents.
class ZetaFunction {
public:
  ZetaFunction() = default;

  void multiply_factor(long long order, long long exponent);

  const std::map<long long, long long>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  // total degree of the product, as a rational function in t
  long long degree() const;

  // e.g. "(t^2-1)^2 (t^1-1)^-4"; "1" for the empty product
  std::string to_string() const;

  bool operator==(const ZetaFunction& other) const = default;

private:
  std::map<long long, long long> factors_;
};

struct ModelViolation {
  std::string point_id;
  std::string message;
};

struct Theorem1Report {
  long long chi_tame = 0;
  bool tame_point = false;
  bool consistent = true;  // chi_tame != 0 must imply tame_point
  std::string note;
};

void require_valid_model(const LogModel& model);

// msharp with every factor of p removed.
long long m_prime(long long msharp, long long p);

// Product over codimension-1 fan points of (t^{m'} - 1)^{-chi(U)}.
ZetaFunction tame_zeta(const LogModel& model);

// Sum over codimension-1 fan points of m' * chi(U); equals the negative
// total degree of tame_zeta.
long long tame_euler(const LogModel& model);

// True iff some non-generic fan point lies in the p'-locus.
bool tame_point_exists(const LogModel& model);

// One violation per p-locus point with chi(U) != 0; requires the model to
// be claimed log smooth.
std::vector<ModelViolation> check_prop_vanishing(const LogModel& model);

// Restrictions on degenerations without tame points: no zero-dimensional
// closed strata, one-dimensional strata have genus 1; two-dimensional
// strata yield an advisory.
std::vector<ModelViolation> check_degeneration_restrictions(
    const LogModel& model);

Theorem1Report theorem1_verdict(const LogModel& model);

}  // namespace logred
