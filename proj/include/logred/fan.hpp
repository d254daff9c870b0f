#pragma once

// Kato fans: finite specialization posets of stratum points carrying sharp
// monoid data, p-locus / p'-locus classification, and chart-level
// log-smoothness verdicts.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "logred/monoid.hpp"

namespace logred {

struct Chart {
  AffineMonoid monoid;  // the chart monoid P
  Vec v1;               // element mapping to the uniformizer
  Face face;            // face of P at the stratum's point
  bool etale_marked = false;
};

struct FanPoint {
  std::string id;
  int codim = 0;  // 0 = generic point
  long long msharp = 1;
  std::optional<Chart> chart;
};

struct KatoFan {
  std::vector<FanPoint> points;
  // (p, q) means q lies in the closure of the stratum of p; codim increases.
  std::vector<std::pair<std::string, std::string>> specializations;

  const FanPoint* find(const std::string& id) const;
};

struct LocusPartition {
  std::set<std::string> p_locus;
  std::set<std::string> pprime_locus;
};

enum class Smoothness { Smooth, NotSmooth, Unknown };

struct SmoothnessVerdict {
  Smoothness kind;
  std::string reason;
};

struct FanViolation {
  std::string point_id;  // primary point involved (may be empty)
  std::string message;
};

bool is_prime(long long n);

// Structural fan checks that do not depend on p.
void require_valid_fan(const KatoFan& fan);

// p-locus: points whose msharp is divisible by p.
LocusPartition classify(const KatoFan& fan, long long p);

// Reports poset violations, specialization pairs breaking the closedness of
// the p'-locus, and charts whose recomputed msharp disagrees with the
// declared value. Violations are data, not errors.
std::vector<FanViolation> validate_fan(const KatoFan& fan, long long p);

// Multiplicity declared by a chart: max_divisibility of the image of v1 in
// the localized-and-sharpened monoid (1 when the image is zero).
long long chart_msharp(const Chart& chart,
                       std::int64_t budget = kDefaultMemberBudget);

SmoothnessVerdict chart_log_smooth(const Chart& chart, long long p,
                                   std::int64_t budget = kDefaultMemberBudget);

// Does the torsion of L/<v1> contain an element of order p?  Computed both
// as p | content(v1, L) and through the Smith normal form of the inclusion;
// the two routes must agree.
bool torsion_has_p(const Vec& v1, const Lattice& L, long long p);

}  // namespace logred
