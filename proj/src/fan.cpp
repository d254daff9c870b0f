#include "logred/fan.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace logred {

const FanPoint* KatoFan::find(const std::string& id) const {
  for (const auto& pt : points)
    if (pt.id == id) return &pt;
  return nullptr;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_valid_fan(const KatoFan& fan) {
  std::map<std::string, const FanPoint*> by_id;
  const FanPoint* generic = nullptr;
  for (const auto& pt : fan.points) {
    if (!by_id.emplace(pt.id, &pt).second)
      fail(ErrorCode::InvalidFan, "duplicate point id '" + pt.id + "'");
    if (pt.codim < 0)
      fail(ErrorCode::InvalidFan, "negative codimension at '" + pt.id + "'");
    if (pt.msharp < 1)
      fail(ErrorCode::InvalidFan, "msharp must be >= 1 at '" + pt.id + "'");
    if (pt.codim == 0) {
      if (generic)
        fail(ErrorCode::InvalidFan, "more than one generic point");
      if (pt.msharp != 1)
        fail(ErrorCode::InvalidFan, "generic point must have msharp = 1");
      generic = &pt;
    }
  }
  if (!generic) fail(ErrorCode::InvalidFan, "no generic point (codim 0)");

  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [a, b] : fan.specializations) {
    auto pa = by_id.find(a), pb = by_id.find(b);
    if (pa == by_id.end() || pb == by_id.end())
      fail(ErrorCode::InvalidFan, "specialization references unknown id");
    if (pa->second->codim >= pb->second->codim)
      fail(ErrorCode::InvalidFan,
           "specialization " + a + " ~> " + b + " does not increase codim");
    succ[a].push_back(b);
  }

  // every non-generic point reachable from the generic point
  std::set<std::string> seen{generic->id};
  std::deque<std::string> queue{generic->id};
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    for (const auto& nxt : succ[cur])
      if (seen.insert(nxt).second) queue.push_back(nxt);
  }
  for (const auto& pt : fan.points)
    if (!seen.count(pt.id))
      fail(ErrorCode::InvalidFan,
           "point '" + pt.id + "' not reachable from the generic point");
}

LocusPartition classify(const KatoFan& fan, long long p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArg, "p must be prime");
  require_valid_fan(fan);
  LocusPartition out;
  for (const auto& pt : fan.points) {
    if (pt.msharp % p == 0)
      out.p_locus.insert(pt.id);
    else
      out.pprime_locus.insert(pt.id);
  }
  return out;
}

std::vector<FanViolation> validate_fan(const KatoFan& fan, long long p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArg, "p must be prime");
  std::vector<FanViolation> out;

  try {
    require_valid_fan(fan);
  } catch (const Error& e) {
    out.push_back({"", e.what()});
    return out;
  }

  // closedness of the p'-locus: if q is in the p-locus and p ~> q, then p is
  // in the p-locus too
  for (const auto& [a, b] : fan.specializations) {
    const FanPoint* pa = fan.find(a);
    const FanPoint* pb = fan.find(b);
    if (pa->codim > 0 && pb->msharp % p == 0 && pa->msharp % p != 0)
      out.push_back(
          {a, "specialization " + a + " ~> " + b +
                  ": target multiplicity divisible by p but source is not "
                  "(p'-locus fails to be closed)"});
  }

  // chart recomputation
  for (const auto& pt : fan.points) {
    if (!pt.chart) continue;
    try {
      long long recomputed = chart_msharp(*pt.chart);
      if (pt.codim > 0 && recomputed == 1) {
        SharpQuotient q = localize_sharpen(pt.chart->monoid, pt.chart->face,
                                           pt.chart->v1);
        if (is_zero_vec(q.image))
          out.push_back({pt.id,
                         "chart at '" + pt.id +
                             "': image of v1 vanishes at a non-generic point"});
      }
      if (recomputed != pt.msharp)
        out.push_back({pt.id, "chart at '" + pt.id + "': declared msharp " +
                                  std::to_string(pt.msharp) +
                                  " but recomputed " +
                                  std::to_string(recomputed)});
    } catch (const Error& e) {
      out.push_back({pt.id, "chart at '" + pt.id + "': " + e.what()});
    }
  }
  return out;
}

long long chart_msharp(const Chart& chart, std::int64_t budget) {
  SharpQuotient q = localize_sharpen(chart.monoid, chart.face, chart.v1,
                                     budget);
  if (is_zero_vec(q.image)) return 1;  // generic-type stratum
  Int m = max_divisibility(q.quotient, q.image, budget);
  if (!m.fits_slong_p())
    fail(ErrorCode::Internal, "multiplicity does not fit a machine integer");
  return m.get_si();
}

SmoothnessVerdict chart_log_smooth(const Chart& chart, long long p,
                                   std::int64_t budget) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArg, "p must be prime");
  if (chart.v1.size() != chart.monoid.ambient_dim())
    fail(ErrorCode::InvalidChart, "v1 has wrong ambient dimension");

  long long msharp = chart_msharp(chart, budget);
  if (msharp % p != 0)
    return {Smoothness::Smooth,
            "point lies in the p'-locus (msharp = " + std::to_string(msharp) +
                " is prime to p)"};

  if (!chart.etale_marked)
    return {Smoothness::Unknown,
            "p-locus point; smoothness is the vanishing locus of a "
            "logarithmic 1-form, not determined by combinatorics alone"};

  if (is_zero_vec(chart.v1))
    fail(ErrorCode::InvalidChart, "v1 must be nonzero on the p-locus");
  Int c = *content(chart.v1, chart.monoid.lattice());
  bool divisible = mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
  bool torsion = torsion_has_p(chart.v1, chart.monoid.lattice(), p);
  if (divisible != torsion)
    fail(ErrorCode::Internal, "content and torsion routes disagree");
  if (divisible)
    return {Smoothness::NotSmooth,
            "v1 is divisible by p in the group envelope (cokernel has "
            "p-torsion)"};
  return {Smoothness::Smooth,
          "cokernel of the chart map has no p-torsion"};
}

bool torsion_has_p(const Vec& v1, const Lattice& L, long long p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArg, "p must be prime");
  if (is_zero_vec(v1))
    fail(ErrorCode::InvalidArg, "torsion test requires v1 != 0");

  // route 1: p divides the lattice content of v1
  Int c = *content(v1, L);
  bool via_content = mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(p)) != 0;

  // route 2: Smith normal form of the inclusion <v1> -> L; the torsion of
  // the cokernel is Z/d for the single elementary divisor d
  auto coords = lattice_coords(L, v1);
  if (!coords) fail(ErrorCode::InvalidArg, "v1 is not in the lattice");
  Mat column(coords->size(), Vec(1, 0));
  for (std::size_t i = 0; i < coords->size(); ++i) column[i][0] = (*coords)[i];
  SmithResult snf = smith_normal_form(column);
  bool via_snf = !snf.diagonal.empty() && snf.diagonal[0] != 0 &&
                 mpz_divisible_ui_p(snf.diagonal[0].get_mpz_t(), static_cast<unsigned long>(p)) != 0;

  if (via_content != via_snf)
    fail(ErrorCode::Internal, "content and Smith normal form routes disagree");
  return via_content;
}

}  // namespace logred
