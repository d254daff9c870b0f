#include "logred/model.hpp"

#include <algorithm>

namespace logred {

void ZetaFunction::multiply_factor(long long order, long long exponent) {
  if (order < 1) fail(ErrorCode::InvalidArg, "factor order must be positive");
  if (exponent == 0) return;
  auto [it, inserted] = factors_.emplace(order, exponent);
  if (!inserted) {
    it->second += exponent;
    if (it->second == 0) factors_.erase(it);
  }
}

long long ZetaFunction::degree() const {
  long long d = 0;
  for (const auto& [order, exp] : factors_) d += order * exp;
  return d;
}

std::string ZetaFunction::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += "(t^" + std::to_string(it->first) + "-1)";
    if (it->second != 1) out += "^" + std::to_string(it->second);
  }
  return out;
}

void require_valid_model(const LogModel& model) {
  if (!is_prime(model.p)) fail(ErrorCode::InvalidModel, "p must be prime");
  try {
    require_valid_fan(model.fan);
  } catch (const Error& e) {
    fail(ErrorCode::InvalidModel, e.what());
  }

  std::map<std::string, bool> has_deeper;
  for (const auto& [a, b] : model.fan.specializations) has_deeper[a] = true;

  for (const auto& pt : model.fan.points) {
    auto it = model.strata.find(pt.id);
    if (it == model.strata.end())
      fail(ErrorCode::InvalidModel, "missing stratum data for '" + pt.id + "'");
    const StratumData& st = it->second;
    if (st.dim_closed < 0)
      fail(ErrorCode::InvalidModel, "negative dimension at '" + pt.id + "'");
    if (st.genus && *st.genus < 0)
      fail(ErrorCode::InvalidModel, "negative genus at '" + pt.id + "'");
    if (pt.codim > 0 && st.dim_closed == 0 && st.chi_open != 1)
      fail(ErrorCode::InvalidModel,
           "zero-dimensional stratum '" + pt.id + "' must have chi = 1");
    if (pt.codim > 0 && st.dim_closed == 1 && st.genus &&
        !has_deeper.count(pt.id) && st.chi_open != 2 - 2 * *st.genus)
      fail(ErrorCode::InvalidModel,
           "boundaryless curve stratum '" + pt.id +
               "' must have chi = 2 - 2*genus");
  }
  if (model.strata.size() != model.fan.points.size())
    fail(ErrorCode::InvalidModel, "stratum data for unknown point id");
}

long long m_prime(long long msharp, long long p) {
  if (msharp < 1) fail(ErrorCode::InvalidArg, "msharp must be >= 1");
  while (msharp % p == 0) msharp /= p;
  return msharp;
}

ZetaFunction tame_zeta(const LogModel& model) {
  require_valid_model(model);
  ZetaFunction zeta;
  for (const auto& pt : model.fan.points) {
    if (pt.codim != 1) continue;
    long long chi = model.strata.at(pt.id).chi_open;
    zeta.multiply_factor(m_prime(pt.msharp, model.p), -chi);
  }
  return zeta;
}

long long tame_euler(const LogModel& model) {
  require_valid_model(model);
  long long sum = 0;
  for (const auto& pt : model.fan.points) {
    if (pt.codim != 1) continue;
    sum += m_prime(pt.msharp, model.p) * model.strata.at(pt.id).chi_open;
  }
  if (sum != -tame_zeta(model).degree())
    fail(ErrorCode::Internal, "degree identity between zeta and euler broke");
  return sum;
}

bool tame_point_exists(const LogModel& model) {
  require_valid_model(model);
  LocusPartition loci = classify(model.fan, model.p);
  for (const auto& pt : model.fan.points)
    if (pt.codim > 0 && loci.pprime_locus.count(pt.id)) return true;
  return false;
}

std::vector<ModelViolation> check_prop_vanishing(const LogModel& model) {
  require_valid_model(model);
  if (!model.log_smooth_claimed)
    fail(ErrorCode::NotApplicable,
         "vanishing check applies only to models claimed log smooth");
  std::vector<ModelViolation> out;
  LocusPartition loci = classify(model.fan, model.p);
  long long total = 0;
  for (const auto& pt : model.fan.points) {
    if (!loci.p_locus.count(pt.id)) continue;
    long long chi = model.strata.at(pt.id).chi_open;
    total += chi;
    if (chi != 0)
      out.push_back({pt.id, "p-locus stratum '" + pt.id +
                                "' has chi = " + std::to_string(chi) +
                                " but a log smooth model forces chi = 0"});
  }
  if (total != 0)
    out.push_back({"", "total chi of the p-locus is " + std::to_string(total) +
                           ", expected 0"});
  return out;
}

std::vector<ModelViolation> check_degeneration_restrictions(
    const LogModel& model) {
  require_valid_model(model);
  if (!model.log_smooth_claimed)
    fail(ErrorCode::NotApplicable,
         "degeneration restrictions apply only to models claimed log smooth");
  if (tame_point_exists(model))
    fail(ErrorCode::NotApplicable,
         "degeneration restrictions apply only when no tame point exists");

  std::vector<ModelViolation> out;
  for (const auto& pt : model.fan.points) {
    if (pt.codim == 0) continue;
    const StratumData& st = model.strata.at(pt.id);
    if (st.dim_closed == 0)
      out.push_back({pt.id, "closed stratum '" + pt.id +
                                "' is zero-dimensional, which is impossible "
                                "without tame points"});
    else if (st.dim_closed == 1 && st.genus && *st.genus != 1)
      out.push_back({pt.id, "one-dimensional closed stratum '" + pt.id +
                                "' has genus " + std::to_string(*st.genus) +
                                ", must be a curve of genus 1"});
    else if (st.dim_closed == 2)
      out.push_back({pt.id, "advisory: two-dimensional closed stratum '" +
                                pt.id +
                                "' must not be of general type (not checkable "
                                "from this data)"});
  }
  return out;
}

Theorem1Report theorem1_verdict(const LogModel& model) {
  require_valid_model(model);
  if (!model.log_smooth_claimed)
    fail(ErrorCode::NotApplicable,
         "the tame-point implication requires a log smooth model");
  Theorem1Report report;
  report.chi_tame = tame_euler(model);
  report.tame_point = tame_point_exists(model);
  if (report.chi_tame == 0) {
    report.consistent = true;
    report.note = "tame Euler characteristic vanishes; no implication";
  } else if (report.tame_point) {
    report.consistent = true;
    report.note = "nonzero tame Euler characteristic and a tame point exists";
  } else {
    report.consistent = false;
    report.note =
        "INCONSISTENT_INPUT: nonzero tame Euler characteristic but no tame "
        "point; such data cannot come from a log smooth model";
  }
  return report;
}

}  // namespace logred
