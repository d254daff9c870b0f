#include "logred/logred.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "logred/io.hpp"

using nlohmann::json;

struct lr_model {
  logred::LogModel value;
};

struct lr_graph {
  logred::GraphInput value;
};

namespace {

thread_local std::string g_last_error;

lr_status map_code(logred::ErrorCode code) {
  using logred::ErrorCode;
  switch (code) {
    case ErrorCode::ParseError:
      return LR_ERR_PARSE;
    case ErrorCode::SchemaError:
      return LR_ERR_SCHEMA;
    case ErrorCode::SemanticError:
      return LR_ERR_SEMANTIC;
    case ErrorCode::BudgetExceeded:
      return LR_ERR_BUDGET_EXCEEDED;
    case ErrorCode::NotApplicable:
      return LR_ERR_NOT_APPLICABLE;
    case ErrorCode::MissingData:
      return LR_ERR_MISSING_DATA;
    case ErrorCode::Inconsistent:
      return LR_ERR_INCONSISTENT;
    case ErrorCode::NotContractible:
      return LR_ERR_NOT_CONTRACTIBLE;
    case ErrorCode::UnsupportedType:
      return LR_ERR_UNSUPPORTED_TYPE;
    case ErrorCode::Internal:
      return LR_ERR_INTERNAL;
    case ErrorCode::InvalidArg:
    case ErrorCode::InvalidFace:
    case ErrorCode::InvalidChart:
    case ErrorCode::InvalidFan:
    case ErrorCode::InvalidModel:
    case ErrorCode::InvalidGraph:
      return LR_ERR_INVALID_ARG;
  }
  return LR_ERR_INTERNAL;
}

template <typename Fn>
lr_status guarded(Fn&& fn) {
  try {
    fn();
    return LR_OK;
  } catch (const logred::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LR_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json violations_to_json(const std::vector<logred::ModelViolation>& vs) {
  json arr = json::array();
  for (const auto& v : vs)
    arr.push_back({{"point", v.point_id}, {"message", v.message}});
  return arr;
}

json fan_violations_to_json(const std::vector<logred::FanViolation>& vs) {
  json arr = json::array();
  for (const auto& v : vs)
    arr.push_back({{"point", v.point_id}, {"message", v.message}});
  return arr;
}

json zeta_to_json(const logred::ZetaFunction& zeta) {
  json factors = json::array();
  for (const auto& [order, exp] : zeta.factors())
    factors.push_back(json::array({order, exp}));
  return {{"factors", std::move(factors)},
          {"string", zeta.to_string()},
          {"degree", zeta.degree()}};
}

}  // namespace

extern "C" {

const char* lr_version(void) { return "logred 1.0.0"; }

const char* lr_last_error(void) { return g_last_error.c_str(); }

void lr_string_free(char* s) { delete[] s; }

lr_status lr_detect_kind(const char* text, char** out_kind) {
  return guarded([&] {
    if (!text || !out_kind)
      logred::fail(logred::ErrorCode::InvalidArg, "null argument");
    *out_kind = dup_string(logred::detect_file_kind(text));
  });
}

lr_status lr_model_parse(const char* text, lr_model** out) {
  return guarded([&] {
    if (!text || !out)
      logred::fail(logred::ErrorCode::InvalidArg, "null argument");
    *out = new lr_model{logred::parse_model(text)};
  });
}

void lr_model_free(lr_model* m) { delete m; }

lr_status lr_model_render(const lr_model* m, char** out_json) {
  return guarded([&] {
    *out_json = dup_string(logred::render_model(m->value));
  });
}

lr_status lr_model_validate(const lr_model* m, char** out_json) {
  return guarded([&] {
    const logred::LogModel& model = m->value;
    json doc;
    json violations = fan_violations_to_json(
        logred::validate_fan(model.fan, model.p));
    if (model.log_smooth_claimed) {
      for (const auto& v : logred::check_prop_vanishing(model))
        violations.push_back({{"point", v.point_id}, {"message", v.message}});
      logred::Theorem1Report report = logred::theorem1_verdict(model);
      doc["theorem1"] = {{"chi_tame", report.chi_tame},
                         {"tame_point", report.tame_point},
                         {"consistent", report.consistent},
                         {"note", report.note}};
      if (!report.consistent)
        violations.push_back({{"point", ""}, {"message", report.note}});
    }
    doc["violations"] = std::move(violations);
    doc["valid"] = doc["violations"].empty();
    *out_json = dup_string(doc.dump());
  });
}

lr_status lr_model_classify(const lr_model* m, char** out_json) {
  return guarded([&] {
    logred::LocusPartition loci =
        logred::classify(m->value.fan, m->value.p);
    json doc;
    doc["p_locus"] = json(loci.p_locus);
    doc["pprime_locus"] = json(loci.pprime_locus);
    *out_json = dup_string(doc.dump());
  });
}

lr_status lr_model_zeta(const lr_model* m, char** out_json) {
  return guarded([&] {
    *out_json = dup_string(zeta_to_json(logred::tame_zeta(m->value)).dump());
  });
}

lr_status lr_model_euler(const lr_model* m, long long* out) {
  return guarded([&] { *out = logred::tame_euler(m->value); });
}

lr_status lr_model_tame_point(const lr_model* m, int* out) {
  return guarded([&] { *out = logred::tame_point_exists(m->value) ? 1 : 0; });
}

lr_status lr_model_check_vanishing(const lr_model* m, char** out_json) {
  return guarded([&] {
    json doc;
    doc["violations"] = violations_to_json(
        logred::check_prop_vanishing(m->value));
    doc["pass"] = doc["violations"].empty();
    *out_json = dup_string(doc.dump());
  });
}

lr_status lr_model_restrictions(const lr_model* m, char** out_json) {
  return guarded([&] {
    json doc;
    doc["violations"] = violations_to_json(
        logred::check_degeneration_restrictions(m->value));
    doc["pass"] = doc["violations"].empty();
    *out_json = dup_string(doc.dump());
  });
}

lr_status lr_model_check_smooth(const lr_model* m, char** out_json) {
  return guarded([&] {
    json verdicts = json::array();
    for (const auto& pt : m->value.fan.points) {
      json entry;
      entry["point"] = pt.id;
      if (pt.codim == 0) {
        entry["verdict"] = "SMOOTH";
        entry["reason"] = "generic point";
      } else if (pt.msharp % m->value.p != 0) {
        entry["verdict"] = "SMOOTH";
        entry["reason"] = "point lies in the p'-locus";
      } else if (pt.chart) {
        logred::SmoothnessVerdict v =
            logred::chart_log_smooth(*pt.chart, m->value.p);
        entry["verdict"] = v.kind == logred::Smoothness::Smooth ? "SMOOTH"
                           : v.kind == logred::Smoothness::NotSmooth
                               ? "NOT_SMOOTH"
                               : "UNKNOWN";
        entry["reason"] = v.reason;
      } else {
        entry["verdict"] = "UNKNOWN";
        entry["reason"] =
            "p-locus point without a chart; smoothness is the vanishing "
            "locus of a logarithmic 1-form, not determined by combinatorics "
            "alone";
      }
      verdicts.push_back(std::move(entry));
    }
    json doc;
    doc["verdicts"] = std::move(verdicts);
    *out_json = dup_string(doc.dump());
  });
}

lr_status lr_graph_parse(const char* text, lr_graph** out) {
  return guarded([&] {
    if (!text || !out)
      logred::fail(logred::ErrorCode::InvalidArg, "null argument");
    *out = new lr_graph{logred::parse_graph(text)};
  });
}

void lr_graph_free(lr_graph* g) { delete g; }

lr_status lr_graph_render(const lr_graph* g, char** out_json) {
  return guarded([&] {
    *out_json = dup_string(logred::render_graph(g->value));
  });
}

lr_status lr_graph_to_dot(const lr_graph* g, char** out) {
  return guarded([&] { *out = dup_string(logred::to_dot(g->value.graph)); });
}

lr_status lr_graph_saito(const lr_graph* g, char** out_json) {
  return guarded([&] {
    logred::SaitoVerdict verdict =
        logred::saito_check(g->value.graph, g->value.p);
    json failures = json::array();
    for (const auto& f : verdict.failures)
      failures.push_back({{"vertex", f.vertex_id}, {"reason", f.reason}});
    json doc;
    doc["pass"] = verdict.pass;
    doc["failures"] = std::move(failures);
    *out_json = dup_string(doc.dump());
  });
}

lr_status lr_graph_scale(const lr_graph* g, long long m, lr_graph** out) {
  return guarded([&] {
    *out = new lr_graph{{logred::scale(g->value.graph, m), g->value.p}};
  });
}

lr_status lr_graph_contract(const lr_graph* g, const char* vertex_id,
                            lr_graph** out, int* smoothness_preserved) {
  return guarded([&] {
    if (!vertex_id)
      logred::fail(logred::ErrorCode::InvalidArg, "null vertex id");
    logred::ContractResult result =
        logred::contract(g->value.graph, vertex_id, g->value.p);
    *out = new lr_graph{{std::move(result.graph), g->value.p}};
    if (smoothness_preserved)
      *smoothness_preserved = result.smoothness_preserved ? 1 : 0;
  });
}

lr_status lr_graph_contract_all(const lr_graph* g, lr_graph** out,
                                char** out_report_json) {
  return guarded([&] {
    logred::DualGraph current = g->value.graph;
    json steps = json::array();
    bool preserved = true;
    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& v : current.vertices) {
        try {
          logred::ContractResult result =
              logred::contract(current, v.id, g->value.p);
          steps.push_back(
              {{"vertex", v.id},
               {"smoothness_preserved", result.smoothness_preserved}});
          preserved = preserved && result.smoothness_preserved;
          current = std::move(result.graph);
          progress = true;
          break;
        } catch (const logred::Error& e) {
          if (e.code() != logred::ErrorCode::NotContractible) throw;
        }
      }
    }
    *out = new lr_graph{{std::move(current), g->value.p}};
    if (out_report_json) {
      json doc;
      doc["contracted"] = std::move(steps);
      doc["smoothness_preserved"] = preserved;
      *out_report_json = dup_string(doc.dump());
    }
  });
}

lr_status lr_graph_strata_model(const lr_graph* g, int log_smooth_claimed,
                                lr_model** out) {
  return guarded([&] {
    *out = new lr_model{logred::strata_model(g->value.graph, g->value.p,
                                             log_smooth_claimed != 0)};
  });
}

lr_status lr_kodaira(const char* symbol, long long n, long long p,
                     lr_graph** out) {
  return guarded([&] {
    if (!symbol) logred::fail(logred::ErrorCode::InvalidArg, "null symbol");
    if (!logred::is_prime(p))
      logred::fail(logred::ErrorCode::InvalidArg, "p must be prime");
    *out = new lr_graph{{logred::kodaira({symbol, n}), p}};
  });
}

lr_status lr_genus1_decide(const char* params_json, char** out_json) {
  return guarded([&] {
    if (!params_json)
      logred::fail(logred::ErrorCode::InvalidArg, "null parameters");
    logred::Genus1Input input = logred::parse_genus1_params(params_json);
    logred::Genus1Verdict verdict = logred::decide(input);
    json doc;
    doc["log_good_reduction"] = verdict.log_good_reduction;
    doc["reason"] = verdict.reason;
    if (input.mu && input.supersingular &&
        input.period % input.p == 0 &&
        input.jacobian_reduction == logred::JacobianReduction::Good) {
      logred::GateResult gate = logred::ordinarity_gate(input);
      doc["ordinarity"] = {{"ok", gate.ok}, {"message", gate.message}};
    }
    *out_json = dup_string(doc.dump());
  });
}

}  // extern "C"
