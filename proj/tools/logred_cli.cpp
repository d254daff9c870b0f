// Batch CLI for the logred library. Links only the public C API; the
// machine-readable output (--json) is a single object with sorted keys so
// identical inputs yield byte-identical output.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "logred/logred.h"

using nlohmann::json;

namespace {

struct StringDeleter {
  void operator()(char* s) const { lr_string_free(s); }
};
using CStr = std::unique_ptr<char, StringDeleter>;

struct ModelDeleter {
  void operator()(lr_model* m) const { lr_model_free(m); }
};
using ModelHandle = std::unique_ptr<lr_model, ModelDeleter>;

struct GraphDeleter {
  void operator()(lr_graph* g) const { lr_graph_free(g); }
};
using GraphHandle = std::unique_ptr<lr_graph, GraphDeleter>;

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(2);
}

void require_ok(lr_status status) {
  if (status != LR_OK) die(lr_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx",
                static_cast<unsigned long long>(h));
  return out;
}

// the machine-readable envelope; nlohmann sorts object keys on dump
void emit_json(const std::string& command, const std::string& digest,
               const json& result) {
  json doc;
  doc["command"] = command;
  doc["input_digest"] = digest;
  doc["result"] = result;
  std::cout << doc.dump() << "\n";
}

struct Input {
  std::string bytes;
  std::string digest;
  ModelHandle model;  // set when the file is (or converts to) a model
  GraphHandle graph;  // set when the file is a graph
};

Input load_input(const std::string& path) {
  Input in;
  in.bytes = read_file(path);
  in.digest = fnv1a_digest(in.bytes);
  CStr kind;
  {
    char* raw = nullptr;
    require_ok(lr_detect_kind(in.bytes.c_str(), &raw));
    kind.reset(raw);
  }
  if (std::string(kind.get()) == "model") {
    lr_model* m = nullptr;
    require_ok(lr_model_parse(in.bytes.c_str(), &m));
    in.model.reset(m);
  } else {
    lr_graph* g = nullptr;
    require_ok(lr_graph_parse(in.bytes.c_str(), &g));
    in.graph.reset(g);
  }
  return in;
}

// graphs convert to their strata model for the fan-level commands
const lr_model* as_model(Input& in, bool claim_log_smooth) {
  if (in.model) return in.model.get();
  lr_model* m = nullptr;
  require_ok(lr_graph_strata_model(in.graph.get(), claim_log_smooth ? 1 : 0,
                                   &m));
  in.model.reset(m);
  return in.model.get();
}

json call_json(lr_status status, CStr& out) {
  require_ok(status);
  return json::parse(out.get());
}

void print_violations(const json& result) {
  if (result["violations"].empty()) {
    std::cout << "no violations\n";
    return;
  }
  for (const auto& v : result["violations"])
    std::cout << "violation: " << v["message"].get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact combinatorial tests for logarithmic good reduction"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  std::string file;
  bool claim = false;
  long long scale_m = 1;
  std::string contract_vertex;
  bool contract_all = false;
  std::string kodaira_type;
  long long kodaira_n = 0;
  long long kodaira_p = 2;

  auto add_file_cmd = [&](const std::string& name, const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    cmd->add_option("file", file, "input JSON file")->required();
    return cmd;
  };

  CLI::App* cmd_validate =
      add_file_cmd("validate", "check fan, chart, and model invariants");
  CLI::App* cmd_classify =
      add_file_cmd("classify", "p-locus / p'-locus partition");
  CLI::App* cmd_zeta = add_file_cmd("zeta", "tame monodromy zeta function");
  CLI::App* cmd_euler = add_file_cmd("euler", "tame Euler characteristic");
  CLI::App* cmd_tame =
      add_file_cmd("tame-point", "does a tamely ramified point exist?");
  CLI::App* cmd_smooth =
      add_file_cmd("check-smooth", "chart-level log-smoothness verdicts");
  CLI::App* cmd_restrictions = add_file_cmd(
      "restrictions", "restrictions on degenerations without tame points");
  cmd_restrictions->add_flag("--claim-log-smooth", claim,
                             "treat a graph input as a log smooth model");
  CLI::App* cmd_saito = add_file_cmd("saito", "Saito's criterion");
  CLI::App* cmd_scale = add_file_cmd("scale", "multiply all multiplicities");
  cmd_scale->add_option("--m", scale_m, "factor")->required();
  CLI::App* cmd_contract = add_file_cmd("contract", "blow down (-1)-curves");
  cmd_contract->add_option("--vertex", contract_vertex, "vertex to contract");
  cmd_contract->add_flag("--all", contract_all,
                         "contract until nothing is contractible");

  CLI::App* cmd_kodaira =
      app.add_subcommand("kodaira", "minimal sncd dual graph of a fiber type");
  cmd_kodaira->add_option("--type", kodaira_type, "I, I*, II, III, IV, II*, "
                                                  "III*, IV*")
      ->required();
  cmd_kodaira->add_option("--n", kodaira_n, "index for I and I*");
  cmd_kodaira->add_option("--p", kodaira_p, "residue characteristic");

  CLI::App* cmd_genus1 =
      app.add_subcommand("genus1", "log good reduction of a genus-1 curve");
  long long g1_p = 0, g1_period = 0, g1_mu = 0;
  bool g1_tame = false, g1_coh_flat = false, g1_supersingular = false;
  std::string g1_jacobian;
  cmd_genus1->add_option("--p", g1_p, "residue characteristic")->required();
  cmd_genus1->add_option("--period", g1_period, "period of the curve")
      ->required();
  CLI::Option* opt_tame =
      cmd_genus1->add_option("--h1-tame", g1_tame,
                             "Galois action on H^1 tamely ramified")
          ->required();
  cmd_genus1->add_option("--jacobian", g1_jacobian, "good | mult | add")
      ->required();
  CLI::Option* opt_coh =
      cmd_genus1->add_option("--coh-flat", g1_coh_flat,
                             "minimal model cohomologically flat");
  CLI::Option* opt_mu =
      cmd_genus1->add_option("--mu", g1_mu, "Pic-order of the fibre bundle");
  CLI::Option* opt_ss = cmd_genus1->add_option(
      "--supersingular", g1_supersingular, "reduced fibre supersingular");
  (void)opt_tame;

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);

  if (*cmd_validate) {
    Input in = load_input(file);
    json result;
    if (in.model) {
      CStr out;
      char* raw = nullptr;
      require_ok(lr_model_validate(in.model.get(), &raw));
      out.reset(raw);
      result = json::parse(out.get());
    } else {
      // a graph that parsed is structurally valid
      result = {{"valid", true}, {"violations", json::array()}};
    }
    if (as_json)
      emit_json("validate", in.digest, result);
    else
      print_violations(result);
    return result["valid"].get<bool>() ? 0 : 1;
  }

  if (*cmd_classify) {
    Input in = load_input(file);
    const lr_model* m = as_model(in, claim);
    char* raw = nullptr;
    require_ok(lr_model_classify(m, &raw));
    CStr out(raw);
    json result = json::parse(out.get());
    if (as_json) {
      emit_json("classify", in.digest, result);
    } else {
      std::cout << "p-locus:";
      for (const auto& id : result["p_locus"])
        std::cout << " " << id.get<std::string>();
      std::cout << "\np'-locus:";
      for (const auto& id : result["pprime_locus"])
        std::cout << " " << id.get<std::string>();
      std::cout << "\n";
    }
    return 0;
  }

  if (*cmd_zeta) {
    Input in = load_input(file);
    const lr_model* m = as_model(in, claim);
    char* raw = nullptr;
    require_ok(lr_model_zeta(m, &raw));
    CStr out(raw);
    json result = json::parse(out.get());
    if (as_json)
      emit_json("zeta", in.digest, result);
    else
      std::cout << "zeta = " << result["string"].get<std::string>()
                << " (degree " << result["degree"].get<long long>() << ")\n";
    return 0;
  }

  if (*cmd_euler) {
    Input in = load_input(file);
    const lr_model* m = as_model(in, claim);
    long long chi = 0;
    require_ok(lr_model_euler(m, &chi));
    if (as_json)
      emit_json("euler", in.digest, json{{"chi_tame", chi}});
    else
      std::cout << "tame Euler characteristic = " << chi << "\n";
    return 0;
  }

  if (*cmd_tame) {
    Input in = load_input(file);
    const lr_model* m = as_model(in, claim);
    int exists = 0;
    require_ok(lr_model_tame_point(m, &exists));
    if (as_json)
      emit_json("tame-point", in.digest,
                json{{"tame_point_exists", exists != 0}});
    else if (exists)
      std::cout << "tame point exists: the p'-locus meets the special fibre\n";
    else
      std::cout << "no K^t-point: p-locus equals the special fibre\n";
    return exists ? 0 : 1;
  }

  if (*cmd_smooth) {
    Input in = load_input(file);
    if (!in.model) die("check-smooth requires a model file with charts");
    char* raw = nullptr;
    require_ok(lr_model_check_smooth(in.model.get(), &raw));
    CStr out(raw);
    json result = json::parse(out.get());
    bool all_smooth = true;
    for (const auto& v : result["verdicts"])
      if (v["verdict"].get<std::string>() != "SMOOTH") all_smooth = false;
    if (as_json) {
      emit_json("check-smooth", in.digest, result);
    } else {
      for (const auto& v : result["verdicts"])
        std::cout << v["point"].get<std::string>() << ": "
                  << v["verdict"].get<std::string>() << " ("
                  << v["reason"].get<std::string>() << ")\n";
    }
    return all_smooth ? 0 : 1;
  }

  if (*cmd_restrictions) {
    Input in = load_input(file);
    const lr_model* m = as_model(in, claim);
    char* raw = nullptr;
    require_ok(lr_model_restrictions(m, &raw));
    CStr out(raw);
    json result = json::parse(out.get());
    if (as_json)
      emit_json("restrictions", in.digest, result);
    else
      print_violations(result);
    return result["pass"].get<bool>() ? 0 : 1;
  }

  if (*cmd_saito) {
    Input in = load_input(file);
    if (!in.graph) die("saito requires a dual-graph file");
    char* raw = nullptr;
    require_ok(lr_graph_saito(in.graph.get(), &raw));
    CStr out(raw);
    json result = json::parse(out.get());
    if (as_json) {
      emit_json("saito", in.digest, result);
    } else if (result["pass"].get<bool>()) {
      std::cout << "PASS: every p-divisible component is rational and meets "
                   "exactly two prime-to-p components\n";
    } else {
      for (const auto& f : result["failures"])
        std::cout << "FAIL " << f["vertex"].get<std::string>() << ": "
                  << f["reason"].get<std::string>() << "\n";
    }
    return result["pass"].get<bool>() ? 0 : 1;
  }

  if (*cmd_scale) {
    Input in = load_input(file);
    if (!in.graph) die("scale requires a dual-graph file");
    lr_graph* scaled_raw = nullptr;
    require_ok(lr_graph_scale(in.graph.get(), scale_m, &scaled_raw));
    GraphHandle scaled(scaled_raw);
    char* raw = nullptr;
    require_ok(lr_graph_render(scaled.get(), &raw));
    CStr out(raw);
    if (as_json)
      emit_json("scale", in.digest, json::parse(out.get()));
    else
      std::cout << out.get();
    return 0;
  }

  if (*cmd_contract) {
    Input in = load_input(file);
    if (!in.graph) die("contract requires a dual-graph file");
    if (contract_vertex.empty() == !contract_all)
      die("contract needs exactly one of --vertex <id> or --all");
    GraphHandle contracted;
    json report;
    if (contract_all) {
      lr_graph* out_raw = nullptr;
      char* report_raw = nullptr;
      require_ok(
          lr_graph_contract_all(in.graph.get(), &out_raw, &report_raw));
      contracted.reset(out_raw);
      CStr rep(report_raw);
      report = json::parse(rep.get());
    } else {
      lr_graph* out_raw = nullptr;
      int preserved = 0;
      require_ok(lr_graph_contract(in.graph.get(), contract_vertex.c_str(),
                                   &out_raw, &preserved));
      contracted.reset(out_raw);
      report = {{"contracted", json::array({json{
                    {"vertex", contract_vertex},
                    {"smoothness_preserved", preserved != 0}}})},
                {"smoothness_preserved", preserved != 0}};
    }
    char* raw = nullptr;
    require_ok(lr_graph_render(contracted.get(), &raw));
    CStr out(raw);
    json result = report;
    result["graph"] = json::parse(out.get());
    if (as_json) {
      emit_json("contract", in.digest, result);
    } else {
      std::cout << out.get();
      std::cout << "smoothness preserved: "
                << (report["smoothness_preserved"].get<bool>() ? "yes" : "no")
                << "\n";
    }
    return 0;
  }

  if (*cmd_kodaira) {
    lr_graph* raw_graph = nullptr;
    require_ok(lr_kodaira(kodaira_type.c_str(), kodaira_n, kodaira_p,
                          &raw_graph));
    GraphHandle graph(raw_graph);
    char* raw = nullptr;
    require_ok(lr_graph_render(graph.get(), &raw));
    CStr out(raw);
    if (as_json) {
      std::string params = kodaira_type + "/" + std::to_string(kodaira_n) +
                           "/" + std::to_string(kodaira_p);
      emit_json("kodaira", fnv1a_digest(params), json::parse(out.get()));
    } else {
      std::cout << out.get();
    }
    return 0;
  }

  if (*cmd_genus1) {
    json params;
    params["p"] = g1_p;
    params["period"] = g1_period;
    params["h1_tame"] = g1_tame;
    params["jacobian"] = g1_jacobian;
    if (*opt_coh) params["coh_flat"] = g1_coh_flat;
    if (*opt_mu) params["mu"] = g1_mu;
    if (*opt_ss) params["supersingular"] = g1_supersingular;
    std::string params_str = params.dump();
    char* raw = nullptr;
    require_ok(lr_genus1_decide(params_str.c_str(), &raw));
    CStr out(raw);
    json result = json::parse(out.get());
    bool yes = result["log_good_reduction"].get<bool>();
    if (as_json)
      emit_json("genus1", fnv1a_digest(params_str), result);
    else
      std::cout << "log good reduction: " << (yes ? "YES" : "NO") << " ("
                << result["reason"].get<std::string>() << ")\n";
    return yes ? 0 : 1;
  }

  return 2;
}
