#include "logred/io.hpp"

#include <json.hpp>

namespace logred {

namespace {

using nlohmann::json;

void reject_floats(const json& node, const std::string& path) {
  if (node.is_number_float())
    fail(ErrorCode::SchemaError,
         "floating-point literal at " + path + "; all numbers must be integers");
  if (node.is_object())
    for (auto it = node.begin(); it != node.end(); ++it)
      reject_floats(it.value(), path + "." + it.key());
  if (node.is_array())
    for (std::size_t i = 0; i < node.size(); ++i)
      reject_floats(node[i], path + "[" + std::to_string(i) + "]");
}

json parse_document(const std::string& bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  reject_floats(doc, "$");
  if (!doc.is_object())
    fail(ErrorCode::SchemaError, "top-level value must be an object");
  return doc;
}

const json& field(const json& obj, const std::string& key,
                  const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail(ErrorCode::SchemaError, "missing field '" + key + "' in " + ctx);
  return *it;
}

long long int_field(const json& obj, const std::string& key,
                    const std::string& ctx) {
  const json& v = field(obj, key, ctx);
  if (!v.is_number_integer())
    fail(ErrorCode::SchemaError,
         "field '" + key + "' in " + ctx + " must be an integer");
  return v.get<long long>();
}

std::string string_field(const json& obj, const std::string& key,
                         const std::string& ctx) {
  const json& v = field(obj, key, ctx);
  if (!v.is_string())
    fail(ErrorCode::SchemaError,
         "field '" + key + "' in " + ctx + " must be a string");
  return v.get<std::string>();
}

bool bool_field(const json& obj, const std::string& key,
                const std::string& ctx, bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean())
    fail(ErrorCode::SchemaError,
         "field '" + key + "' in " + ctx + " must be a boolean");
  return it->get<bool>();
}

void check_schema_version(const json& doc) {
  if (int_field(doc, "schema", "document") != kSchemaVersion)
    fail(ErrorCode::SchemaError, "unsupported schema version");
}

Vec parse_vector(const json& arr, const std::string& ctx) {
  if (!arr.is_array())
    fail(ErrorCode::SchemaError, ctx + " must be an array of integers");
  Vec out;
  for (const auto& x : arr) {
    if (!x.is_number_integer())
      fail(ErrorCode::SchemaError, ctx + " must contain only integers");
    out.emplace_back(static_cast<long>(x.get<long long>()));
  }
  return out;
}

Chart parse_chart(const json& obj, const std::string& ctx) {
  const json& gens_json = field(obj, "gens", ctx);
  if (!gens_json.is_array())
    fail(ErrorCode::SchemaError, "'gens' in " + ctx + " must be an array");
  Mat gens;
  for (std::size_t i = 0; i < gens_json.size(); ++i)
    gens.push_back(parse_vector(gens_json[i],
                                ctx + ".gens[" + std::to_string(i) + "]"));
  Vec v1 = parse_vector(field(obj, "v1", ctx), ctx + ".v1");
  std::size_t dim = v1.size();
  for (const auto& g : gens)
    if (g.size() != dim)
      fail(ErrorCode::SemanticError,
           "generator dimension mismatch in " + ctx);

  Face face;
  const json& face_json = field(obj, "face", ctx);
  if (!face_json.is_array())
    fail(ErrorCode::SchemaError, "'face' in " + ctx + " must be an array");
  for (const auto& idx : face_json) {
    if (!idx.is_number_integer() || idx.get<long long>() < 0)
      fail(ErrorCode::SchemaError,
           "'face' in " + ctx + " must contain nonnegative indices");
    face.generator_indices.push_back(idx.get<std::size_t>());
  }

  Chart chart{AffineMonoid(dim, std::move(gens)), std::move(v1),
              std::move(face), bool_field(obj, "etale", ctx, false)};
  return chart;
}

}  // namespace

LogModel parse_model(const std::string& bytes) {
  json doc = parse_document(bytes);
  check_schema_version(doc);

  LogModel model;
  model.p = int_field(doc, "p", "document");
  model.log_smooth_claimed =
      bool_field(doc, "log_smooth_claimed", "document", false);

  const json& points = field(doc, "points", "document");
  if (!points.is_array())
    fail(ErrorCode::SchemaError, "'points' must be an array");
  for (const auto& pj : points) {
    std::string ctx = "point";
    FanPoint pt;
    pt.id = string_field(pj, "id", ctx);
    ctx = "point '" + pt.id + "'";
    pt.codim = static_cast<int>(int_field(pj, "codim", ctx));
    pt.msharp = int_field(pj, "msharp", ctx);
    if (pt.msharp < 1)
      fail(ErrorCode::SemanticError, ctx + ": msharp >= 1 is violated");

    StratumData st;
    st.point_id = pt.id;
    st.chi_open = int_field(pj, "chi_open", ctx);
    st.dim_closed = int_field(pj, "dim_closed", ctx);
    if (pj.contains("genus")) st.genus = int_field(pj, "genus", ctx);
    if (pj.contains("chart")) pt.chart = parse_chart(pj["chart"], ctx);

    model.fan.points.push_back(std::move(pt));
    model.strata[st.point_id] = std::move(st);
  }

  const json& specs = field(doc, "specializations", "document");
  if (!specs.is_array())
    fail(ErrorCode::SchemaError, "'specializations' must be an array");
  for (const auto& sp : specs) {
    if (!sp.is_array() || sp.size() != 2 || !sp[0].is_string() ||
        !sp[1].is_string())
      fail(ErrorCode::SchemaError,
           "each specialization must be a pair of point ids");
    model.fan.specializations.emplace_back(sp[0].get<std::string>(),
                                           sp[1].get<std::string>());
  }

  try {
    require_valid_model(model);
  } catch (const Error& e) {
    fail(ErrorCode::SemanticError, e.what());
  }
  return model;
}

GraphInput parse_graph(const std::string& bytes) {
  json doc = parse_document(bytes);
  check_schema_version(doc);

  GraphInput input;
  input.p = int_field(doc, "p", "document");
  input.graph.strict_fibre =
      bool_field(doc, "strict_fibre", "document", false);
  input.graph.allow_loops = bool_field(doc, "allow_loops", "document", false);

  const json& verts = field(doc, "vertices", "document");
  if (!verts.is_array())
    fail(ErrorCode::SchemaError, "'vertices' must be an array");
  for (const auto& vj : verts) {
    GraphVertex v;
    v.id = string_field(vj, "id", "vertex");
    std::string ctx = "vertex '" + v.id + "'";
    v.mult = int_field(vj, "mult", ctx);
    v.genus = int_field(vj, "genus", ctx);
    v.self_int = int_field(vj, "self", ctx);
    input.graph.vertices.push_back(std::move(v));
  }

  const json& edges = field(doc, "edges", "document");
  if (!edges.is_array())
    fail(ErrorCode::SchemaError, "'edges' must be an array");
  for (const auto& ej : edges) {
    if (!ej.is_array() || ej.size() != 2 || !ej[0].is_string() ||
        !ej[1].is_string())
      fail(ErrorCode::SchemaError, "each edge must be a pair of vertex ids");
    input.graph.edges.emplace_back(ej[0].get<std::string>(),
                                   ej[1].get<std::string>());
  }

  if (!is_prime(input.p))
    fail(ErrorCode::SemanticError, "p must be prime");
  try {
    require_valid_graph(input.graph);
  } catch (const Error& e) {
    fail(ErrorCode::SemanticError, e.what());
  }
  return input;
}

Genus1Input parse_genus1_params(const std::string& bytes) {
  json doc = parse_document(bytes);
  Genus1Input in;
  in.p = int_field(doc, "p", "genus1 parameters");
  in.period = int_field(doc, "period", "genus1 parameters");
  in.h1_tame = bool_field(doc, "h1_tame", "genus1 parameters", false);
  std::string jac = string_field(doc, "jacobian", "genus1 parameters");
  if (jac == "good")
    in.jacobian_reduction = JacobianReduction::Good;
  else if (jac == "mult")
    in.jacobian_reduction = JacobianReduction::Multiplicative;
  else if (jac == "add")
    in.jacobian_reduction = JacobianReduction::Additive;
  else
    fail(ErrorCode::SchemaError, "jacobian must be 'good', 'mult' or 'add'");
  if (doc.contains("coh_flat"))
    in.coh_flat = bool_field(doc, "coh_flat", "genus1 parameters", false);
  if (doc.contains("mu")) in.mu = int_field(doc, "mu", "genus1 parameters");
  if (doc.contains("supersingular"))
    in.supersingular =
        bool_field(doc, "supersingular", "genus1 parameters", false);
  return in;
}

namespace {

json vector_to_json(const Vec& v) {
  json arr = json::array();
  for (const auto& x : v) {
    if (!x.fits_slong_p())
      fail(ErrorCode::Internal, "coordinate too large to render");
    arr.push_back(x.get_si());
  }
  return arr;
}

}  // namespace

std::string render_model(const LogModel& model) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["p"] = model.p;
  doc["log_smooth_claimed"] = model.log_smooth_claimed;
  json points = json::array();
  for (const auto& pt : model.fan.points) {
    const StratumData& st = model.strata.at(pt.id);
    json pj;
    pj["id"] = pt.id;
    pj["codim"] = pt.codim;
    pj["msharp"] = pt.msharp;
    pj["chi_open"] = st.chi_open;
    pj["dim_closed"] = st.dim_closed;
    if (st.genus) pj["genus"] = *st.genus;
    if (pt.chart) {
      json cj;
      json gens = json::array();
      for (const auto& g : pt.chart->monoid.generators())
        gens.push_back(vector_to_json(g));
      cj["gens"] = std::move(gens);
      cj["v1"] = vector_to_json(pt.chart->v1);
      json face = json::array();
      for (std::size_t i : pt.chart->face.generator_indices) face.push_back(i);
      cj["face"] = std::move(face);
      cj["etale"] = pt.chart->etale_marked;
      pj["chart"] = std::move(cj);
    }
    points.push_back(std::move(pj));
  }
  doc["points"] = std::move(points);
  json specs = json::array();
  for (const auto& [a, b] : model.fan.specializations)
    specs.push_back(json::array({a, b}));
  doc["specializations"] = std::move(specs);
  return doc.dump(2) + "\n";
}

std::string render_graph(const GraphInput& input) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["p"] = input.p;
  doc["strict_fibre"] = input.graph.strict_fibre;
  doc["allow_loops"] = input.graph.allow_loops;
  json verts = json::array();
  for (const auto& v : input.graph.vertices) {
    json vj;
    vj["id"] = v.id;
    vj["mult"] = v.mult;
    vj["genus"] = v.genus;
    vj["self"] = v.self_int;
    verts.push_back(std::move(vj));
  }
  doc["vertices"] = std::move(verts);
  json edges = json::array();
  for (const auto& [a, b] : input.graph.edges)
    edges.push_back(json::array({a, b}));
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

std::string detect_file_kind(const std::string& bytes) {
  json doc = parse_document(bytes);
  bool has_points = doc.contains("points");
  bool has_vertices = doc.contains("vertices");
  if (has_points == has_vertices)
    fail(ErrorCode::SchemaError,
         "cannot tell model from graph: exactly one of 'points'/'vertices' "
         "must be present");
  return has_points ? "model" : "graph";
}

}  // namespace logred
