#pragma once

// JSON input parsing and rendering for model and graph files.

#include <string>

#include "logred/dualgraph.hpp"
#include "logred/genus1.hpp"
#include "logred/model.hpp"

namespace logred {

inline constexpr int kSchemaVersion = 1;

struct GraphInput {
  DualGraph graph;
  long long p = 2;
};

LogModel parse_model(const std::string& bytes);
GraphInput parse_graph(const std::string& bytes);
Genus1Input parse_genus1_params(const std::string& bytes);

std::string render_model(const LogModel& model);
std::string render_graph(const GraphInput& input);

// "model", "graph", or SchemaError
std::string detect_file_kind(const std::string& bytes);

}  // namespace logred
