#include "nodeprune/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "nodeprune/errors.hpp"

namespace nodeprune {

namespace {

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw std::invalid_argument(std::string(what) + " must be a number");
  const double value = j.get<double>();
  if (!std::isfinite(value)) throw std::invalid_argument(std::string(what) + " must be finite");
  return value;
}

Index non_negative_int(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw std::invalid_argument(std::string(what) + " must be a non-negative integer");
  }
  return static_cast<Index>(j.get<long long>());
}

Eigen::VectorXd vector_from_json(const json& j, Index expected, const char* what) {
  if (!j.is_array() || static_cast<Index>(j.size()) != expected) {
    throw ShapeError(std::string(what) + " must be an array of length " + std::to_string(expected));
  }
  Eigen::VectorXd out(expected);
  for (Index i = 0; i < expected; ++i) out[i] = finite_number(j[static_cast<std::size_t>(i)], what);
  return out;
}

json vector_to_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

template <typename T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

json to_json(const NetworkParams& params) {
  json u = json::array();
  for (Index i = 0; i < params.hidden(); ++i) u.push_back(vector_to_json(params.u().row(i).transpose()));
  return json{{"d", params.input_dim()}, {"H", params.hidden()},      {"u", u},
              {"v", vector_to_json(params.v())}, {"b1", vector_to_json(params.b1())}, {"b2", params.b2()}};
}

NetworkParams network_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("network JSON must be an object");
  for (const char* key : {"d", "H", "u", "v", "b1", "b2"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("network JSON lacks '") + key + "'");
  }
  const Index d = non_negative_int(j.at("d"), "d");
  const Index hidden = non_negative_int(j.at("H"), "H");
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  const json& u = j.at("u");
  if (!u.is_array() || static_cast<Index>(u.size()) != hidden) {
    throw ShapeError("u must hold exactly H=" + std::to_string(hidden) + " rows");
  }
  NetworkParams params(hidden, d);
  for (Index i = 0; i < hidden; ++i) {
    params.u().row(i) = vector_from_json(u[static_cast<std::size_t>(i)], d, "u row").transpose();
  }
  params.v() = vector_from_json(j.at("v"), hidden, "v");
  params.b1() = vector_from_json(j.at("b1"), hidden, "b1");
  params.b2() = finite_number(j.at("b2"), "b2");
  return params;
}

json to_json(const PenaltySpec& spec) {
  json frozen = json::array();
  for (const bool f : spec.frozen) frozen.push_back(f);
  return json{{"kind", std::string(to_string(spec.kind))},
              {"reg", spec.reg},
              {"weights", vector_to_json(spec.weights)},
              {"frozen", frozen},
              {"gamma", spec.gamma}};
}

PenaltySpec penalty_from_json(const json& j) {
  PenaltySpec spec;
  spec.kind = penalty_kind_from_string(j.at("kind").get<std::string>());
  spec.reg = finite_number(j.at("reg"), "reg");
  const json& weights = j.at("weights");
  spec.weights = vector_from_json(weights, static_cast<Index>(weights.size()), "weights");
  spec.frozen = j.at("frozen").get<std::vector<bool>>();
  spec.gamma = finite_number(j.at("gamma"), "gamma");
  spec.validate();
  return spec;
}

json to_json(const MinimalityReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"kind", std::string(to_string(v.kind))}, {"nodes", v.nodes}});
  }
  return json{{"minimal", report.minimal}, {"violations", violations}};
}

json to_json(const NodeCounts& counts) {
  return json{{"zero", counts.zero}, {"non_significant", counts.non_significant}, {"nonzero", counts.nonzero}};
}

json to_json(const FitReport& fit, bool include_trace) {
  json out{{"params", to_json(fit.params)},       {"initial_risk", fit.initial_risk},
           {"final_risk", fit.final_risk},         {"final_penalty", fit.final_penalty},
           {"nonzero_nodes", fit.nonzero_nodes},   {"epochs_run", fit.epochs_run},
           {"diverged", fit.diverged}};
  if (include_trace) out["objective_trace"] = fit.objective_trace;
  return out;
}

namespace {

json aic_trace_to_json(const std::vector<AicPoint>& trace) {
  json out = json::array();
  for (const auto& p : trace) {
    out.push_back({{"reg", p.reg}, {"aic", p.aic}, {"nonzero_nodes", p.nonzero_nodes}, {"risk", p.risk}});
  }
  return out;
}

}  // namespace

json to_json(const SelectionResult& result, bool include_traces) {
  return json{
      {"gl_choice",
       {{"zeta", result.gl_choice.reg}, {"aic", result.gl_choice.aic}, {"fit", to_json(result.gl_choice.fit, include_traces)}}},
      {"agl_choice",
       {{"lambda", result.agl_choice.reg},
        {"aic", result.agl_choice.aic},
        {"fit", to_json(result.agl_choice.fit, include_traces)}}},
      {"gl_aic_trace", aic_trace_to_json(result.gl_aic_trace)},
      {"agl_aic_trace", aic_trace_to_json(result.agl_aic_trace)},
      {"agl_spec", to_json(result.agl_spec)},
      {"selected_nodes", result.selected_nodes},
      {"minimality", to_json(result.minimality)},
      {"warnings", result.warnings}};
}

json to_json(const TrainConfig& cfg) {
  json out{{"epochs", cfg.epochs}, {"learning_rate", cfg.learning_rate}, {"rel_tol", cfg.rel_tol}, {"seed", cfg.seed}};
  out["box_W"] = cfg.box_W ? json(*cfg.box_W) : json(nullptr);
  return out;
}

json to_json(const GridSpec& grids) {
  return json{{"gl_grid", grids.gl_grid}, {"agl_grid", grids.agl_grid}, {"gamma", grids.gamma}};
}

json to_json(const SimSpec& spec) {
  return json{{"d", spec.d}, {"H_star", spec.H_star}, {"n", spec.n}, {"sigma2", spec.sigma2}, {"seed", spec.seed}};
}

json to_json(const SplitSpec& spec) { return json{{"test_fraction", spec.test_fraction}, {"seed", spec.seed}}; }

void merge_from_json(const json& j, TrainConfig& out) {
  take(j, "epochs", out.epochs);
  take(j, "learning_rate", out.learning_rate);
  take(j, "rel_tol", out.rel_tol);
  take(j, "seed", out.seed);
  if (j.contains("box_W")) {
    out.box_W = j.at("box_W").is_null() ? std::nullopt : std::optional<double>(j.at("box_W").get<double>());
  }
  out.validate();
}

void merge_from_json(const json& j, GridSpec& out) {
  take(j, "gl_grid", out.gl_grid);
  take(j, "agl_grid", out.agl_grid);
  take(j, "gamma", out.gamma);
  out.validate();
}

void merge_from_json(const json& j, SimSpec& out) {
  take(j, "d", out.d);
  take(j, "H_star", out.H_star);
  take(j, "n", out.n);
  take(j, "sigma2", out.sigma2);
  take(j, "seed", out.seed);
  out.validate();
}

void merge_from_json(const json& j, SplitSpec& out) {
  take(j, "test_fraction", out.test_fraction);
  take(j, "seed", out.seed);
  out.validate();
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(DataError::Kind::kMissingFile, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(DataError::Kind::kMalformedRow, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

void write_trace_csv(const std::filesystem::path& path, const FitReport& fit) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "epoch,risk,penalty,objective\n";
  for (std::size_t e = 0; e < fit.objective_trace.size(); ++e) {
    out << (e + 1) << ',' << format_number(fit.risk_trace[e]) << ',' << format_number(fit.penalty_trace[e]) << ','
        << format_number(fit.objective_trace[e]) << '\n';
  }
}

void write_aic_csv(const std::filesystem::path& path, const SelectionResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "step,reg,aic,nonzero_nodes,risk\n";
  const auto rows = [&out](const char* step, const std::vector<AicPoint>& trace) {
    for (const auto& p : trace) {
      out << step << ',' << format_number(p.reg) << ',' << format_number(p.aic) << ',' << p.nonzero_nodes << ','
          << format_number(p.risk) << '\n';
    }
  };
  rows("gl", result.gl_aic_trace);
  rows("agl", result.agl_aic_trace);
}

}  // namespace nodeprune
