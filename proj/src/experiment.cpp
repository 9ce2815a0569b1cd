#include "nodeprune/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nodeprune/errors.hpp"
#include "nodeprune/structure.hpp"
#include "nodeprune/svg.hpp"

namespace nodeprune {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::pair<Mode, const char*> kModeNames[] = {
    {Mode::kSimulate, "simulate"},
    {Mode::kFit, "fit"},
    {Mode::kExperimentSim, "experiment-sim"},
    {Mode::kExperimentReal, "experiment-real"},
    {Mode::kReport, "report"},
};

}  // namespace

const char* to_string(Mode mode) {
  for (const auto& [m, name] : kModeNames) {
    if (m == mode) return name;
  }
  return "unknown";
}

Mode mode_from_string(const std::string& name) {
  for (const auto& [m, known] : kModeNames) {
    if (name == known) return m;
  }
  throw std::invalid_argument("unknown mode '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (H < 1) throw std::invalid_argument("H must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  sim.validate();
  grids.validate();
  train.validate();
  split.validate();
  if (mode == Mode::kExperimentSim && H < sim.H_star) {
    throw std::invalid_argument("H=" + std::to_string(H) + " is smaller than H_star=" + std::to_string(sim.H_star));
  }
  if (mode == Mode::kExperimentReal && data_csv.empty()) {
    throw std::invalid_argument("experiment-real needs data_csv");
  }
}

ExperimentConfig desk_config(Mode mode) {
  ExperimentConfig cfg;
  cfg.mode = mode;
  cfg.sim = SimSpec{5, 3, 2000, 1.0, 0};
  cfg.H = 8;
  cfg.replicates = 20;
  if (mode == Mode::kExperimentReal) {
    cfg.H = 20;
    cfg.replicates = 5;
    cfg.grids.gl_grid = {0.1, 0.3, 0.5, 0.7, 1.0};
    cfg.grids.agl_grid = cfg.grids.gl_grid;
    cfg.include_erm = true;
  }
  return cfg;
}

ExperimentConfig full_config(Mode mode) {
  ExperimentConfig cfg = desk_config(mode);
  cfg.full = true;
  cfg.sim = SimSpec{5, 10, 5000, 1.0, 0};
  cfg.H = 20;
  cfg.replicates = 100;
  if (mode == Mode::kExperimentReal) {
    cfg.H = 50;
    cfg.replicates = 50;
  }
  return cfg;
}

namespace {

template <typename T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig config_from_json(const json& j, Mode mode, bool full) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  full = full || j.value("full", false);
  ExperimentConfig cfg = full ? full_config(mode) : desk_config(mode);
  take(j, "replicates", cfg.replicates);
  take(j, "H", cfg.H);
  take(j, "include_erm", cfg.include_erm);
  take(j, "master_seed", cfg.master_seed);
  take(j, "threads", cfg.threads);
  take(j, "target_column", cfg.target_column);
  if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("data_csv")) cfg.data_csv = j.at("data_csv").get<std::string>();
  if (j.contains("sim")) merge_from_json(j.at("sim"), cfg.sim);
  if (j.contains("grids")) merge_from_json(j.at("grids"), cfg.grids);
  if (j.contains("train")) merge_from_json(j.at("train"), cfg.train);
  if (j.contains("split")) merge_from_json(j.at("split"), cfg.split);
  return cfg;
}

json to_json(const ExperimentConfig& cfg) {
  return json{{"mode", to_string(cfg.mode)},
              {"replicates", cfg.replicates},
              {"sim", to_json(cfg.sim)},
              {"grids", to_json(cfg.grids)},
              {"train", to_json(cfg.train)},
              {"split", to_json(cfg.split)},
              {"H", cfg.H},
              {"output_dir", cfg.output_dir.string()},
              {"include_erm", cfg.include_erm},
              {"master_seed", cfg.master_seed},
              {"threads", cfg.threads},
              {"full", cfg.full},
              {"data_csv", cfg.data_csv.string()},
              {"target_column", cfg.target_column},
              {"standardized", cfg.mode == Mode::kExperimentReal}};
}

std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t replicate) {
  return Philox4x32(master, replicate)();
}

std::uint64_t train_seed(std::uint64_t replicate_seed) { return Philox4x32(replicate_seed, 3)(); }

void parallel_for(int count, int threads, const std::function<void(int)>& job) {
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

TrainConfig replicate_train(const ExperimentConfig& cfg, std::uint64_t seed) {
  TrainConfig train = cfg.train;
  train.seed = train_seed(seed);
  return train;
}

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return text;
}

void log_line(const std::string& text) {
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  std::cerr << text << std::endl;
}

// Mean squared error on the original target scale.
double original_scale_mse(const NetworkParams& params, const Dataset& standardized, const StandardizeTransform& t,
                          const Eigen::VectorXd& raw_target) {
  const Eigen::VectorXd pred = t.restore_target(predict(params, standardized.x()));
  return (raw_target - pred).squaredNorm() / static_cast<double>(raw_target.size());
}

Eigen::VectorXd gather(const Eigen::VectorXd& y, const std::vector<Index>& rows) {
  Eigen::VectorXd out(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out[static_cast<Index>(i)] = y[rows[i]];
  return out;
}

}  // namespace

SimRow run_sim_replicate(const ExperimentConfig& cfg, int replicate, std::uint64_t seed) {
  SimRow row;
  row.replicate = replicate;
  row.seed = seed;
  try {
    SimSpec spec = cfg.sim;
    spec.seed = seed;
    const SimulatedData sim = simulate_dataset(spec);
    const SelectionResult result = two_step_fit(sim.data, cfg.H, cfg.grids, replicate_train(cfg, seed));
    row.gl_zeta = result.gl_choice.reg;
    row.gl_nodes = result.gl_choice.fit.nonzero_nodes;
    row.gl_aic = result.gl_choice.aic;
    row.gl_risk = result.gl_choice.fit.final_risk;
    row.gl_distance = distance_to_embedded_reference(result.gl_choice.fit.params, sim.true_params);
    row.agl_lambda = result.agl_choice.reg;
    row.agl_nodes = result.selected_nodes;
    row.agl_aic = result.agl_choice.aic;
    row.agl_risk = result.agl_choice.fit.final_risk;
    row.agl_distance = distance_to_embedded_reference(result.agl_choice.fit.params, sim.true_params);
    row.agl_minimal = result.minimality.minimal;
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = one_line(e.what());
  }
  return row;
}

RealRow run_real_split(const ExperimentConfig& cfg, const Dataset& data, int split, std::uint64_t seed) {
  RealRow row;
  row.split = split;
  row.seed = seed;
  try {
    SplitSpec split_spec = cfg.split;
    split_spec.seed = seed;
    const SplitResult parts = split_standardize(data, split_spec);
    const Eigen::VectorXd train_y = gather(data.y(), parts.train_rows);
    const Eigen::VectorXd test_y = gather(data.y(), parts.test_rows);
    const TrainConfig train = replicate_train(cfg, seed);
    const auto train_err = [&](const NetworkParams& p) {
      return original_scale_mse(p, parts.train, parts.transform, train_y);
    };
    const auto test_err = [&](const NetworkParams& p) {
      return original_scale_mse(p, parts.test, parts.transform, test_y);
    };

    const NetworkParams init = random_init(cfg.H, data.input_dim(), train.seed);
    row.initial_train_err = train_err(init);
    const SelectionResult result = two_step_fit(parts.train, cfg.H, cfg.grids, train);
    row.gl_zeta = result.gl_choice.reg;
    row.gl_nodes = result.gl_choice.fit.nonzero_nodes;
    row.gl_train_err = train_err(result.gl_choice.fit.params);
    row.gl_test_err = test_err(result.gl_choice.fit.params);
    row.agl_lambda = result.agl_choice.reg;
    row.agl_nodes = result.selected_nodes;
    row.agl_train_err = train_err(result.agl_choice.fit.params);
    row.agl_test_err = test_err(result.agl_choice.fit.params);
    if (cfg.include_erm) {
      const FitReport erm = prox_gradient_fit(parts.train, init, PenaltySpec::none(cfg.H), train);
      if (erm.diverged) throw PipelineError("unpenalized fit diverged");
      row.has_erm = true;
      row.erm_train_err = train_err(erm.params);
      row.erm_test_err = test_err(erm.params);
    }
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = one_line(e.what());
  }
  return row;
}

std::vector<SimRow> run_experiment_sim(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<SimRow> rows(static_cast<std::size_t>(cfg.replicates));
  parallel_for(cfg.replicates, cfg.threads, [&](int r) {
    SimRow row = run_sim_replicate(cfg, r, replicate_seed(cfg.master_seed, static_cast<std::uint64_t>(r)));
    std::ostringstream msg;
    msg << "replicate " << r << ": ";
    if (row.ok) {
      msg << "GL " << row.gl_nodes << " nodes, AGL " << row.agl_nodes << " nodes";
    } else {
      msg << "failed: " << row.error;
    }
    log_line(msg.str());
    rows[static_cast<std::size_t>(r)] = std::move(row);
  });
  return rows;
}

std::vector<RealRow> run_experiment_real(const ExperimentConfig& cfg) {
  cfg.validate();
  const LabeledDataset labeled = load_csv(cfg.data_csv, cfg.target_column);
  std::vector<RealRow> rows(static_cast<std::size_t>(cfg.replicates));
  parallel_for(cfg.replicates, cfg.threads, [&](int s) {
    RealRow row = run_real_split(cfg, labeled.data, s, replicate_seed(cfg.master_seed, static_cast<std::uint64_t>(s)));
    std::ostringstream msg;
    msg << "split " << s << ": ";
    if (row.ok) {
      msg << "GL " << row.gl_nodes << " nodes, AGL " << row.agl_nodes << " nodes, AGL test error "
          << row.agl_test_err;
    } else {
      msg << "failed: " << row.error;
    }
    log_line(msg.str());
    rows[static_cast<std::size_t>(s)] = std::move(row);
  });
  return rows;
}

namespace {

using Table = std::vector<std::map<std::string, std::string>>;

const std::vector<std::string> kSimColumns = {
    "replicate", "seed",      "status",     "error",   "gl_zeta",  "gl_nodes",     "gl_aic",     "gl_risk",
    "gl_distance", "agl_lambda", "agl_nodes", "agl_aic", "agl_risk", "agl_distance", "agl_minimal"};

const std::vector<std::string> kRealColumns = {
    "split",        "seed",         "status",        "error",        "initial_train_err", "gl_zeta",
    "gl_nodes",     "gl_train_err", "gl_test_err",   "agl_lambda",   "agl_nodes",         "agl_train_err",
    "agl_test_err", "erm_train_err", "erm_test_err"};

std::string num(double x) { return format_number(x); }

void write_table(const std::filesystem::path& path, const std::vector<std::string>& columns, const Table& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto it = row.find(columns[c]);
      out << (c ? "," : "") << (it == row.end() ? "" : it->second);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

Table read_table(const std::filesystem::path& path, const std::vector<std::string>& columns) {
  std::ifstream in(path);
  if (!in) throw DataError(DataError::Kind::kMissingFile, "cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw DataError(DataError::Kind::kEmpty, "'" + path.string() + "' is empty");
  if (split_fields(line) != columns) {
    throw DataError(DataError::Kind::kUnknownColumn, "'" + path.string() + "' has an unexpected header");
  }
  Table rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != columns.size()) {
      throw DataError(DataError::Kind::kMalformedRow, "line " + std::to_string(line_no) + " of '" + path.string() +
                                                          "' has " + std::to_string(fields.size()) + " fields");
    }
    auto& row = rows.emplace_back();
    for (std::size_t c = 0; c < columns.size(); ++c) row[columns[c]] = fields[c];
  }
  return rows;
}

template <typename T>
T parse_field(const std::map<std::string, std::string>& row, const std::string& column) {
  const std::string& text = row.at(column);
  if constexpr (std::is_same_v<T, double>) {
    if (text.empty()) return kNaN;
  }
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw DataError(DataError::Kind::kBadValue, "bad value '" + text + "' in column '" + column + "'");
  }
  return value;
}

int parse_int_or_zero(const std::map<std::string, std::string>& row, const std::string& column) {
  return row.at(column).empty() ? 0 : parse_field<int>(row, column);
}

bool parse_status(const std::map<std::string, std::string>& row) {
  const std::string& status = row.at("status");
  if (status != "ok" && status != "failed") {
    throw DataError(DataError::Kind::kBadValue, "bad status '" + status + "'");
  }
  return status == "ok";
}

}  // namespace

void write_sim_csv(const std::filesystem::path& path, const std::vector<SimRow>& rows) {
  Table table;
  for (const auto& r : rows) {
    auto& t = table.emplace_back();
    t["replicate"] = std::to_string(r.replicate);
    t["seed"] = std::to_string(r.seed);
    t["status"] = r.ok ? "ok" : "failed";
    t["error"] = r.error;
    if (!r.ok) continue;
    t["gl_zeta"] = num(r.gl_zeta);
    t["gl_nodes"] = std::to_string(r.gl_nodes);
    t["gl_aic"] = num(r.gl_aic);
    t["gl_risk"] = num(r.gl_risk);
    t["gl_distance"] = num(r.gl_distance);
    t["agl_lambda"] = num(r.agl_lambda);
    t["agl_nodes"] = std::to_string(r.agl_nodes);
    t["agl_aic"] = num(r.agl_aic);
    t["agl_risk"] = num(r.agl_risk);
    t["agl_distance"] = num(r.agl_distance);
    t["agl_minimal"] = r.agl_minimal ? "1" : "0";
  }
  write_table(path, kSimColumns, table);
}

std::vector<SimRow> read_sim_csv(const std::filesystem::path& path) {
  std::vector<SimRow> rows;
  for (const auto& t : read_table(path, kSimColumns)) {
    SimRow& r = rows.emplace_back();
    r.replicate = parse_field<int>(t, "replicate");
    r.seed = parse_field<std::uint64_t>(t, "seed");
    r.ok = parse_status(t);
    r.error = t.at("error");
    r.gl_zeta = parse_field<double>(t, "gl_zeta");
    r.gl_nodes = parse_int_or_zero(t, "gl_nodes");
    r.gl_aic = parse_field<double>(t, "gl_aic");
    r.gl_risk = parse_field<double>(t, "gl_risk");
    r.gl_distance = parse_field<double>(t, "gl_distance");
    r.agl_lambda = parse_field<double>(t, "agl_lambda");
    r.agl_nodes = parse_int_or_zero(t, "agl_nodes");
    r.agl_aic = parse_field<double>(t, "agl_aic");
    r.agl_risk = parse_field<double>(t, "agl_risk");
    r.agl_distance = parse_field<double>(t, "agl_distance");
    r.agl_minimal = t.at("agl_minimal") == "1";
  }
  return rows;
}

void write_real_csv(const std::filesystem::path& path, const std::vector<RealRow>& rows) {
  Table table;
  for (const auto& r : rows) {
    auto& t = table.emplace_back();
    t["split"] = std::to_string(r.split);
    t["seed"] = std::to_string(r.seed);
    t["status"] = r.ok ? "ok" : "failed";
    t["error"] = r.error;
    if (!r.ok) continue;
    t["initial_train_err"] = num(r.initial_train_err);
    t["gl_zeta"] = num(r.gl_zeta);
    t["gl_nodes"] = std::to_string(r.gl_nodes);
    t["gl_train_err"] = num(r.gl_train_err);
    t["gl_test_err"] = num(r.gl_test_err);
    t["agl_lambda"] = num(r.agl_lambda);
    t["agl_nodes"] = std::to_string(r.agl_nodes);
    t["agl_train_err"] = num(r.agl_train_err);
    t["agl_test_err"] = num(r.agl_test_err);
    if (r.has_erm) {
      t["erm_train_err"] = num(r.erm_train_err);
      t["erm_test_err"] = num(r.erm_test_err);
    }
  }
  write_table(path, kRealColumns, table);
}

std::vector<RealRow> read_real_csv(const std::filesystem::path& path) {
  std::vector<RealRow> rows;
  for (const auto& t : read_table(path, kRealColumns)) {
    RealRow& r = rows.emplace_back();
    r.split = parse_field<int>(t, "split");
    r.seed = parse_field<std::uint64_t>(t, "seed");
    r.ok = parse_status(t);
    r.error = t.at("error");
    r.initial_train_err = parse_field<double>(t, "initial_train_err");
    r.gl_zeta = parse_field<double>(t, "gl_zeta");
    r.gl_nodes = parse_int_or_zero(t, "gl_nodes");
    r.gl_train_err = parse_field<double>(t, "gl_train_err");
    r.gl_test_err = parse_field<double>(t, "gl_test_err");
    r.agl_lambda = parse_field<double>(t, "agl_lambda");
    r.agl_nodes = parse_int_or_zero(t, "agl_nodes");
    r.agl_train_err = parse_field<double>(t, "agl_train_err");
    r.agl_test_err = parse_field<double>(t, "agl_test_err");
    r.has_erm = !t.at("erm_test_err").empty();
    r.erm_train_err = parse_field<double>(t, "erm_train_err");
    r.erm_test_err = parse_field<double>(t, "erm_test_err");
  }
  return rows;
}

double median(std::vector<double> values) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

json histogram_json(const NodeHistogram& hist) {
  json out = json::object();
  for (const auto& [nodes, runs] : hist) out[std::to_string(nodes)] = runs;
  return out;
}

double mean(const std::vector<double>& values) {
  if (values.empty()) return kNaN;
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

template <typename Row>
std::vector<const Row*> succeeded(const std::vector<Row>& rows) {
  std::vector<const Row*> ok;
  for (const auto& r : rows) {
    if (r.ok) ok.push_back(&r);
  }
  return ok;
}

template <typename Row>
MethodHistograms node_histograms(const std::vector<Row>& rows) {
  NodeHistogram gl, agl;
  for (const Row* r : succeeded(rows)) {
    ++gl[r->gl_nodes];
    ++agl[r->agl_nodes];
  }
  return {{"GL", gl}, {"AGL", agl}};
}

}  // namespace

json summarize_sim(const std::vector<SimRow>& rows, Index H_star) {
  const auto ok = succeeded(rows);
  std::vector<double> gl_nodes, agl_nodes, gl_dist, agl_dist;
  int exact = 0;
  int minimal = 0;
  for (const SimRow* r : ok) {
    gl_nodes.push_back(r->gl_nodes);
    agl_nodes.push_back(r->agl_nodes);
    gl_dist.push_back(r->gl_distance);
    agl_dist.push_back(r->agl_distance);
    exact += r->agl_nodes == H_star ? 1 : 0;
    minimal += r->agl_minimal ? 1 : 0;
  }
  const auto hist = node_histograms(rows);
  const double total = static_cast<double>(rows.size());
  return json{{"replicates", rows.size()},
              {"succeeded", ok.size()},
              {"failed", rows.size() - ok.size()},
              {"H_star", H_star},
              {"histograms", {{"gl", histogram_json(hist[0].second)}, {"agl", histogram_json(hist[1].second)}}},
              {"median_nodes", {{"gl", median(gl_nodes)}, {"agl", median(agl_nodes)}}},
              {"median_distance", {{"gl", median(gl_dist)}, {"agl", median(agl_dist)}}},
              {"agl_exact_rate", rows.empty() ? kNaN : exact / total},
              {"agl_minimal_rate", rows.empty() ? kNaN : minimal / total}};
}

json summarize_real(const std::vector<RealRow>& rows) {
  const auto ok = succeeded(rows);
  std::vector<double> gl_nodes, agl_nodes;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> errors;
  for (const RealRow* r : ok) {
    gl_nodes.push_back(r->gl_nodes);
    agl_nodes.push_back(r->agl_nodes);
    errors["gl"].first.push_back(r->gl_train_err);
    errors["gl"].second.push_back(r->gl_test_err);
    errors["agl"].first.push_back(r->agl_train_err);
    errors["agl"].second.push_back(r->agl_test_err);
    if (r->has_erm) {
      errors["erm"].first.push_back(r->erm_train_err);
      errors["erm"].second.push_back(r->erm_test_err);
    }
  }
  json mean_train = json::object();
  json mean_test = json::object();
  for (const auto& [method, errs] : errors) {
    mean_train[method] = mean(errs.first);
    mean_test[method] = mean(errs.second);
  }
  const auto hist = node_histograms(rows);
  return json{{"splits", rows.size()},
              {"succeeded", ok.size()},
              {"failed", rows.size() - ok.size()},
              {"histograms", {{"gl", histogram_json(hist[0].second)}, {"agl", histogram_json(hist[1].second)}}},
              {"median_nodes", {{"gl", median(gl_nodes)}, {"agl", median(agl_nodes)}}},
              {"mean_train_err", mean_train},
              {"mean_test_err", mean_test}};
}

namespace {

void write_sim_report(const std::filesystem::path& dir, const std::vector<SimRow>& rows, Index H_star) {
  write_json_file(dir / "summary.json", summarize_sim(rows, H_star));
  if (!succeeded(rows).empty()) {
    emit_histogram_svg(node_histograms(rows), dir / "histogram.svg", "Selected hidden nodes per replicate");
  }
}

void write_real_report(const std::filesystem::path& dir, const std::vector<RealRow>& rows) {
  const json summary = summarize_real(rows);
  write_json_file(dir / "summary.json", summary);
  if (succeeded(rows).empty()) return;
  emit_histogram_svg(node_histograms(rows), dir / "nodes_hist.svg", "Selected hidden nodes per split");
  std::vector<MethodErrors> bars;
  for (const auto& [key, label] : {std::pair{"gl", "GL"}, {"agl", "AGL"}, {"erm", "ERM"}}) {
    if (summary["mean_test_err"].contains(key)) {
      bars.push_back({label, summary["mean_train_err"][key].get<double>(), summary["mean_test_err"][key].get<double>()});
    }
  }
  emit_error_bars_svg(bars, dir / "errors.svg", "Mean squared error (original scale)");
}

}  // namespace

void write_sim_outputs(const ExperimentConfig& cfg, const std::vector<SimRow>& rows) {
  std::filesystem::create_directories(cfg.output_dir);
  write_sim_csv(cfg.output_dir / "results.csv", rows);
  write_json_file(cfg.output_dir / "config.json", to_json(cfg));
  write_sim_report(cfg.output_dir, rows, cfg.sim.H_star);
}

void write_real_outputs(const ExperimentConfig& cfg, const std::vector<RealRow>& rows) {
  std::filesystem::create_directories(cfg.output_dir);
  write_real_csv(cfg.output_dir / "results.csv", rows);
  write_json_file(cfg.output_dir / "config.json", to_json(cfg));
  write_real_report(cfg.output_dir, rows);
}

void regenerate_report(const std::filesystem::path& dir) {
  const json cfg = read_json_file(dir / "config.json");
  const std::string mode = cfg.value("mode", "");
  if (mode == to_string(Mode::kExperimentSim)) {
    write_sim_report(dir, read_sim_csv(dir / "results.csv"), cfg.at("sim").at("H_star").get<Index>());
  } else if (mode == to_string(Mode::kExperimentReal)) {
    write_real_report(dir, read_real_csv(dir / "results.csv"));
  } else {
    throw DataError(DataError::Kind::kBadValue, "'" + (dir / "config.json").string() +
                                                    "' does not describe an experiment run");
  }
}

namespace {

std::vector<std::string> feature_names(Index d) {
  std::vector<std::string> names;
  for (Index j = 0; j < d; ++j) names.push_back("x" + std::to_string(j + 1));
  return names;
}

}  // namespace

void write_simulation(const ExperimentConfig& cfg) {
  cfg.sim.validate();
  const SimulatedData sim = simulate_dataset(cfg.sim);
  std::filesystem::create_directories(cfg.output_dir);
  write_csv(cfg.output_dir / "data.csv", sim.data, feature_names(cfg.sim.d), "y");
  write_json_file(cfg.output_dir / "true_params.json",
                  json{{"sim", to_json(cfg.sim)}, {"rejected_draws", sim.rejected_draws},
                       {"params", to_json(sim.true_params)}});
}

SelectionResult run_fit(const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  json report{{"config", to_json(cfg)}};
  std::optional<SimulatedData> sim;
  std::optional<LabeledDataset> labeled;
  TrainConfig train = cfg.train;
  if (cfg.data_csv.empty()) {
    sim = simulate_dataset(cfg.sim);
    train.seed = train_seed(cfg.sim.seed);
  } else {
    labeled = load_csv(cfg.data_csv, cfg.target_column);
  }
  const Dataset& data = sim ? sim->data : labeled->data;
  SelectionResult result = two_step_fit(data, cfg.H, cfg.grids, train);

  report["train_seed"] = train.seed;
  report["selection"] = to_json(result);
  if (sim) {
    report["true_params"] = to_json(sim->true_params);
    report["gl_distance"] = distance_to_embedded_reference(result.gl_choice.fit.params, sim->true_params);
    report["agl_distance"] = distance_to_embedded_reference(result.agl_choice.fit.params, sim->true_params);
  }
  write_json_file(cfg.output_dir / "fit.json", report);
  write_aic_csv(cfg.output_dir / "aic.csv", result);
  write_trace_csv(cfg.output_dir / "trace_gl.csv", result.gl_choice.fit);
  write_trace_csv(cfg.output_dir / "trace_agl.csv", result.agl_choice.fit);
  return result;
}

}  // namespace nodeprune
