#include "nodeprune/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "nodeprune/errors.hpp"
#include "nodeprune/structure.hpp"

namespace nodeprune {

void SimSpec::validate() const {
  if (d < 1 || H_star < 1 || n < 1) throw std::invalid_argument("SimSpec needs d, H_star, n >= 1");
  if (!(sigma2 >= 0.0)) throw std::invalid_argument("SimSpec needs sigma2 >= 0");
}

SimulatedData simulate_dataset(const SimSpec& spec) {
  spec.validate();
  SimulatedData out;

  Philox4x32 param_rng(spec.seed, 0);
  NormalSampler param_normal;
  NetworkParams teacher(spec.H_star, spec.d);
  for (;;) {
    for (double& x : teacher.packed()) x = param_normal(param_rng);
    if (check_minimal(teacher).minimal) break;
    ++out.rejected_draws;
  }

  Philox4x32 input_rng(spec.seed, 1);
  NormalSampler input_normal;
  Eigen::MatrixXd x(spec.n, spec.d);
  for (Index k = 0; k < spec.n; ++k) {
    for (Index j = 0; j < spec.d; ++j) x(k, j) = input_normal(input_rng);
  }

  Philox4x32 noise_rng(spec.seed, 2);
  NormalSampler noise_normal;
  const double sigma = std::sqrt(spec.sigma2);
  Eigen::VectorXd y = predict(teacher, x);
  if (sigma > 0.0) {
    for (Index k = 0; k < spec.n; ++k) y[k] += sigma * noise_normal(noise_rng);
  }

  out.data = Dataset(std::move(x), std::move(y));
  out.true_params = std::move(teacher);
  return out;
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\"");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\"");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_double(const std::string& text, double& value) {
  if (text.empty()) return false;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

}  // namespace

LabeledDataset load_csv(const std::filesystem::path& path, const std::string& target_column) {
  std::ifstream in(path);
  if (!in) {
    throw DataError(DataError::Kind::kMissingFile, "cannot open '" + path.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError(DataError::Kind::kEmpty, "'" + path.string() + "' has no header row");
  }
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const std::vector<std::string> header = split_fields(line);
  const auto target_it = std::find(header.begin(), header.end(), target_column);
  if (target_it == header.end()) {
    throw DataError(DataError::Kind::kUnknownColumn,
                    "target column '" + target_column + "' not in header of '" + path.string() + "'");
  }
  const std::size_t target_pos = static_cast<std::size_t>(target_it - header.begin());
  const std::size_t width = header.size();

  std::vector<double> cells;
  std::size_t line_no = 1;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != width) {
      throw DataError(DataError::Kind::kMalformedRow, "line " + std::to_string(line_no) + ": expected " +
                                                          std::to_string(width) + " fields, found " +
                                                          std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < width; ++c) {
      double value = 0.0;
      if (!parse_double(fields[c], value)) {
        throw DataError(DataError::Kind::kBadValue, "line " + std::to_string(line_no) + " (row " +
                                                        std::to_string(rows + 1) + "), column '" + header[c] +
                                                        "': not a number: '" + fields[c] + "'");
      }
      cells.push_back(value);
    }
    ++rows;
  }
  if (rows == 0) {
    throw DataError(DataError::Kind::kEmpty, "'" + path.string() + "' has no data rows");
  }
  if (width < 2) {
    throw DataError(DataError::Kind::kMalformedRow, "'" + path.string() + "' needs at least one feature column");
  }

  LabeledDataset out;
  out.target_name = target_column;
  Eigen::MatrixXd x(static_cast<Index>(rows), static_cast<Index>(width - 1));
  Eigen::VectorXd y(static_cast<Index>(rows));
  for (std::size_t c = 0; c < width; ++c) {
    if (c != target_pos) out.feature_names.push_back(header[c]);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    Index feature = 0;
    for (std::size_t c = 0; c < width; ++c) {
      const double value = cells[r * width + c];
      if (c == target_pos) {
        y[static_cast<Index>(r)] = value;
      } else {
        x(static_cast<Index>(r), feature++) = value;
      }
    }
  }
  out.data = Dataset(std::move(x), std::move(y));
  return out;
}

void write_csv(const std::filesystem::path& path, const Dataset& data, const std::vector<std::string>& feature_names,
               const std::string& target_name) {
  if (static_cast<Index>(feature_names.size()) != data.input_dim()) {
    throw ShapeError("feature name count does not match dataset width");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (const auto& name : feature_names) out << name << ',';
  out << target_name << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Index k = 0; k < data.n(); ++k) {
    for (Index j = 0; j < data.input_dim(); ++j) out << data.x()(k, j) << ',';
    out << data.y()[k] << '\n';
  }
}

void SplitSpec::validate() const {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("test_fraction must lie in (0, 1)");
  }
}

std::uint64_t uniform_index(Philox4x32& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_index needs bound > 0");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

Eigen::MatrixXd StandardizeTransform::features(const Eigen::MatrixXd& x) const {
  return ((x.rowwise() - feature_mean.transpose()).array().rowwise() / feature_scale.transpose().array()).matrix();
}

Eigen::VectorXd StandardizeTransform::target(const Eigen::VectorXd& y) const {
  return ((y.array() - target_mean) / target_scale).matrix();
}

Eigen::VectorXd StandardizeTransform::restore_target(const Eigen::VectorXd& y_std) const {
  return (y_std.array() * target_scale + target_mean).matrix();
}

namespace {

struct Moments {
  double mean;
  double scale;
};

Moments moments(const Eigen::VectorXd& column) {
  const double mean = column.mean();
  const double sd = std::sqrt((column.array() - mean).square().mean());
  return {mean, sd};
}

Dataset take_rows(const Dataset& data, const std::vector<Index>& rows) {
  Eigen::MatrixXd x(static_cast<Index>(rows.size()), data.input_dim());
  Eigen::VectorXd y(static_cast<Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    x.row(static_cast<Index>(r)) = data.x().row(rows[r]);
    y[static_cast<Index>(r)] = data.y()[rows[r]];
  }
  return Dataset(std::move(x), std::move(y));
}

}  // namespace

SplitResult split_standardize(const Dataset& data, const SplitSpec& spec) {
  spec.validate();
  const Index n = data.n();
  if (n < 4) throw std::invalid_argument("split needs at least 4 rows");
  const auto test_n = static_cast<Index>(std::floor(spec.test_fraction * static_cast<double>(n)));
  if (test_n < 1 || n - test_n < 2) {
    throw std::invalid_argument("test_fraction leaves an empty split");
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  Philox4x32 rng(spec.seed);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[uniform_index(rng, i + 1)]);
  }

  SplitResult out;
  out.test_rows.assign(order.begin(), order.begin() + test_n);
  out.train_rows.assign(order.begin() + test_n, order.end());
  std::sort(out.test_rows.begin(), out.test_rows.end());
  std::sort(out.train_rows.begin(), out.train_rows.end());

  const Dataset raw_train = take_rows(data, out.train_rows);
  const Dataset raw_test = take_rows(data, out.test_rows);

  StandardizeTransform& tf = out.transform;
  tf.feature_mean.resize(data.input_dim());
  tf.feature_scale.resize(data.input_dim());
  for (Index j = 0; j < data.input_dim(); ++j) {
    const Moments m = moments(raw_train.x().col(j));
    tf.feature_mean[j] = m.mean;
    tf.feature_scale[j] = m.scale;
    if (!(m.scale > 0.0)) {
      tf.feature_scale[j] = 1.0;
      out.warnings.push_back("feature column " + std::to_string(j) + " is constant on the training split");
    }
  }
  const Moments ym = moments(raw_train.y());
  tf.target_mean = ym.mean;
  tf.target_scale = ym.scale;
  if (!(ym.scale > 0.0)) {
    tf.target_scale = 1.0;
    out.warnings.push_back("target is constant on the training split");
  }

  out.train = Dataset(tf.features(raw_train.x()), tf.target(raw_train.y()));
  out.test = Dataset(tf.features(raw_test.x()), tf.target(raw_test.y()));
  return out;
}

}  // namespace nodeprune
