#include "nodeprune/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nodeprune {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;
constexpr const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string fmt_tick(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round step (1, 2 or 5 times a power of ten) giving at most ~5 intervals.
double tick_step(double max_value) {
  if (max_value <= 0.0) return 1.0;
  const double raw = max_value / 5.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * magnitude >= raw) return m * magnitude;
  }
  return 10.0 * magnitude;
}

class Chart {
 public:
  Chart(const std::string& title, const std::string& x_label, const std::string& y_label, double y_max,
        bool integer_ticks) {
    step_ = tick_step(y_max);
    if (integer_ticks) step_ = std::max(1.0, std::ceil(step_));
    top_value_ = std::max(step_, std::ceil(y_max / step_) * step_);
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_tick(kWidth) << "\" height=\""
         << fmt_tick(kHeight) << "\" viewBox=\"0 0 " << fmt_tick(kWidth) << ' ' << fmt_tick(kHeight)
         << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out_ << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
         << escape(title) << "</text>\n";
    const double bottom = kHeight - kBottom;
    for (double tick = 0.0; tick <= top_value_ + 1e-9 * top_value_; tick += step_) {
      const double y = y_of(tick);
      out_ << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kWidth - kRight) << "\" y2=\""
           << fmt(y) << "\" stroke=\"#dddddd\"/>\n";
      out_ << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">" << fmt_tick(tick)
           << "</text>\n";
    }
    out_ << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(kWidth - kRight)
         << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\"/>\n";
    out_ << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(kLeft) << "\" y2=\""
         << fmt(bottom) << "\" stroke=\"black\"/>\n";
    out_ << "<text x=\"" << fmt(kLeft + plot_width() / 2) << "\" y=\"" << fmt(kHeight - 14)
         << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
    out_ << "<text x=\"16\" y=\"" << fmt(kTop + plot_height() / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
         << fmt(kTop + plot_height() / 2) << ")\">" << escape(y_label) << "</text>\n";
  }

  static double plot_width() { return kWidth - kLeft - kRight; }
  static double plot_height() { return kHeight - kTop - kBottom; }
  double y_of(double value) const { return kHeight - kBottom - plot_height() * value / top_value_; }

  void bar(double x, double width, double value, const char* color) {
    const double y = y_of(value);
    out_ << "<rect class=\"bar\" x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(width)
         << "\" height=\"" << fmt(kHeight - kBottom - y) << "\" fill=\"" << color << "\"/>\n";
  }

  void category_label(double center, const std::string& label) {
    out_ << "<text x=\"" << fmt(center) << "\" y=\"" << fmt(kHeight - kBottom + 16) << "\" text-anchor=\"middle\">"
         << escape(label) << "</text>\n";
  }

  void legend(const std::vector<std::string>& names) {
    const double x = kWidth - kRight + 16;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const double y = kTop + 8 + 20.0 * static_cast<double>(i);
      out_ << "<rect class=\"swatch\" x=\"" << fmt(x) << "\" y=\"" << fmt(y - 10) << "\" width=\"12\" height=\"12\" fill=\""
           << kPalette[i % std::size(kPalette)] << "\"/>\n";
      out_ << "<text x=\"" << fmt(x + 18) << "\" y=\"" << fmt(y) << "\">" << escape(names[i]) << "</text>\n";
    }
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
  double step_ = 1.0;
  double top_value_ = 1.0;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string histogram_svg(const MethodHistograms& counts, const std::string& title) {
  int lo = 0;
  int hi = -1;
  int peak = 0;
  bool any = false;
  for (const auto& [method, hist] : counts) {
    for (const auto& [nodes, runs] : hist) {
      if (runs < 0) throw std::invalid_argument("histogram counts must be >= 0");
      lo = any ? std::min(lo, nodes) : nodes;
      hi = any ? std::max(hi, nodes) : nodes;
      peak = std::max(peak, runs);
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("histogram needs at least one node count");

  Chart chart(title, "number of hidden nodes", "runs", peak, true);
  const int categories = hi - lo + 1;
  const double slot = Chart::plot_width() / categories;
  const double bar_width = 0.8 * slot / static_cast<double>(counts.size());
  for (int c = 0; c < categories; ++c) {
    const double slot_left = kLeft + slot * c;
    chart.category_label(slot_left + slot / 2, std::to_string(lo + c));
    for (std::size_t m = 0; m < counts.size(); ++m) {
      const auto it = counts[m].second.find(lo + c);
      if (it == counts[m].second.end() || it->second == 0) continue;
      chart.bar(slot_left + 0.1 * slot + bar_width * static_cast<double>(m), bar_width, it->second,
                kPalette[m % std::size(kPalette)]);
    }
  }
  std::vector<std::string> names;
  for (const auto& entry : counts) names.push_back(entry.first);
  chart.legend(names);
  return chart.finish();
}

void emit_histogram_svg(const MethodHistograms& counts, const std::filesystem::path& out_path,
                        const std::string& title) {
  write_text(out_path, histogram_svg(counts, title));
}

std::string error_bars_svg(const std::vector<MethodErrors>& errors, const std::string& title) {
  if (errors.empty()) throw std::invalid_argument("error chart needs at least one method");
  double peak = 0.0;
  for (const auto& e : errors) {
    if (!(e.train >= 0.0) || !(e.test >= 0.0)) throw std::invalid_argument("errors must be finite and >= 0");
    peak = std::max({peak, e.train, e.test});
  }
  Chart chart(title, "method", "mean squared error", peak, false);
  const double slot = Chart::plot_width() / static_cast<double>(errors.size());
  const double bar_width = 0.4 * slot;
  for (std::size_t m = 0; m < errors.size(); ++m) {
    const double slot_left = kLeft + slot * static_cast<double>(m);
    chart.category_label(slot_left + slot / 2, errors[m].method);
    chart.bar(slot_left + 0.1 * slot, bar_width, errors[m].train, kPalette[0]);
    chart.bar(slot_left + 0.1 * slot + bar_width, bar_width, errors[m].test, kPalette[1]);
  }
  chart.legend({"train", "test"});
  return chart.finish();
}

void emit_error_bars_svg(const std::vector<MethodErrors>& errors, const std::filesystem::path& out_path,
                         const std::string& title) {
  write_text(out_path, error_bars_svg(errors, title));
}

}  // namespace nodeprune
