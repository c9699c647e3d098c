#include "cachesim/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cachesim/errors.hpp"

namespace cachesim {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

namespace {

constexpr const char* kCsvHeader =
    "preset,policy,m,n,beta,rho,M,m1,k,delta,trial,seed,matched,unserved,rate";

void append_point_prefix(std::ostream& out, const SweepResult& result,
                         const PointResult& point) {
  const auto& cfg = point.point.config;
  out << result.spec.name << ',' << to_string(result.spec.policy) << ','
      << cfg.m << ',' << cfg.n << ',' << format_double(cfg.beta) << ','
      << format_double(cfg.rho) << ',' << cfg.total_memory << ','
      << point.point.m1 << ',' << point.point.k << ','
      << format_double(result.spec.delta) << ',';
}

std::string axis_label(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::FileCount: return "n (files)";
    case SweepAxis::RichCacheSize: return "k (slots per rich cache)";
    case SweepAxis::RichCacheCount: return "m1 (rich caches)";
  }
  return "";
}

std::string curve_label(const ExperimentSpec& spec, int curve) {
  const int divisor = spec.m1_divisors[curve];
  if (divisor == 1) return "m1 = m";
  return "m1 = m/" + std::to_string(divisor);
}

}  // namespace

std::string render_trials_csv(const SweepResult& result) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& point : result.points) {
    for (std::size_t t = 0; t < point.trials.size(); ++t) {
      const TrialRecord& trial = point.trials[t];
      append_point_prefix(out, result, point);
      out << t << ',' << trial.seed << ',' << trial.matched << ','
          << trial.unserved << ',' << trial.rate << '\n';
    }
  }
  return out.str();
}

std::string render_summary_csv(const SweepResult& result) {
  std::ostringstream out;
  out << kCsvHeader << ",stderr\n";
  for (const auto& point : result.points) {
    append_point_prefix(out, result, point);
    out << -1 << ',' << result.spec.master_seed << ','
        << format_double(point.mean_matched) << ','
        << format_double(point.mean_unserved) << ','
        << format_double(point.mean_rate) << ','
        << format_double(point.stderr_rate) << '\n';
  }
  return out.str();
}

std::string render_sweep_svg(const SweepResult& result) {
  constexpr double kWidth = 800, kHeight = 520;
  constexpr double kLeft = 70, kRight = 640, kTop = 40, kBottom = 460;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

  double x_min = 1e300, x_max = -1e300, y_max = 0.0;
  for (const auto& point : result.points) {
    x_min = std::min(x_min, static_cast<double>(point.point.axis_value));
    x_max = std::max(x_max, static_cast<double>(point.point.axis_value));
    y_max = std::max(y_max, point.mean_rate + point.stderr_rate);
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= 0.0) y_max = 1.0;

  const auto x_of = [&](double v) {
    return kLeft + (v - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  const auto y_of = [&](double v) {
    return kBottom - v / y_max * (kBottom - kTop);
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" fill=\"white\"/>\n";
  out << "  <text x=\"" << (kLeft + kRight) / 2 << "\" y=\"24\" "
      << "text-anchor=\"middle\" font-size=\"16\">" << result.spec.name << " ("
      << to_string(result.spec.policy) << ", beta=" << format_double(result.spec.beta)
      << ")</text>\n";

  // Axes.
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\""
      << kRight << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";
  out << "  <text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kBottom + 40
      << "\" text-anchor=\"middle\" font-size=\"13\">"
      << axis_label(result.spec.axis) << "</text>\n";
  out << "  <text x=\"18\" y=\"" << (kTop + kBottom) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << (kTop + kBottom) / 2 << ")\">mean transmission rate</text>\n";

  // X ticks at each distinct sweep value; 5 evenly spaced Y ticks.
  {
    std::vector<int> xs;
    for (const auto& point : result.points) xs.push_back(point.point.axis_value);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (int v : xs) {
      const double x = x_of(v);
      out << "  <line x1=\"" << x << "\" y1=\"" << kBottom << "\" x2=\"" << x
          << "\" y2=\"" << kBottom + 5 << "\" stroke=\"black\"/>\n";
      out << "  <text x=\"" << x << "\" y=\"" << kBottom + 20
          << "\" text-anchor=\"middle\" font-size=\"11\">" << v << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
      const double v = y_max * i / 4.0;
      const double y = y_of(v);
      out << "  <line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\""
          << kLeft << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
      out << "  <text x=\"" << kLeft - 9 << "\" y=\"" << y + 4
          << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(v)
          << "</text>\n";
    }
  }

  // One polyline per curve.
  const auto curve_count = result.spec.m1_divisors.size();
  const auto points_per_curve = result.points.size() / curve_count;
  for (std::size_t c = 0; c < curve_count; ++c) {
    const char* color = kColors[c % (sizeof(kColors) / sizeof(kColors[0]))];
    out << "  <polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < points_per_curve; ++i) {
      const auto& point = result.points[c * points_per_curve + i];
      if (i) out << ' ';
      out << format_double(x_of(point.point.axis_value)) << ','
          << format_double(y_of(point.mean_rate));
    }
    out << "\"/>\n";
    const double ly = kTop + 18.0 * static_cast<double>(c);
    out << "  <line x1=\"" << kRight + 16 << "\" y1=\"" << ly << "\" x2=\""
        << kRight + 40 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "  <text x=\"" << kRight + 46 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\">" << curve_label(result.spec, static_cast<int>(c))
        << "</text>\n";
  }

  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return buffer.str();
}

}  // namespace cachesim
