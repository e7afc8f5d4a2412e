#include "bpcr/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "bpcr/errors.hpp"

namespace bpcr::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void dump_value(const nlohmann::json& v, std::string& out, int indent);

void newline(std::string& out, int indent) {
  out += '\n';
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
}

void dump_value(const nlohmann::json& v, std::string& out, int indent) {
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(out, indent + 1);
        out += nlohmann::json(it.key()).dump();
        out += ": ";
        dump_value(it.value(), out, indent + 1);
      }
      newline(out, indent);
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        first = false;
        newline(out, indent + 1);
        dump_value(item, out, indent + 1);
      }
      newline(out, indent);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_double(d) : "null";
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

nlohmann::json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DataSeries read_series(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view field = trim(line);
    if (field.empty()) continue;
    if (line_no == 1 && field == "y") continue;
    std::string_view digits = field;
    if (digits.size() > 1 && digits.front() == '+') digits.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw InputError("line " + std::to_string(line_no) + ": not a decimal value: '" + std::string(field) + "'");
    }
    if (!std::isfinite(v)) throw InputError("line " + std::to_string(line_no) + ": non-finite value");
    values.push_back(v);
  }
  if (values.empty()) throw InputError("no data rows");
  return DataSeries(std::move(values));
}

DataSeries read_series(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return read_series(in);
}

void write_series(std::ostream& out, std::span<const double> values) {
  out << "y\n";
  for (double v : values) out << format_double(v) << '\n';
}

std::string to_string(Estimator estimator) {
  return estimator == Estimator::Moments ? "moments" : "quantile";
}

std::string to_string(CurveMode mode) {
  return mode == CurveMode::MapK ? "map-k" : "mixture";
}

nlohmann::json result_to_json(const FitReport& report, const FitOptions& options) {
  const RegressionResult& r = report.result;
  nlohmann::json doc;
  doc["n"] = r.curve.mean.size();
  doc["k_max"] = report.k_max;
  doc["noise"] = bpcr::to_string(options.noise);
  doc["prior"] = bpcr::to_string(options.prior);
  doc["estimator"] = to_string(report.estimator);
  doc["curve_mode"] = to_string(options.curve);
  doc["rho_subtract"] = options.rho_subtract;
  doc["hyperparameters"] = {{"nu", report.hp.nu}, {"rho", report.hp.rho}, {"sigma", report.hp.sigma}};
  doc["log_evidence"] = number_or_null(r.log_evidence);
  doc["ck"] = r.ck;
  doc["k_hat"] = r.k_hat;
  doc["t_hat"] = r.boundaries.t_hat;

  nlohmann::json means = nlohmann::json::array();
  nlohmann::json stds = nlohmann::json::array();
  nlohmann::json empty = nlohmann::json::array();
  for (std::size_t m = 0; m < r.segments.size(); ++m) {
    const SegmentLevel& s = r.segments[m];
    means.push_back(s.empty ? nlohmann::json(nullptr) : nlohmann::json(s.mean));
    stds.push_back(s.empty ? nlohmann::json(nullptr) : nlohmann::json(s.std_dev));
    if (s.empty) empty.push_back(m + 1);
  }
  doc["seg_mean"] = means;
  doc["seg_std"] = stds;
  doc["empty_segments"] = empty;

  doc["ll"] = r.loglik.ll;
  doc["ll_mean"] = r.loglik.mean;
  doc["ll_std"] = r.loglik.std;
  doc["ll_rel"] = r.loglik.relative();
  return doc;
}

std::string canonical_dump(const nlohmann::json& doc) {
  std::string out;
  dump_value(doc, out, 0);
  out += '\n';
  return out;
}

void write_curve_csv(std::ostream& out, const DataSeries& y, const RegressionResult& result) {
  out << "t,y,curve_mean,curve_std\n";
  for (std::size_t t = 0; t < y.size(); ++t) {
    out << (t + 1) << ',' << format_double(y[t]) << ',' << format_double(result.curve.mean[t]) << ','
        << format_double(result.curve_std[t]) << '\n';
  }
}

void write_breaks_csv(std::ostream& out, const RegressionResult& result) {
  out << "t,b_total\n";
  for (std::size_t t = 0; t < result.boundaries.b_total.size(); ++t) {
    out << t << ',' << format_double(result.boundaries.b_total[t]) << '\n';
  }
}

void write_scan_csv(std::ostream& out, std::span<const ScanPoint> points, std::size_t marked) {
  out << "sigma,log_evidence,k_hat,is_estimate\n";
  for (std::size_t s = 0; s < points.size(); ++s) {
    out << format_double(points[s].sigma) << ',' << format_double(points[s].log_evidence) << ',' << points[s].k_hat
        << ',' << (s == marked ? 1 : 0) << '\n';
  }
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  body(out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace bpcr::io
