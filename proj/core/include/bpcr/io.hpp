#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "bpcr/hyperparams.hpp"
#include "bpcr/regression.hpp"
#include "bpcr/series.hpp"

namespace bpcr::io {

// %.17g; zero is always "0" and non-finite values are "null" in JSON, "nan"/"inf" in CSV.
std::string format_double(double v);

/// One decimal value per line with an optional `y` header on the first
/// line; blank lines are skipped. Throws InputError naming the offending
/// line for anything else, including NaN/inf and an empty file.
DataSeries read_series(std::istream& in);
DataSeries read_series(const std::filesystem::path& path);

void write_series(std::ostream& out, std::span<const double> values);

std::string to_string(Estimator estimator);
std::string to_string(CurveMode mode);

/// result.json document. Objects use sorted keys.
nlohmann::json result_to_json(const FitReport& report, const FitOptions& options);

/// Canonical text: sorted keys, two-space indent, 17 significant digits.
/// dump(parse(dump(x))) == dump(x).
std::string canonical_dump(const nlohmann::json& doc);

// t, y, curve_mean, curve_std; one row per observation.
void write_curve_csv(std::ostream& out, const DataSeries& y, const RegressionResult& result);
// t, b_total; rows t = 0..n.
void write_breaks_csv(std::ostream& out, const RegressionResult& result);
// sigma, log_evidence, k_hat, is_estimate; the row at index `marked` has is_estimate = 1.
void write_scan_csv(std::ostream& out, std::span<const ScanPoint> points, std::size_t marked);

// Opens `path` for writing, calls `body`, throws std::runtime_error on I/O failure.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

}  // namespace bpcr::io
