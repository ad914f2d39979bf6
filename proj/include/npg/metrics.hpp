#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace npg {

// One training iteration. Blank (nullopt) fields render as empty CSV cells;
// vanilla runs leave the natural-gradient columns blank, and `ms` is blank
// unless timing was requested.
struct MetricsRow {
  std::size_t iter = 0;
  double objective = 0.0;
  double grad_norm = 0.0;
  std::optional<double> natgrad_norm;
  std::optional<double> alpha;
  std::optional<double> predicted_kl;
  std::optional<double> realized_kl;
  std::optional<std::size_t> solver_iters;
  std::optional<std::size_t> backtracks;
  std::optional<std::int64_t> ms;
};

struct MetricsTable {
  std::vector<MetricsRow> rows;
};

extern const char* const kMetricsCsvHeader;

// %.17g -- round-trips every double exactly.
std::string format_double(double v);

std::string to_csv(const MetricsTable& table);

// Inverse of to_csv; throws ConfigError on a schema mismatch.
MetricsTable metrics_from_csv(const std::string& text);

}  // namespace npg
