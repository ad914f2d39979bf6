#include "npg/metrics.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "npg/errors.hpp"

namespace npg {

const char* const kMetricsCsvHeader =
    "iter,objective,grad_norm,natgrad_norm,alpha,predicted_kl,realized_kl,"
    "solver_iters,backtracks,ms";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

template <typename T>
std::string opt_int(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string opt_double(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double_field(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty())
    throw ConfigError("metrics csv: bad numeric field '" + s + "'");
  return v;
}

template <typename T>
std::optional<T> parse_opt_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return static_cast<T>(std::stoll(s));
}

std::optional<double> parse_opt_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double_field(s);
}

}  // namespace

std::string to_csv(const MetricsTable& table) {
  std::ostringstream out;
  out << kMetricsCsvHeader << '\n';
  for (const MetricsRow& r : table.rows) {
    out << r.iter << ',' << format_double(r.objective) << ','
        << format_double(r.grad_norm) << ',' << opt_double(r.natgrad_norm) << ','
        << opt_double(r.alpha) << ',' << opt_double(r.predicted_kl) << ','
        << opt_double(r.realized_kl) << ',' << opt_int(r.solver_iters) << ','
        << opt_int(r.backtracks) << ',' << opt_int(r.ms) << '\n';
  }
  return out.str();
}

MetricsTable metrics_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kMetricsCsvHeader)
    throw ConfigError("metrics csv: unexpected header");
  MetricsTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 10)
      throw ConfigError("metrics csv: expected 10 fields per row");
    MetricsRow row;
    row.iter = static_cast<std::size_t>(std::stoull(fields[0]));
    row.objective = parse_double_field(fields[1]);
    row.grad_norm = parse_double_field(fields[2]);
    row.natgrad_norm = parse_opt_double(fields[3]);
    row.alpha = parse_opt_double(fields[4]);
    row.predicted_kl = parse_opt_double(fields[5]);
    row.realized_kl = parse_opt_double(fields[6]);
    row.solver_iters = parse_opt_int<std::size_t>(fields[7]);
    row.backtracks = parse_opt_int<std::size_t>(fields[8]);
    row.ms = parse_opt_int<std::int64_t>(fields[9]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace npg
