#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dunklsq {

/// Shortest deterministic decimal form that round-trips a double.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view data);

/// 16-hex-digit digest of a canonical config string; stamped into outputs so
/// identical runs are byte-identical and mismatched configs are detectable.
std::string config_hash(std::string_view canonical);

/// RFC 4180 writer: fields quoted when needed, CRLF record separators.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& os_;
};

/// Minimal self-contained SVG line/scatter plot.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label);
  void add_series(std::string name, std::vector<double> xs, std::vector<double> ys,
                  bool scatter = false);
  std::string render() const;

 private:
  struct Series {
    std::string name;
    std::vector<double> xs, ys;
    bool scatter;
  };
  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
};

}  // namespace dunklsq
