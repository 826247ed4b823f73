#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ringemit {

// Plot-ready angular dataset: ordered metadata plus a theta-major value grid.
// Undefined values (photon-count nulls in g2 maps) stay empty and are counted
// in the metadata by the writer's caller.
struct Dataset {
  std::vector<std::pair<std::string, std::string>> metadata;
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> thetas;
  std::vector<double> phis;
  std::vector<std::optional<double>> values;

  const std::string* find_meta(const std::string& key) const;
};

// CSV: `# key = value` header lines, then `theta,phi,value` rows; undefined
// values serialize as an empty third column.
void write_csv(const Dataset& data, std::ostream& out);
Dataset read_csv(std::istream& in);

// JSON mirror: {"metadata": {...}, "n_theta", "n_phi", "theta", "phi", "nodes"}
// with nodes a flat theta-major array (null where undefined).
void write_json(const Dataset& data, std::ostream& out);
Dataset read_json(std::istream& in);

void write_dataset_file(const Dataset& data, const std::string& path, const std::string& format);
Dataset read_dataset_file(const std::string& path);

struct GoldenReport {
  bool pass = false;
  double rel_l2 = 0.0;
  double tolerance = 0.0;
  bool resampled = false;
  size_t compared = 0;
  // worst absolute deviations, largest first: (theta, phi, |current - reference|)
  std::vector<std::tuple<double, double, double>> worst_nodes;
};

// Relative L2 distance between current and reference values; the reference is
// bilinearly resampled (periodic in phi, clamped in theta) when the grids
// differ. Throws when either dataset is empty or the overlap has no defined
// nodes.
GoldenReport golden_check(const Dataset& current, const Dataset& reference, double tolerance);

std::string format_golden_report(const GoldenReport& report);

}  // namespace ringemit
