#include "ringemit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ringemit {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

bool axes_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-12) return false;
  return true;
}

}  // namespace

const std::string* Dataset::find_meta(const std::string& key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return &v;
  return nullptr;
}

void write_csv(const Dataset& data, std::ostream& out) {
  for (const auto& [k, v] : data.metadata) out << "# " << k << " = " << v << "\n";
  out << "theta,phi,value\n";
  for (int i = 0; i < data.n_theta; ++i)
    for (int j = 0; j < data.n_phi; ++j) {
      const auto& v = data.values[static_cast<size_t>(i) * data.n_phi + j];
      out << fmt(data.thetas[i]) << ',' << fmt(data.phis[j]) << ',';
      if (v) out << fmt(*v);
      out << "\n";
    }
}

Dataset read_csv(std::istream& in) {
  Dataset d;
  std::string line;
  std::vector<double> th, ph;
  std::vector<std::optional<double>> vals;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      size_t eq = body.find(" = ");
      if (eq != std::string::npos)
        d.metadata.emplace_back(body.substr(0, eq).substr(body.find_first_not_of(' ')),
                                body.substr(eq + 3));
      continue;
    }
    if (!header_seen) {
      header_seen = true;  // theta,phi,value
      continue;
    }
    size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::runtime_error("read_csv: malformed row: " + line);
    th.push_back(std::stod(line.substr(0, c1)));
    ph.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    std::string v = line.substr(c2 + 1);
    if (v.empty())
      vals.emplace_back(std::nullopt);
    else
      vals.emplace_back(std::stod(v));
  }
  if (th.empty()) throw std::runtime_error("read_csv: no data rows");
  // recover the grid axes from the theta-major ordering
  size_t np = 1;
  while (np < th.size() && std::abs(th[np] - th[0]) <= 1e-15) ++np;
  if (th.size() % np != 0) throw std::runtime_error("read_csv: ragged grid");
  d.n_phi = static_cast<int>(np);
  d.n_theta = static_cast<int>(th.size() / np);
  for (int i = 0; i < d.n_theta; ++i) d.thetas.push_back(th[static_cast<size_t>(i) * np]);
  for (int j = 0; j < d.n_phi; ++j) d.phis.push_back(ph[j]);
  d.values = std::move(vals);
  return d;
}

void write_json(const Dataset& data, std::ostream& out) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta;
  for (const auto& [k, v] : data.metadata) meta[k] = v;
  j["metadata"] = meta;
  j["n_theta"] = data.n_theta;
  j["n_phi"] = data.n_phi;
  j["theta"] = data.thetas;
  j["phi"] = data.phis;
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const auto& v : data.values) {
    if (v)
      nodes.push_back(*v);
    else
      nodes.push_back(nullptr);
  }
  j["nodes"] = nodes;
  out << j.dump(2) << "\n";
}

Dataset read_json(std::istream& in) {
  nlohmann::json j;
  in >> j;
  Dataset d;
  for (const auto& [k, v] : j.at("metadata").items())
    d.metadata.emplace_back(k, v.get<std::string>());
  d.n_theta = j.at("n_theta").get<int>();
  d.n_phi = j.at("n_phi").get<int>();
  d.thetas = j.at("theta").get<std::vector<double>>();
  d.phis = j.at("phi").get<std::vector<double>>();
  for (const auto& v : j.at("nodes")) {
    if (v.is_null())
      d.values.emplace_back(std::nullopt);
    else
      d.values.emplace_back(v.get<double>());
  }
  return d;
}

void write_dataset_file(const Dataset& data, const std::string& path, const std::string& format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  if (format == "json")
    write_json(data, out);
  else
    write_csv(data, out);
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") return read_json(in);
  int c = in.peek();
  if (c == '{') return read_json(in);
  return read_csv(in);
}

GoldenReport golden_check(const Dataset& current, const Dataset& reference, double tolerance) {
  if (current.values.empty() || reference.values.empty())
    throw std::invalid_argument("golden_check: empty dataset");
  GoldenReport rep;
  rep.tolerance = tolerance;
  rep.resampled = !(current.n_theta == reference.n_theta && current.n_phi == reference.n_phi &&
                    axes_equal(current.thetas, reference.thetas) &&
                    axes_equal(current.phis, reference.phis));

  auto ref_at = [&](int i, int j) -> const std::optional<double>& {
    return reference.values[static_cast<size_t>(i) * reference.n_phi +
                            ((j % reference.n_phi) + reference.n_phi) % reference.n_phi];
  };
  // bilinear in theta (clamped) and phi (periodic)
  auto resample = [&](double th, double phi) -> std::optional<double> {
    const auto& rt = reference.thetas;
    int i0 = static_cast<int>(std::upper_bound(rt.begin(), rt.end(), th) - rt.begin()) - 1;
    i0 = std::clamp(i0, 0, reference.n_theta - 2);
    double tden = rt[i0 + 1] - rt[i0];
    double ft = tden > 0 ? std::clamp((th - rt[i0]) / tden, 0.0, 1.0) : 0.0;
    double dphi = 2.0 * std::numbers::pi / reference.n_phi;
    double p0 = reference.phis.front();
    double fj = (phi - p0) / dphi;
    int j0 = static_cast<int>(std::floor(fj));
    double fp = fj - j0;
    auto a = ref_at(i0, j0), b = ref_at(i0, j0 + 1), c = ref_at(i0 + 1, j0), d = ref_at(i0 + 1, j0 + 1);
    if (!a || !b || !c || !d) return std::nullopt;
    return (1 - ft) * ((1 - fp) * *a + fp * *b) + ft * ((1 - fp) * *c + fp * *d);
  };

  double num = 0.0, den = 0.0;
  std::vector<std::tuple<double, double, double>> devs;
  for (int i = 0; i < current.n_theta; ++i)
    for (int j = 0; j < current.n_phi; ++j) {
      const auto& cv = current.values[static_cast<size_t>(i) * current.n_phi + j];
      std::optional<double> rv = rep.resampled
                                     ? resample(current.thetas[i], current.phis[j])
                                     : reference.values[static_cast<size_t>(i) * current.n_phi + j];
      if (!cv || !rv) continue;
      double diff = *cv - *rv;
      num += diff * diff;
      den += *rv * *rv;
      ++rep.compared;
      devs.emplace_back(current.thetas[i], current.phis[j], std::abs(diff));
    }
  if (rep.compared == 0) throw std::invalid_argument("golden_check: no comparable nodes");
  rep.rel_l2 = den > 0.0 ? std::sqrt(num / den) : (num > 0.0 ? INFINITY : 0.0);
  rep.pass = rep.rel_l2 <= tolerance;
  std::sort(devs.begin(), devs.end(),
            [](const auto& a, const auto& b) { return std::get<2>(a) > std::get<2>(b); });
  devs.resize(std::min<size_t>(devs.size(), 3));
  rep.worst_nodes = std::move(devs);
  return rep;
}

std::string format_golden_report(const GoldenReport& rep) {
  std::ostringstream os;
  os << "golden check: " << (rep.pass ? "PASS" : "FAIL") << "  rel_l2 " << fmt(rep.rel_l2)
     << "  tolerance " << fmt(rep.tolerance) << "  nodes " << rep.compared
     << (rep.resampled ? "  (reference resampled)" : "");
  for (const auto& [th, ph, dev] : rep.worst_nodes)
    os << "\n  worst node theta " << fmt(th) << " phi " << fmt(ph) << " |dev| " << fmt(dev);
  return os.str();
}

}  // namespace ringemit
