#include <cmath>
#include <numbers>
#include <complex>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ringemit/atomic_states.hpp"
#include "ringemit/dataset.hpp"
#include "ringemit/dipole_kernel.hpp"
#include "ringemit/emission.hpp"
#include "ringemit/geometry.hpp"
#include "ringemit/oracle.hpp"

namespace {

using namespace ringemit;

constexpr const char* units_statement = "lengths in lambda_L, rates in Gamma";

struct Config {
  std::string command;
  int n_sites = 15;
  double spacing = 1.0;
  double theta_l = 0.0;
  double phi_l = 0.0;
  int p = 1;
  std::string grid = "48x48";
  double ref_theta = 0.83;
  double ref_phi = std::numbers::pi;
  std::string format = "csv";
  std::string out;
  std::string golden;
  double golden_tol = 0.01;
};

std::pair<int, int> parse_grid(const std::string& s) {
  size_t x = s.find('x');
  if (x == std::string::npos) throw std::invalid_argument("grid must look like 48x48");
  int nt = std::stoi(s.substr(0, x));
  int np = std::stoi(s.substr(x + 1));
  return {nt, np};
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void base_metadata(Dataset& d, const Config& cfg) {
  d.metadata.emplace_back("command", cfg.command);
  d.metadata.emplace_back("n_sites", std::to_string(cfg.n_sites));
  d.metadata.emplace_back("spacing", num(cfg.spacing));
  d.metadata.emplace_back("theta_l", num(cfg.theta_l));
  d.metadata.emplace_back("phi_l", num(cfg.phi_l));
  d.metadata.emplace_back("grid", cfg.grid);
  d.metadata.emplace_back("units", units_statement);
  d.metadata.emplace_back("version", library_version);
}

void fill_grid(Dataset& d, const MapGrid& grid) {
  d.n_theta = grid.n_theta;
  d.n_phi = grid.n_phi;
  d.thetas = grid.thetas;
  d.phis = grid.phis;
}

void fill_grid(Dataset& d, const AngularGrid& grid) {
  d.n_theta = grid.n_theta;
  d.n_phi = grid.n_phi;
  d.thetas = grid.thetas;
  d.phis = grid.phis;
}

double integrate(const AngularGrid& grid, const std::vector<double>& vals) {
  double s = 0.0, c = 0.0;
  for (size_t i = 0; i < vals.size(); ++i) {
    double y = grid.weights[i] * vals[i] - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

void emit(const Dataset& d, const Config& cfg) {
  if (cfg.out.empty()) {
    if (cfg.format == "json")
      write_json(d, std::cout);
    else
      write_csv(d, std::cout);
  } else {
    write_dataset_file(d, cfg.out, cfg.format);
  }
}

// Custom tables (overlaps, modes) share the metadata style but not the
// theta,phi,value schema.
void emit_table(const std::vector<std::pair<std::string, std::string>>& meta,
                const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows, const Config& cfg) {
  std::ostringstream os;
  if (cfg.format == "json") {
    nlohmann::ordered_json j, m;
    for (const auto& [k, v] : meta) m[k] = v;
    j["metadata"] = m;
    j["columns"] = columns;
    j["rows"] = rows;
    os << j.dump(2) << "\n";
  } else {
    for (const auto& [k, v] : meta) os << "# " << k << " = " << v << "\n";
    for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12e", row[i]);
        os << (i ? "," : "") << buf;
      }
      os << "\n";
    }
  }
  if (cfg.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(cfg.out);
    if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
    f << os.str();
  }
}

int finish_map(Dataset& d, const Config& cfg) {
  emit(d, cfg);
  if (!cfg.golden.empty()) {
    Dataset ref = read_dataset_file(cfg.golden);
    GoldenReport rep = golden_check(d, ref, cfg.golden_tol);
    std::cout << format_golden_report(rep) << "\n";
    return rep.pass ? 0 : 1;
  }
  return 0;
}

int run_intensity(const Config& cfg, bool perpendicular) {
  auto [nt, np] = parse_grid(cfg.grid);
  RingLattice lat = build_ring(cfg.n_sites, cfg.spacing);
  LaserDrive drive{cfg.theta_l, cfg.phi_l};
  EmissionKernel kernel(lat, drive);
  MapGrid grid = build_map_grid(nt, np);
  std::vector<double> vals =
      perpendicular ? perpendicular_map(kernel, grid.nodes) : intensity_map(kernel, grid.nodes);
  AngularGrid quad = build_angular_grid(nt, np);
  std::vector<double> qvals =
      perpendicular ? perpendicular_map(kernel, quad.nodes) : intensity_map(kernel, quad.nodes);

  Dataset d;
  base_metadata(d, cfg);
  d.metadata.emplace_back("integral_intensity", num(integrate(quad, qvals)));
  fill_grid(d, grid);
  for (double v : vals) d.values.emplace_back(v < 0.0 && v >= -1e-12 ? 0.0 : v);
  return finish_map(d, cfg);
}

int run_pair_intensity(const Config& cfg) {
  auto [nt, np] = parse_grid(cfg.grid);
  RingLattice lat = build_ring(cfg.n_sites, cfg.spacing);
  EmissionKernel kernel(lat, {cfg.theta_l, cfg.phi_l});
  PairSetup setup = kernel.pair_setup(pair_state(cfg.n_sites, cfg.p));
  MapGrid grid = build_map_grid(nt, np);
  std::vector<double> vals = pair_intensity_map(kernel, setup, grid.nodes);
  AngularGrid quad = build_angular_grid(nt, np);
  std::vector<double> qvals = pair_intensity_map(kernel, setup, quad.nodes);

  Dataset d;
  base_metadata(d, cfg);
  d.metadata.emplace_back("p", std::to_string(cfg.p));
  d.metadata.emplace_back("integral_intensity", num(integrate(quad, qvals)));
  fill_grid(d, grid);
  for (double v : vals) d.values.emplace_back(v < 0.0 && v >= -1e-12 ? 0.0 : v);
  return finish_map(d, cfg);
}

int run_g2_map(const Config& cfg) {
  auto [nt, np] = parse_grid(cfg.grid);
  RingLattice lat = build_ring(cfg.n_sites, cfg.spacing);
  EmissionKernel kernel(lat, {cfg.theta_l, cfg.phi_l});
  PairSetup setup = kernel.pair_setup(pair_state(cfg.n_sites, cfg.p));
  MapGrid grid = build_map_grid(nt, np);
  Direction ref{cfg.ref_theta, cfg.ref_phi};
  std::vector<std::optional<double>> vals = g2_map(kernel, setup, grid.nodes, ref);
  size_t undefined = 0;
  for (const auto& v : vals)
    if (!v) ++undefined;
  AngularGrid quad = build_angular_grid(nt, np);
  std::vector<double> qvals = pair_intensity_map(kernel, setup, quad.nodes);

  Dataset d;
  base_metadata(d, cfg);
  d.metadata.emplace_back("p", std::to_string(cfg.p));
  d.metadata.emplace_back("theta_ref", num(cfg.ref_theta));
  d.metadata.emplace_back("phi_ref", num(cfg.ref_phi));
  d.metadata.emplace_back("integral_pair_intensity", num(integrate(quad, qvals)));
  d.metadata.emplace_back("undefined_nodes", std::to_string(undefined));
  fill_grid(d, grid);
  d.values = std::move(vals);
  return finish_map(d, cfg);
}

int run_overlaps(const Config& cfg, bool p_given) {
  std::vector<int> ps;
  if (p_given) {
    ps.push_back(cfg.p);
  } else {
    for (int p : {1, 5, 10})
      if (p <= cfg.n_sites / 2) ps.push_back(p);
  }
  std::vector<std::vector<double>> rows;
  for (int p : ps) {
    TwoExcitationAmplitude pair = pair_state(cfg.n_sites, p);
    for (int l = 0; l <= cfg.n_sites / 2; ++l) {
      std::complex<double> xi = bosonic_overlap(momentum_mode_pair(cfg.n_sites, l), pair);
      rows.push_back({double(p), double(l), xi.real(), xi.imag(), std::norm(xi)});
    }
  }
  std::vector<std::pair<std::string, std::string>> meta = {
      {"command", cfg.command},
      {"n_sites", std::to_string(cfg.n_sites)},
      {"units", units_statement},
      {"version", library_version},
  };
  emit_table(meta, {"p", "l", "xi_re", "xi_im", "weight"}, rows, cfg);
  return 0;
}

int run_modes(const Config& cfg) {
  RingLattice lat = build_ring(cfg.n_sites, cfg.spacing);
  EmissionKernel kernel(lat, {cfg.theta_l, cfg.phi_l});
  const auto& basis = kernel.basis();
  Eigen::VectorXcd bl = kernel.geometric_factor_B({cfg.theta_l, cfg.phi_l});
  std::vector<std::vector<double>> rows;
  for (int k = 0; k < cfg.n_sites; ++k)
    rows.push_back({double(k), basis.rates(k).real(), basis.rates(k).imag(),
                    std::norm(bl(k)) / double(cfg.n_sites) / double(cfg.n_sites)});
  std::vector<std::pair<std::string, std::string>> meta = {
      {"command", cfg.command},
      {"n_sites", std::to_string(cfg.n_sites)},
      {"spacing", num(cfg.spacing)},
      {"theta_l", num(cfg.theta_l)},
      {"phi_l", num(cfg.phi_l)},
      {"degree_of_collectivity", num(degree_of_collectivity(basis))},
      {"units", units_statement},
      {"version", library_version},
  };
  emit_table(meta, {"k", "decay_rate", "frequency_shift", "drive_weight"}, rows, cfg);
  return 0;
}

int run_oracle_check(const Config& cfg, bool p_given) {
  auto [nt, np] = parse_grid(cfg.grid);
  RingLattice lat = build_ring(cfg.n_sites, cfg.spacing);
  LaserDrive drive{cfg.theta_l, cfg.phi_l};
  EmissionKernel kernel(lat, drive);
  AngularGrid quad = build_angular_grid(nt, np);
  oracle::ModeGrid mgrid = oracle::build_mode_grid(lat, quad);
  std::vector<double> brute = oracle::oracle_single_intensity(lat, drive, spin_wave(cfg.n_sites), mgrid);
  std::vector<double> closed = intensity_map(kernel, quad.nodes);
  double num2 = 0.0, den2 = 0.0;
  for (size_t i = 0; i < brute.size(); ++i) {
    num2 += quad.weights[i] * (brute[i] - closed[i]) * (brute[i] - closed[i]);
    den2 += quad.weights[i] * closed[i] * closed[i];
  }
  double rel = std::sqrt(num2 / den2);

  Dataset d;
  base_metadata(d, cfg);
  d.metadata.emplace_back("bandwidth", num(mgrid.bandwidth));
  d.metadata.emplace_back("frequency_nodes", std::to_string(mgrid.frequencies.size()));
  d.metadata.emplace_back("rel_l2_vs_closed_form", num(rel));
  bool ok = rel <= 0.02;

  if (p_given) {
    TwoExcitationAmplitude pair = pair_state(cfg.n_sites, cfg.p);
    PairSetup setup = kernel.pair_setup(pair);
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> uth(0.3, std::numbers::pi - 0.3);
    std::uniform_real_distribution<double> uph(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      Direction a{uth(rng), uph(rng)}, b{uth(rng), uph(rng)};
      double go = oracle::oracle_pair_correlation(lat, drive, pair, mgrid, a, b);
      double gc = kernel.pair_correlation_G(setup, a, b);
      worst = std::max(worst, std::abs(go / gc - 1.0));
    }
    d.metadata.emplace_back("p", std::to_string(cfg.p));
    d.metadata.emplace_back("pair_worst_rel_dev", num(worst));
    ok = ok && worst <= 0.03;
  }

  fill_grid(d, quad);
  for (double v : brute) d.values.emplace_back(v);
  emit(d, cfg);
  std::cout << "oracle check: " << (ok ? "PASS" : "FAIL") << "  rel_l2 " << num(rel) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collective single- and two-photon emission from ring lattices"};
  Config cfg;
  app.set_config("--config", "", "config file, key = value with the same keys as the flags");
  app.add_option("command,--command", cfg.command,
                 "one of: intensity, intensity-perp, pair-intensity, g2-map, overlaps, modes, "
                 "oracle-check")
      ->required()
      ->check(CLI::IsMember({"intensity", "intensity-perp", "pair-intensity", "g2-map", "overlaps",
                             "modes", "oracle-check"}));
  app.add_option("--n-sites", cfg.n_sites, "number of emitters")->check(CLI::Range(1, 200));
  app.add_option("--spacing", cfg.spacing, "arc spacing in lambda_L, (0, 10]")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 10.0));
  app.add_option("--theta-l", cfg.theta_l, "laser polar angle");
  app.add_option("--phi-l", cfg.phi_l, "laser azimuth");
  auto* popt = app.add_option("--p", cfg.p, "pair-state index, 1 <= p <= N/2")->check(CLI::Range(1, 100));
  app.add_option("--grid", cfg.grid, "angular grid as THETAxPHI, e.g. 48x48");
  app.add_option("--ref-theta", cfg.ref_theta, "g2 reference polar angle");
  app.add_option("--ref-phi", cfg.ref_phi, "g2 reference azimuth");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "output path (stdout if omitted)");
  app.add_option("--golden", cfg.golden, "reference dataset to compare against");
  app.add_option("--golden-tol", cfg.golden_tol, "relative L2 tolerance for --golden");

  CLI11_PARSE(app, argc, argv);

  try {
    bool p_given = popt->count() > 0;
    if (cfg.command == "intensity") return run_intensity(cfg, false);
    if (cfg.command == "intensity-perp") return run_intensity(cfg, true);
    if (cfg.command == "pair-intensity") return run_pair_intensity(cfg);
    if (cfg.command == "g2-map") return run_g2_map(cfg);
    if (cfg.command == "overlaps") return run_overlaps(cfg, p_given);
    if (cfg.command == "modes") return run_modes(cfg);
    if (cfg.command == "oracle-check") return run_oracle_check(cfg, p_given);
    std::cerr << "error: unknown command " << cfg.command << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
