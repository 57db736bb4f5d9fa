// Command-line front end over the bhfm C interface.

#include <bhfm/bhfm.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kDeviation = 1, kUsage = 2, kNumerical = 3 };

struct Failure {
  int code;
  std::string message;
};

int exit_code(bhfm_status s) {
  switch (s) {
    case BHFM_OK:
      return kOk;
    case BHFM_ERR_INVALID_ARGUMENT:
    case BHFM_ERR_DIMENSION:
    case BHFM_ERR_IO:
      return kUsage;
    case BHFM_ERR_NUMERICAL:
    case BHFM_ERR_INTERNAL:
      return kNumerical;
  }
  return kNumerical;
}

void check(bhfm_status s, const char* what) {
  if (s != BHFM_OK) throw Failure{exit_code(s), std::string(what) + ": " + bhfm_last_error()};
}

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using Curve = std::unique_ptr<bhfm_curve, Deleter<bhfm_curve, bhfm_curve_destroy>>;
using NearField = std::unique_ptr<bhfm_nearfield, Deleter<bhfm_nearfield, bhfm_nearfield_destroy>>;
using Spectrum = std::unique_ptr<bhfm_spectrum, Deleter<bhfm_spectrum, bhfm_spectrum_destroy>>;
using Grid = std::unique_ptr<bhfm_grid, Deleter<bhfm_grid, bhfm_grid_destroy>>;

struct WaveOptions {
  double k = 2.0;
  double radius = 3.0;
  int sensors = 64;
  int nodes = 256;
  int trunc = 10;

  bhfm_wave_params params() const { return {k, radius, sensors, nodes, trunc}; }
};

void add_wave_options(CLI::App* cmd, WaveOptions& w) {
  cmd->add_option("--k", w.k, "wavenumber")->capture_default_str();
  cmd->add_option("--radius", w.radius, "measurement circle radius R")->capture_default_str();
  cmd->add_option("-M,--sensors", w.sensors, "sources/receivers on the circle")->capture_default_str();
  cmd->add_option("--nodes", w.nodes, "Nystrom nodes on the obstacle (even)")->capture_default_str();
  cmd->add_option("--trunc", w.trunc, "series truncation of the transforms")->capture_default_str();
}

NearField simulate(const std::string& shape, const bhfm_wave_params& params) {
  bhfm_curve* raw_curve = nullptr;
  check(bhfm_curve_create(shape.c_str(), params.n_boundary, &raw_curve), "curve");
  Curve curve(raw_curve);
  bhfm_nearfield* raw = nullptr;
  check(bhfm_simulate(curve.get(), &params, &raw), "simulate");
  return NearField(raw);
}

NearField with_noise(NearField data, double delta, std::uint64_t seed) {
  if (delta == 0.0) return data;
  bhfm_nearfield* raw = nullptr;
  check(bhfm_nearfield_add_noise(data.get(), delta, seed, &raw), "noise");
  return NearField(raw);
}

NearField load(const std::string& path) {
  bhfm_nearfield* raw = nullptr;
  check(bhfm_nearfield_load(path.c_str(), &raw), "load");
  return NearField(raw);
}

std::pair<double, double> component_norms(const bhfm_nearfield* data) {
  double pr = 0.0, ev = 0.0;
  check(bhfm_nearfield_component_norms(data, &pr, &ev), "norms");
  return {pr, ev};
}

// Entrywise relative error of U and L against the closed-form disk solution.
double disk_oracle_error(const bhfm_nearfield* data, double a) {
  bhfm_wave_params p{};
  double delta = 0.0;
  std::uint64_t seed = 0;
  check(bhfm_nearfield_params(data, &p, &delta, &seed), "params");
  const std::size_t m = static_cast<std::size_t>(p.sensors);
  std::vector<double> u(2 * m * m), lap(2 * m * m);
  check(bhfm_nearfield_matrices(data, u.data(), lap.data(), u.size()), "matrices");
  const double k2 = p.k * p.k;
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double ti = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
    const double x[2] = {p.radius * std::cos(ti), p.radius * std::sin(ti)};
    for (std::size_t j = 0; j < m; ++j) {
      const double tj = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
      const double y[2] = {p.radius * std::cos(tj), p.radius * std::sin(tj)};
      double pr[2], ev[2];
      check(bhfm_disk_field(p.k, a, x, y, pr, ev), "disk field");
      const std::complex<double> upr(pr[0], pr[1]), uev(ev[0], ev[1]);
      const std::complex<double> u_ref = upr + uev, l_ref = -k2 * upr + k2 * uev;
      const std::size_t at = 2 * (i * m + j);
      const std::complex<double> u_num(u[at], u[at + 1]), l_num(lap[at], lap[at + 1]);
      worst = std::max({worst, std::abs(u_num - u_ref) / std::abs(u_ref), std::abs(l_num - l_ref) / std::abs(l_ref)});
    }
  }
  return worst;
}

struct GridArg {
  double lo = -3.0;
  double hi = 3.0;
  int n = 200;
};

GridArg parse_grid(const std::string& text) {
  GridArg g;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.lo, &g.hi, &g.n, &tail) != 3)
    throw Failure{kUsage, "--grid expects xmin:xmax:n, got '" + text + "'"};
  return g;
}

bhfm_filter_kind parse_filter(const std::string& name) {
  if (name == "tikhonov") return BHFM_FILTER_TIKHONOV;
  if (name == "glsm") return BHFM_FILTER_GLSM;
  if (name == "cutoff") return BHFM_FILTER_CUTOFF;
  return BHFM_FILTER_NONE;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string shape = "kite";
  WaveOptions wave;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  NearField data = simulate(a.shape, a.wave.params());
  const auto [pr, ev] = component_norms(data.get());
  std::printf("shape %s  k %.17g  R %.17g  M %d  nodes %d\n", a.shape.c_str(), a.wave.k, a.wave.radius,
              a.wave.sensors, a.wave.nodes);
  std::printf("||L - k^2 U||_inf = %.6e\n||L + k^2 U||_inf = %.6e\n", pr, ev);
  if (a.shape.rfind("disk:", 0) == 0) {
    const double err = disk_oracle_error(data.get(), std::stod(a.shape.substr(5)));
    std::printf("disk oracle max relative error = %.3e\n", err);
  }
  data = with_noise(std::move(data), a.delta, a.seed);
  if (!a.out.empty()) {
    check(bhfm_nearfield_save(data.get(), a.out.c_str()), "save");
    std::printf("wrote %s\n", a.out.c_str());
  }
  return kOk;
}

// ---- noise ------------------------------------------------------------------

struct NoiseArgs {
  std::string data;
  double delta = 0.05;
  std::uint64_t seed = 0;
  std::string out;
};

int run_noise(const NoiseArgs& a) {
  NearField data = with_noise(load(a.data), a.delta, a.seed);
  double estimate = 0.0;
  check(bhfm_nearfield_noise_estimate(data.get(), 0, &estimate), "noise estimate");
  std::printf("delta %.17g  seed %llu  Error = %.6e\n", a.delta, static_cast<unsigned long long>(a.seed), estimate);
  check(bhfm_nearfield_save(data.get(), a.out.c_str()), "save");
  std::printf("wrote %s\n", a.out.c_str());
  return kOk;
}

// ---- reconstruct ------------------------------------------------------------

struct ReconstructArgs {
  std::string data;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::string filter = "tikhonov";
  double alpha = 1e-4;
  std::string policy = "fixed";
  double p = 0.125;
  std::optional<int> trunc;
  std::string grid = "-3:3:200";
  bool scattered_only = false;
  std::string out = "indicator.csv";
  std::string heatmap;
  std::string meta;
};

int run_reconstruct(const ReconstructArgs& a) {
  const GridArg g = parse_grid(a.grid);
  const bhfm_filter_kind kind = parse_filter(a.filter);

  NearField data = load(a.data);
  if (a.trunc) check(bhfm_nearfield_set_trunc(data.get(), *a.trunc), "trunc");
  data = with_noise(std::move(data), a.delta, a.seed);

  bhfm_spectrum* raw_spectrum = nullptr;
  check(bhfm_spectrum_create(data.get(), a.scattered_only ? 1 : 0, &raw_spectrum), "spectrum");
  Spectrum spectrum(raw_spectrum);
  double estimate = 0.0;
  check(bhfm_spectrum_noise_estimate(spectrum.get(), &estimate), "noise estimate");

  double alpha = 0.0;
  const bool apriori = a.policy == "apriori";
  if (kind != BHFM_FILTER_NONE) check(bhfm_select_alpha(apriori ? 1 : 0, a.alpha, a.p, kind, estimate, &alpha), "alpha");

  const bhfm_grid_spec spec{g.lo, g.hi, g.lo, g.hi, g.n, g.n};
  bhfm_grid* raw_grid = nullptr;
  check(bhfm_grid_evaluate(spectrum.get(), &spec, kind, alpha, &raw_grid), "grid");
  Grid grid(raw_grid);
  std::uint64_t checksum = 0;
  check(bhfm_grid_checksum(grid.get(), &checksum), "checksum");

  std::printf("Error = %.6e\nalpha = %.6e\nchecksum = %016llx\n", estimate, alpha,
              static_cast<unsigned long long>(checksum));
  check(bhfm_grid_write_csv(grid.get(), a.out.c_str()), "csv");
  std::printf("wrote %s\n", a.out.c_str());
  if (!a.heatmap.empty()) {
    check(bhfm_grid_write_pgm(grid.get(), a.heatmap.c_str()), "heatmap");
    std::printf("wrote %s\n", a.heatmap.c_str());
  }
  if (!a.meta.empty()) {
    bhfm_wave_params p{};
    double data_delta = 0.0;
    std::uint64_t data_seed = 0;
    check(bhfm_nearfield_params(data.get(), &p, &data_delta, &data_seed), "params");
    char shape[128];
    check(bhfm_nearfield_shape(data.get(), shape, sizeof shape), "shape");
    nlohmann::ordered_json meta;
    meta["version"] = bhfm_version();
    meta["data"] = a.data;
    meta["shape"] = shape;
    meta["k"] = p.k;
    meta["radius"] = p.radius;
    meta["sensors"] = p.sensors;
    meta["n_boundary"] = p.n_boundary;
    meta["trunc"] = p.trunc;
    meta["delta"] = a.delta;
    meta["seed"] = a.seed;
    meta["data_delta"] = data_delta;
    meta["data_seed"] = data_seed;
    meta["filter"] = a.filter;
    meta["alpha_policy"] = a.policy;
    meta["alpha_fixed"] = a.alpha;
    meta["p"] = a.p;
    meta["alpha"] = alpha;
    meta["noise_estimate"] = estimate;
    meta["scattered_only"] = a.scattered_only;
    meta["grid"] = {{"xmin", g.lo}, {"xmax", g.hi}, {"ymin", g.lo}, {"ymax", g.hi}, {"nx", g.n}, {"ny", g.n}};
    meta["csv"] = a.out;
    meta["heatmap"] = a.heatmap;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(checksum));
    meta["checksum"] = hex;
    std::ofstream os(a.meta);
    os << meta.dump(2) << '\n';
    if (!os) throw Failure{kUsage, "cannot write '" + a.meta + "'"};
    std::printf("wrote %s\n", a.meta.c_str());
  }
  return kOk;
}

// ---- table-ev ---------------------------------------------------------------

struct TableRow {
  const char* shape;
  double radius;
  double pr;
  double ev;
};

constexpr TableRow kTable[] = {
    {"kite", 3.0, 0.1219, 0.0012},       {"star", 3.0, 0.0374, 9.1526e-7},  {"peanut", 3.0, 0.0612, 8.7533e-5},
    {"peanut", 5.0, 0.0442, 1.4755e-8}, {"peanut", 8.0, 0.0306, 5.2090e-14},
};

int run_table_ev(int nodes) {
  bool all_ok = true;
  std::printf("%-8s %4s  %12s %12s %8s  %12s %12s %8s  %s\n", "shape", "R", "|U_pr|", "table", "dev", "|U_ev|",
              "table", "dev", "status");
  for (const TableRow& row : kTable) {
    WaveOptions w;
    w.radius = row.radius;
    w.nodes = nodes;
    NearField data = simulate(row.shape, w.params());
    const auto [pr, ev] = component_norms(data.get());
    const double dev_pr = std::abs(pr - row.pr) / row.pr;
    const double dev_ev = std::abs(ev - row.ev) / row.ev;
    const bool ok_pr = dev_pr <= 0.05;
    const bool ok_ev = row.ev > 1e-8 ? dev_ev <= 0.10 : std::abs(std::log10(ev / row.ev)) <= 1.0;
    all_ok = all_ok && ok_pr && ok_ev;
    std::printf("%-8s %4.0f  %12.6g %12.6g %7.2f%%  %12.6g %12.6g %7.2f%%  %s\n", row.shape, row.radius, pr, row.pr,
                100.0 * dev_pr, ev, row.ev, 100.0 * dev_ev, ok_pr && ok_ev ? "ok" : "DEVIATION");
  }
  std::printf("tolerance: 5%% propagating; 10%% evanescent (one decade below 1e-8)\n");
  return all_ok ? kOk : kDeviation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biharmonic near-field scattering: data synthesis and factorization-method imaging"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bhfm_version());

  SimulateArgs sim;
  auto* cmd_sim = app.add_subcommand("simulate", "solve the direct problem and write near-field data");
  cmd_sim->add_option("--shape", sim.shape, "star, peanut, kite or disk:<r>")->capture_default_str();
  add_wave_options(cmd_sim, sim.wave);
  cmd_sim->add_option("--delta", sim.delta, "bake multiplicative noise into the stored data")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_sim->add_option("--seed", sim.seed, "noise seed")->capture_default_str();
  cmd_sim->add_option("--out", sim.out, "near-field data file");

  NoiseArgs noise;
  auto* cmd_noise = app.add_subcommand("noise", "add multiplicative noise to a data file");
  cmd_noise->add_option("--data", noise.data, "input data file")->required();
  cmd_noise->add_option("--delta", noise.delta, "noise level")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd_noise->add_option("--seed", noise.seed, "noise seed")->capture_default_str();
  cmd_noise->add_option("--out", noise.out, "output data file")->required();

  ReconstructArgs rec;
  auto* cmd_rec = app.add_subcommand("reconstruct", "image the obstacle from near-field data");
  cmd_rec->add_option("--data", rec.data, "near-field data file")->required();
  cmd_rec->add_option("--delta", rec.delta, "multiplicative noise applied before imaging")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_rec->add_option("--seed", rec.seed, "noise seed")->capture_default_str();
  cmd_rec->add_option("--filter", rec.filter, "regularizing filter")
      ->check(CLI::IsMember({"tikhonov", "glsm", "cutoff", "none"}))
      ->capture_default_str();
  cmd_rec->add_option("--alpha", rec.alpha, "regularization parameter (fixed policy)")->capture_default_str();
  cmd_rec->add_option("--alpha-policy", rec.policy, "fixed, or apriori: alpha from the noise estimate")
      ->check(CLI::IsMember({"fixed", "apriori"}))
      ->capture_default_str();
  cmd_rec->add_option("--p", rec.p, "exponent of the a-priori rule, in (0, 1/4)")->capture_default_str();
  cmd_rec->add_option("--trunc", rec.trunc, "series truncation of the transforms (default 10)");
  cmd_rec->add_option("--grid", rec.grid, "sampling square xmin:xmax:n")->capture_default_str();
  cmd_rec->add_flag("--scattered-only", rec.scattered_only, "use only u^scat (N = -2k^2 U)");
  cmd_rec->add_option("--out", rec.out, "indicator CSV")->capture_default_str();
  cmd_rec->add_option("--heatmap", rec.heatmap, "8-bit PGM heatmap");
  cmd_rec->add_option("--meta", rec.meta, "JSON record of every effective parameter");

  int table_nodes = 256;
  auto* cmd_table = app.add_subcommand("table-ev", "compare component norms with the reference table");
  cmd_table->add_option("--nodes", table_nodes, "Nystrom nodes on the obstacle")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*cmd_sim) return run_simulate(sim);
    if (*cmd_noise) return run_noise(noise);
    if (*cmd_rec) return run_reconstruct(rec);
    if (*cmd_table) return run_table_ev(table_nodes);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumerical;
  }
  return kUsage;
}
