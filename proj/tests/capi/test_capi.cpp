#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bhfm/bhfm.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

namespace {

struct Fixture {
  bhfm_curve* curve = nullptr;
  bhfm_nearfield* data = nullptr;
  bhfm_wave_params params{};

  Fixture() {
    bhfm_wave_params_default(&params);
    params.n_boundary = 64;
    params.sensors = 32;
    REQUIRE(bhfm_curve_create("kite", 64, &curve) == BHFM_OK);
    REQUIRE(bhfm_simulate(curve, &params, &data) == BHFM_OK);
  }
  ~Fixture() {
    bhfm_nearfield_destroy(data);
    bhfm_curve_destroy(curve);
  }
};

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(bhfm_version()) == "1.0.0");
  CHECK(std::string(bhfm_status_string(BHFM_OK)) == "ok");
  CHECK(std::strlen(bhfm_status_string(BHFM_ERR_NUMERICAL)) > 0);
}

TEST_CASE("defaults") {
  bhfm_wave_params p;
  bhfm_wave_params_default(&p);
  CHECK(p.k == 2.0);
  CHECK(p.radius == 3.0);
  CHECK(p.sensors == 64);
  CHECK(p.n_boundary == 256);
  CHECK(p.trunc == 10);
  bhfm_grid_spec g;
  bhfm_grid_spec_default(&g);
  CHECK(g.xmin == -3.0);
  CHECK(g.ymax == 3.0);
  CHECK(g.nx == 200);
  CHECK(g.ny == 200);
}

TEST_CASE("curves") {
  bhfm_curve* c = nullptr;
  REQUIRE(bhfm_curve_create("star", 32, &c) == BHFM_OK);
  double r = 0.0;
  CHECK(bhfm_curve_max_radius(c, &r) == BHFM_OK);
  CHECK(r == doctest::Approx(0.575));
  int inside = -1;
  CHECK(bhfm_curve_contains(c, 0.0, 0.0, &inside) == BHFM_OK);
  CHECK(inside == 1);
  CHECK(bhfm_curve_contains(c, 1.0, 0.0, &inside) == BHFM_OK);
  CHECK(inside == 0);
  bhfm_curve_destroy(c);

  bhfm_curve* bad = nullptr;
  CHECK(bhfm_curve_create("hexagon", 32, &bad) == BHFM_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(std::string(bhfm_last_error()).find("hexagon") != std::string::npos);
  CHECK(bhfm_curve_create("kite", 33, &bad) == BHFM_ERR_INVALID_ARGUMENT);
  CHECK(bhfm_curve_create(nullptr, 32, &bad) == BHFM_ERR_INVALID_ARGUMENT);
  bhfm_curve_destroy(nullptr);
}

TEST_CASE_FIXTURE(Fixture, "near-field access") {
  bhfm_wave_params p{};
  double delta = -1.0;
  uint64_t seed = 99;
  CHECK(bhfm_nearfield_params(data, &p, &delta, &seed) == BHFM_OK);
  CHECK(p.sensors == 32);
  CHECK(p.n_boundary == 64);
  CHECK(delta == 0.0);
  CHECK(seed == 0u);

  char name[16];
  CHECK(bhfm_nearfield_shape(data, name, sizeof name) == BHFM_OK);
  CHECK(std::string(name) == "kite");
  char tiny[2];
  CHECK(bhfm_nearfield_shape(data, tiny, sizeof tiny) == BHFM_ERR_INVALID_ARGUMENT);

  std::vector<double> u(2 * 32 * 32), lap(2 * 32 * 32);
  CHECK(bhfm_nearfield_matrices(data, u.data(), lap.data(), u.size()) == BHFM_OK);
  CHECK(bhfm_nearfield_matrices(data, u.data(), nullptr, u.size() - 1) == BHFM_ERR_DIMENSION);

  double pr = 0.0, ev = 0.0;
  CHECK(bhfm_nearfield_component_norms(data, &pr, &ev) == BHFM_OK);
  double max_pr = 0.0;
  for (std::size_t i = 0; i < 32 * 32; ++i)
    max_pr = std::max(max_pr, std::hypot(lap[2 * i] - 4.0 * u[2 * i], lap[2 * i + 1] - 4.0 * u[2 * i + 1]));
  CHECK(pr == doctest::Approx(max_pr).epsilon(1e-14));
  CHECK(ev < pr);

  double est = 1.0;
  CHECK(bhfm_nearfield_noise_estimate(data, 0, &est) == BHFM_OK);
  CHECK(est < 1e-10);
  CHECK(bhfm_nearfield_set_trunc(data, -1) == BHFM_ERR_INVALID_ARGUMENT);
  CHECK(bhfm_nearfield_set_trunc(data, 12) == BHFM_OK);
  CHECK(bhfm_nearfield_params(data, &p, nullptr, nullptr) == BHFM_OK);
  CHECK(p.trunc == 12);
}

TEST_CASE_FIXTURE(Fixture, "noise, files and errors") {
  bhfm_nearfield* noisy = nullptr;
  REQUIRE(bhfm_nearfield_add_noise(data, 0.05, 4, &noisy) == BHFM_OK);
  double est = 0.0;
  CHECK(bhfm_nearfield_noise_estimate(noisy, 0, &est) == BHFM_OK);
  CHECK(est > 0.0);
  CHECK(bhfm_nearfield_add_noise(data, -1.0, 4, &noisy) == BHFM_ERR_INVALID_ARGUMENT);

  const std::string path = "capi_roundtrip.txt";
  CHECK(bhfm_nearfield_save(noisy, path.c_str()) == BHFM_OK);
  bhfm_nearfield* back = nullptr;
  REQUIRE(bhfm_nearfield_load(path.c_str(), &back) == BHFM_OK);
  std::vector<double> a(2 * 32 * 32), b(2 * 32 * 32);
  bhfm_nearfield_matrices(noisy, a.data(), nullptr, a.size());
  bhfm_nearfield_matrices(back, b.data(), nullptr, b.size());
  CHECK(a == b);
  std::remove(path.c_str());
  bhfm_nearfield_destroy(back);
  bhfm_nearfield_destroy(noisy);

  bhfm_nearfield* missing = nullptr;
  CHECK(bhfm_nearfield_load("/nonexistent/data.txt", &missing) == BHFM_ERR_IO);

  bhfm_wave_params small = params;
  small.radius = 1.0;
  bhfm_nearfield* out = nullptr;
  CHECK(bhfm_simulate(curve, &small, &out) == BHFM_ERR_INVALID_ARGUMENT);
  bhfm_wave_params mismatch = params;
  mismatch.n_boundary = 128;
  CHECK(bhfm_simulate(curve, &mismatch, &out) == BHFM_ERR_DIMENSION);
}

TEST_CASE("Dirichlet eigenvalue surfaces as a numerical error") {
  bhfm_curve* disk = nullptr;
  REQUIRE(bhfm_curve_create("disk:1", 64, &disk) == BHFM_OK);
  bhfm_wave_params p;
  bhfm_wave_params_default(&p);
  p.n_boundary = 64;
  p.k = 2.404825557695773;
  bhfm_nearfield* out = nullptr;
  CHECK(bhfm_simulate(disk, &p, &out) == BHFM_ERR_NUMERICAL);
  CHECK(std::string(bhfm_last_error()).find("Dirichlet") != std::string::npos);
  bhfm_curve_destroy(disk);
}

TEST_CASE("disk field") {
  const double x[2] = {3.0, 0.0}, y[2] = {0.0, 3.0};
  double pr[2], ev[2];
  CHECK(bhfm_disk_field(2.0, 1.0, x, y, pr, ev) == BHFM_OK);
  CHECK(ev[1] == 0.0);
  const double inside[2] = {0.1, 0.0};
  CHECK(bhfm_disk_field(2.0, 1.0, inside, y, pr, ev) == BHFM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("filters and parameter choice") {
  double v = 0.0;
  CHECK(bhfm_filter_value(BHFM_FILTER_GLSM, 1.0, 1.0, &v) == BHFM_OK);
  CHECK(v == 0.5);
  CHECK(bhfm_filter_value(BHFM_FILTER_CUTOFF, 0.1, 0.01, &v) == BHFM_OK);
  CHECK(v == 1.0);
  CHECK(bhfm_filter_value(static_cast<bhfm_filter_kind>(9), 1.0, 1.0, &v) == BHFM_ERR_INVALID_ARGUMENT);
  CHECK(bhfm_select_alpha(1, 0.0, 0.125, BHFM_FILTER_TIKHONOV, 0.1, &v) == BHFM_OK);
  CHECK(v == doctest::Approx(0.25 * std::pow(0.1, 0.125)).epsilon(1e-15));
  CHECK(v == doctest::Approx(0.187469).epsilon(1e-4));
  CHECK(bhfm_select_alpha(0, 1e-4, 0.125, BHFM_FILTER_TIKHONOV, 0.1, &v) == BHFM_OK);
  CHECK(v == 1e-4);
  CHECK(bhfm_select_alpha(1, 0.0, 0.125, BHFM_FILTER_CUTOFF, 0.1, &v) == BHFM_ERR_INVALID_ARGUMENT);
}

TEST_CASE_FIXTURE(Fixture, "spectrum and grid") {
  bhfm_spectrum* s = nullptr;
  REQUIRE(bhfm_spectrum_create(data, 0, &s) == BHFM_OK);
  int n = 0;
  CHECK(bhfm_spectrum_size(s, &n) == BHFM_OK);
  CHECK(n == 32);
  std::vector<double> ev(2 * 32);
  CHECK(bhfm_spectrum_eigenvalues(s, ev.data(), ev.size()) == BHFM_OK);
  for (int j = 1; j < 32; ++j)
    CHECK(std::hypot(ev[2 * j], ev[2 * j + 1]) <= std::hypot(ev[2 * j - 2], ev[2 * j - 1]));
  CHECK(bhfm_spectrum_eigenvalues(s, ev.data(), 10) == BHFM_ERR_DIMENSION);

  double w_in = 0.0, w_out = 0.0;
  CHECK(bhfm_indicator(s, 0.0, 0.0, BHFM_FILTER_TIKHONOV, 1e-4, &w_in) == BHFM_OK);
  CHECK(bhfm_indicator(s, 2.5, 2.5, BHFM_FILTER_TIKHONOV, 1e-4, &w_out) == BHFM_OK);
  CHECK(w_in > w_out);
  CHECK(bhfm_indicator(s, 0.0, 0.0, BHFM_FILTER_TIKHONOV, 0.0, &w_in) == BHFM_ERR_INVALID_ARGUMENT);

  const bhfm_grid_spec spec{-3, 3, -3, 3, 31, 21};
  bhfm_grid* g = nullptr;
  REQUIRE(bhfm_grid_evaluate(s, &spec, BHFM_FILTER_TIKHONOV, 1e-4, &g) == BHFM_OK);
  int nx = 0, ny = 0;
  CHECK(bhfm_grid_size(g, &nx, &ny) == BHFM_OK);
  CHECK(nx == 31);
  CHECK(ny == 21);
  std::vector<double> values(31 * 21);
  CHECK(bhfm_grid_values(g, values.data(), values.size()) == BHFM_OK);
  CHECK(*std::max_element(values.begin(), values.end()) == 1.0);

  uint64_t c1 = 0, c2 = 1;
  CHECK(bhfm_grid_checksum(g, &c1) == BHFM_OK);
  bhfm_grid* g2 = nullptr;
  REQUIRE(bhfm_grid_evaluate(s, &spec, BHFM_FILTER_TIKHONOV, 1e-4, &g2) == BHFM_OK);
  CHECK(bhfm_grid_checksum(g2, &c2) == BHFM_OK);
  CHECK(c1 == c2);
  CHECK(bhfm_grid_write_csv(g, "/nonexistent/dir/out.csv") == BHFM_ERR_IO);

  const bhfm_grid_spec bad{-3, 3, -3, 3, 1, 21};
  bhfm_grid* g3 = nullptr;
  CHECK(bhfm_grid_evaluate(s, &bad, BHFM_FILTER_TIKHONOV, 1e-4, &g3) == BHFM_ERR_INVALID_ARGUMENT);

  double est = 0.0;
  CHECK(bhfm_spectrum_noise_estimate(s, &est) == BHFM_OK);
  CHECK(est < 1e-10);

  bhfm_grid_destroy(g2);
  bhfm_grid_destroy(g);
  bhfm_spectrum_destroy(s);
}
