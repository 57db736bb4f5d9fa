#include "bhfm/bhfm.h"

#include <bit>
#include <cstring>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "bhfm/forward.hpp"
#include "bhfm/imaging.hpp"
#include "bhfm/io.hpp"

struct bhfm_curve {
  bhfm::BoundaryCurve curve;
};

struct bhfm_nearfield {
  bhfm::NearFieldSet data;
};

struct bhfm_spectrum {
  bhfm::linalg::SpectralData spectral;
  double k = 0.0;
  double noise_estimate = 0.0;
};

struct bhfm_grid {
  bhfm::IndicatorGrid grid;
};

namespace {

thread_local std::string g_last_error;

bhfm_status fail(bhfm_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs body and maps escaping exceptions onto status codes.
template <typename Body>
bhfm_status guarded(Body&& body) noexcept {
  try {
    body();
    return BHFM_OK;
  } catch (const bhfm::DimensionError& e) {
    return fail(BHFM_ERR_DIMENSION, e.what());
  } catch (const bhfm::InvalidArgument& e) {
    return fail(BHFM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const bhfm::NumericalError& e) {
    return fail(BHFM_ERR_NUMERICAL, e.what());
  } catch (const bhfm::IoError& e) {
    return fail(BHFM_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BHFM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BHFM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BHFM_ERR_INTERNAL, "unknown error");
  }
}

template <typename T>
void require(const T* p, const char* name) {
  if (p == nullptr) throw bhfm::InvalidArgument(std::string(name) + " is NULL");
}

bhfm::FilterKind to_kind(bhfm_filter_kind kind) {
  switch (kind) {
    case BHFM_FILTER_TIKHONOV:
      return bhfm::FilterKind::Tikhonov;
    case BHFM_FILTER_GLSM:
      return bhfm::FilterKind::Glsm;
    case BHFM_FILTER_CUTOFF:
      return bhfm::FilterKind::Cutoff;
    case BHFM_FILTER_NONE:
      return bhfm::FilterKind::None;
  }
  throw bhfm::InvalidArgument("unknown filter kind");
}

bhfm::WaveContext to_context(const bhfm_wave_params& p) {
  bhfm::WaveContext c;
  c.k = p.k;
  c.radius = p.radius;
  c.sensors = p.sensors;
  c.n_boundary = p.n_boundary;
  c.trunc = p.trunc;
  c.validate();
  return c;
}

bhfm::GridSpec to_grid(const bhfm_grid_spec& s) {
  bhfm::GridSpec g{s.xmin, s.xmax, s.ymin, s.ymax, s.nx, s.ny};
  g.validate();
  return g;
}

void copy_matrix(const bhfm::CMatrix& m, double* out) {
  const auto n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out[2 * (i * n + j)] = m(i, j).real();
      out[2 * (i * n + j) + 1] = m(i, j).imag();
    }
}

}  // namespace

extern "C" {

const char* bhfm_version(void) { return "1.0.0"; }

const char* bhfm_last_error(void) { return g_last_error.c_str(); }

const char* bhfm_status_string(bhfm_status status) {
  switch (status) {
    case BHFM_OK:
      return "ok";
    case BHFM_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case BHFM_ERR_DIMENSION:
      return "dimension mismatch";
    case BHFM_ERR_NUMERICAL:
      return "numerical failure";
    case BHFM_ERR_IO:
      return "i/o error";
    case BHFM_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void bhfm_wave_params_default(bhfm_wave_params* params) {
  if (params == nullptr) return;
  const bhfm::WaveContext c;
  *params = {c.k, c.radius, c.sensors, c.n_boundary, c.trunc};
}

void bhfm_grid_spec_default(bhfm_grid_spec* spec) {
  if (spec == nullptr) return;
  const bhfm::GridSpec g;
  *spec = {g.xmin, g.xmax, g.ymin, g.ymax, g.nx, g.ny};
}

bhfm_status bhfm_curve_create(const char* shape, int n_nodes, bhfm_curve** out) {
  return guarded([&] {
    require(shape, "shape");
    require(out, "out");
    *out = new bhfm_curve{bhfm::make_curve(bhfm::Shape::parse(shape), n_nodes)};
  });
}

void bhfm_curve_destroy(bhfm_curve* curve) { delete curve; }

bhfm_status bhfm_curve_max_radius(const bhfm_curve* curve, double* out) {
  return guarded([&] {
    require(curve, "curve");
    require(out, "out");
    *out = curve->curve.max_radius();
  });
}

bhfm_status bhfm_curve_contains(const bhfm_curve* curve, double x, double y, int* out) {
  return guarded([&] {
    require(curve, "curve");
    require(out, "out");
    *out = curve->curve.contains({x, y}) ? 1 : 0;
  });
}

bhfm_status bhfm_simulate(const bhfm_curve* curve, const bhfm_wave_params* params, bhfm_nearfield** out) {
  return guarded([&] {
    require(curve, "curve");
    require(params, "params");
    require(out, "out");
    *out = new bhfm_nearfield{bhfm::build_near_field(to_context(*params), curve->curve)};
  });
}

bhfm_status bhfm_nearfield_add_noise(const bhfm_nearfield* data, double delta, uint64_t seed, bhfm_nearfield** out) {
  return guarded([&] {
    require(data, "data");
    require(out, "out");
    *out = new bhfm_nearfield{bhfm::add_noise(data->data, delta, seed)};
  });
}

bhfm_status bhfm_nearfield_load(const char* path, bhfm_nearfield** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new bhfm_nearfield{bhfm::io::load_near_field(path)};
  });
}

bhfm_status bhfm_nearfield_save(const bhfm_nearfield* data, const char* path) {
  return guarded([&] {
    require(data, "data");
    require(path, "path");
    bhfm::io::save_near_field(path, data->data);
  });
}

void bhfm_nearfield_destroy(bhfm_nearfield* data) { delete data; }

bhfm_status bhfm_nearfield_params(const bhfm_nearfield* data, bhfm_wave_params* params, double* delta,
                                  uint64_t* seed) {
  return guarded([&] {
    require(data, "data");
    const auto& c = data->data.context;
    if (params != nullptr) *params = {c.k, c.radius, c.sensors, c.n_boundary, c.trunc};
    if (delta != nullptr) *delta = data->data.noise.delta;
    if (seed != nullptr) *seed = data->data.noise.seed;
  });
}

bhfm_status bhfm_nearfield_shape(const bhfm_nearfield* data, char* buf, size_t cap) {
  return guarded([&] {
    require(data, "data");
    require(buf, "buf");
    const std::string& s = data->data.shape;
    if (s.size() + 1 > cap) throw bhfm::InvalidArgument("shape buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

bhfm_status bhfm_nearfield_set_trunc(bhfm_nearfield* data, int trunc) {
  return guarded([&] {
    require(data, "data");
    if (trunc < 0) throw bhfm::InvalidArgument("truncation order must be non-negative");
    data->data.context.trunc = trunc;
  });
}

bhfm_status bhfm_nearfield_matrices(const bhfm_nearfield* data, double* u, double* lap, size_t count) {
  return guarded([&] {
    require(data, "data");
    const auto m = static_cast<size_t>(data->data.sensors());
    if (count < 2 * m * m) throw bhfm::DimensionError("output buffers need 2*M*M doubles");
    if (u != nullptr) copy_matrix(data->data.U, u);
    if (lap != nullptr) copy_matrix(data->data.L, lap);
  });
}

bhfm_status bhfm_nearfield_component_norms(const bhfm_nearfield* data, double* propagating, double* evanescent) {
  return guarded([&] {
    require(data, "data");
    if (propagating != nullptr) *propagating = bhfm::linalg::max_abs(data->data.propagating());
    if (evanescent != nullptr) *evanescent = bhfm::linalg::max_abs(data->data.evanescent());
  });
}

bhfm_status bhfm_nearfield_noise_estimate(const bhfm_nearfield* data, int scattered_only, double* out) {
  return guarded([&] {
    require(data, "data");
    require(out, "out");
    *out = bhfm::estimate_noise(scattered_only ? bhfm::scattered_only_matrix(data->data)
                                               : bhfm::near_field_matrix(data->data));
  });
}

bhfm_status bhfm_disk_field(double k, double a, const double x[2], const double y[2], double u_pr[2],
                            double u_ev[2]) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    const auto f = bhfm::analytic_disk_field(k, a, {x[0], x[1]}, {y[0], y[1]});
    if (u_pr != nullptr) {
      u_pr[0] = f.u_pr.real();
      u_pr[1] = f.u_pr.imag();
    }
    if (u_ev != nullptr) {
      u_ev[0] = f.u_ev.real();
      u_ev[1] = f.u_ev.imag();
    }
  });
}

bhfm_status bhfm_spectrum_create(const bhfm_nearfield* data, int scattered_only, bhfm_spectrum** out) {
  return guarded([&] {
    require(data, "data");
    require(out, "out");
    const auto& nf = data->data;
    const bhfm::CMatrix kernel = scattered_only ? bhfm::scattered_only_matrix(nf) : bhfm::near_field_matrix(nf);
    auto spectrum = std::make_unique<bhfm_spectrum>();
    spectrum->k = nf.context.k;
    spectrum->noise_estimate = bhfm::estimate_noise(kernel);
    const auto transforms = bhfm::assemble_transforms(nf.context);
    spectrum->spectral = bhfm::linalg::eig(bhfm::transform_near_field(transforms, kernel));
    *out = spectrum.release();
  });
}

void bhfm_spectrum_destroy(bhfm_spectrum* spectrum) { delete spectrum; }

bhfm_status bhfm_spectrum_size(const bhfm_spectrum* spectrum, int* out) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require(out, "out");
    *out = spectrum->spectral.size();
  });
}

bhfm_status bhfm_spectrum_eigenvalues(const bhfm_spectrum* spectrum, double* out, size_t count) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require(out, "out");
    const auto n = static_cast<size_t>(spectrum->spectral.size());
    if (count < 2 * n) throw bhfm::DimensionError("output buffer needs 2*M doubles");
    for (size_t j = 0; j < n; ++j) {
      const auto v = spectrum->spectral.eigenvalues(static_cast<Eigen::Index>(j));
      out[2 * j] = v.real();
      out[2 * j + 1] = v.imag();
    }
  });
}

bhfm_status bhfm_spectrum_noise_estimate(const bhfm_spectrum* spectrum, double* out) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require(out, "out");
    *out = spectrum->noise_estimate;
  });
}

bhfm_status bhfm_filter_value(bhfm_filter_kind kind, double t, double alpha, double* out) {
  return guarded([&] {
    require(out, "out");
    if (!(t > 0.0)) throw bhfm::InvalidArgument("filter argument must be positive");
    if (!(alpha >= 0.0)) throw bhfm::InvalidArgument("alpha must be non-negative");
    *out = bhfm::filter(to_kind(kind), t, alpha);
  });
}

bhfm_status bhfm_select_alpha(int a_priori, double fixed_alpha, double p, bhfm_filter_kind kind,
                              double delta_estimate, double* out) {
  return guarded([&] {
    require(out, "out");
    const auto policy = a_priori ? bhfm::AlphaPolicy::a_priori(p) : bhfm::AlphaPolicy::fixed(fixed_alpha);
    *out = bhfm::select_alpha(policy, to_kind(kind), delta_estimate);
  });
}

bhfm_status bhfm_indicator(const bhfm_spectrum* spectrum, double zx, double zy, bhfm_filter_kind kind, double alpha,
                           double* out) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require(out, "out");
    *out = bhfm::indicator(spectrum->spectral, {zx, zy}, {to_kind(kind), alpha}, spectrum->k);
  });
}

bhfm_status bhfm_grid_evaluate(const bhfm_spectrum* spectrum, const bhfm_grid_spec* spec, bhfm_filter_kind kind,
                               double alpha, bhfm_grid** out) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require(spec, "spec");
    require(out, "out");
    *out = new bhfm_grid{bhfm::evaluate_grid(spectrum->spectral, to_grid(*spec), {to_kind(kind), alpha}, spectrum->k)};
  });
}

void bhfm_grid_destroy(bhfm_grid* grid) { delete grid; }

bhfm_status bhfm_grid_size(const bhfm_grid* grid, int* nx, int* ny) {
  return guarded([&] {
    require(grid, "grid");
    if (nx != nullptr) *nx = grid->grid.spec.nx;
    if (ny != nullptr) *ny = grid->grid.spec.ny;
  });
}

bhfm_status bhfm_grid_values(const bhfm_grid* grid, double* out, size_t count) {
  return guarded([&] {
    require(grid, "grid");
    require(out, "out");
    const auto& v = grid->grid.values;
    if (count < v.size()) throw bhfm::DimensionError("output buffer needs nx*ny doubles");
    std::memcpy(out, v.data(), v.size() * sizeof(double));
  });
}

bhfm_status bhfm_grid_checksum(const bhfm_grid* grid, uint64_t* out) {
  return guarded([&] {
    require(grid, "grid");
    require(out, "out");
    uint64_t h = 0xcbf29ce484222325ull;
    for (double v : grid->grid.values) {
      const auto bits = std::bit_cast<uint64_t>(v);
      for (int b = 0; b < 8; ++b) {
        h ^= (bits >> (8 * b)) & 0xffu;
        h *= 0x100000001b3ull;
      }
    }
    *out = h;
  });
}

bhfm_status bhfm_grid_write_csv(const bhfm_grid* grid, const char* path) {
  return guarded([&] {
    require(grid, "grid");
    require(path, "path");
    bhfm::io::save_grid_csv(path, grid->grid);
  });
}

bhfm_status bhfm_grid_write_pgm(const bhfm_grid* grid, const char* path) {
  return guarded([&] {
    require(grid, "grid");
    require(path, "path");
    bhfm::io::save_grid_pgm(path, grid->grid);
  });
}

}  // extern "C"
