#include "epm/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "epm/neighbor_list.hpp"
#include "epm/operators.hpp"
#include "epm/rng.hpp"

namespace epm {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

double influence_radius(double dx, int m, double h_factor) {
  if (m <= 0) return h_factor * dx;
  const double cm = h_factor * std::pow(0.04, 1.0 - 1.0 / m);
  return cm * std::pow(dx, 1.0 / m);
}

WeightTriple triple_for(PresetTag preset, const std::vector<double>& custom_coeffs, int dim) {
  if (preset == PresetTag::Custom) return make_polynomial_triple(custom_coeffs, dim);
  return make_preset(preset, dim);
}

TaylorGreenReport run_taylor_green(const TaylorGreenConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  TaylorGreenReport rep;
  const double L = cfg.params.L;
  DomainSpec dom;
  dom.dim = 2;
  dom.box_lo = {0.0, 0.0, 0.0};
  dom.box_hi = {L, L, 0.0};
  dom.periodic = {true, true, false};
  dom.H = 0.0;

  ParticleSystem sys = lattice_init(dom, cfg.dx, false);
  const std::size_t n = sys.size();
  for (std::size_t i = 0; i < n; ++i) {
    const TaylorGreenState s = taylor_green_exact(sys.position(i), 0.0, cfg.params);
    sys.set_velocity(i, s.velocity);
    sys.pressure[i] = s.pressure;
  }

  rep.h = influence_radius(cfg.dx, cfg.m, cfg.h_factor);
  rep.eps = cfg.eps;
  OperatorSet ops(triple_for(cfg.preset, cfg.custom_coeffs, 2), rep.h, 2);

  SolverConfig scfg;
  scfg.rho = cfg.params.rho;
  scfg.nu = cfg.params.nu();
  scfg.eps = cfg.eps;
  scfg.tau = 0.0;  // dt_max
  scfg.T = cfg.T;
  scfg.dx = cfg.dx;
  scfg.f_inf = 0.0;
  scfg.pressure_recalc = cfg.pressure_recalc;

  Stepper stepper(std::move(sys), dom, std::move(ops), scfg);
  rep.tau = stepper.tau();
  rep.c0h = stepper.c0h_value();
  rep.K = static_cast<int>(std::floor(cfg.T / rep.tau));

  SpaceTimeError vel_acc, pres_acc;
  std::vector<double> shifted(n), exact_p(n), ex(n), ey(n);
  for (int k = 1; k <= rep.K; ++k) {
    try {
      stepper.advance();
    } catch (const InstabilityError& err) {
      rep.diverged = true;
      rep.divergence_step = err.step();
      break;
    }
    const ParticleSystem& s = stepper.system();
    const double t = stepper.time();
    for (std::size_t i = 0; i < n; ++i) {
      const TaylorGreenState e = taylor_green_exact(s.position(i), t, cfg.params);
      ex[i] = s.vel[0][i] - e.velocity[0];
      ey[i] = s.vel[1][i] - e.velocity[1];
      exact_p[i] = e.pressure;
    }
    const double vel_diff = l2_space_norm_vec(ex.data(), ey.data(), nullptr, s.volume.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      const TaylorGreenState e = taylor_green_exact(s.position(i), t, cfg.params);
      ex[i] = e.velocity[0];
      ey[i] = e.velocity[1];
    }
    const double vel_ref = l2_space_norm_vec(ex.data(), ey.data(), nullptr, s.volume.data(), n);
    mean_shift_pressure(s.pressure.data(), s.volume.data(), n, shifted.data());
    for (std::size_t i = 0; i < n; ++i) shifted[i] -= exact_p[i];
    const double pres_diff = l2_space_norm(shifted.data(), s.volume.data(), n);
    const double pres_ref = l2_space_norm(exact_p.data(), s.volume.data(), n);
    vel_acc.add(rep.tau, vel_diff, vel_ref);
    pres_acc.add(rep.tau, pres_diff, pres_ref);
    rep.steps.push_back({k, t, vel_diff / vel_ref, pres_diff / pres_ref});
    if (cfg.observer) cfg.observer(stepper, k);
  }
  if (vel_acc.steps() > 0) {
    rep.vel_err_printed = vel_acc.relative(SpaceTimeVariant::Printed);
    rep.vel_err_squared = vel_acc.relative(SpaceTimeVariant::Squared);
    rep.pres_err_printed = pres_acc.relative(SpaceTimeVariant::Printed);
    rep.pres_err_squared = pres_acc.relative(SpaceTimeVariant::Squared);
  }
  rep.diagnostics = stepper.diagnostics();
  rep.runtime_sec = seconds_since(t0);
  return rep;
}

ConvergenceReport run_taylor_green_convergence(PresetTag preset, const std::vector<double>& dxs,
                                               int m, SpaceTimeVariant variant) {
  ConvergenceReport rep;
  for (const double dx : dxs) {
    TaylorGreenConfig cfg;
    cfg.preset = preset;
    cfg.dx = dx;
    cfg.m = m;
    cfg.eps = 2.5 * dx;
    const TaylorGreenReport r = run_taylor_green(cfg);
    ConvergenceRow row;
    row.dx = dx;
    row.h = r.h;
    row.diverged = r.diverged;
    if (!r.diverged) {
      row.vel_err = variant == SpaceTimeVariant::Printed ? r.vel_err_printed : r.vel_err_squared;
      row.pres_err =
          variant == SpaceTimeVariant::Printed ? r.pres_err_printed : r.pres_err_squared;
    }
    rep.rows.push_back(row);
  }
  // rates from the two finest stable grids
  int fine = -1, coarse = -1;
  for (int i = static_cast<int>(rep.rows.size()) - 1; i >= 0; --i) {
    if (rep.rows[i].diverged) continue;
    if (fine < 0) {
      fine = i;
    } else {
      coarse = i;
      break;
    }
  }
  if (fine >= 0 && coarse >= 0) {
    rep.rates_valid = true;
    rep.vel_rate = convergence_rate(rep.rows[coarse].vel_err, rep.rows[fine].vel_err,
                                    rep.rows[coarse].h, rep.rows[fine].h);
    rep.pres_rate = convergence_rate(rep.rows[coarse].pres_err, rep.rows[fine].pres_err,
                                     rep.rows[coarse].h, rep.rows[fine].h);
  }
  return rep;
}

DomainSpec perturbed_lattice_domain(double dx) {
  DomainSpec dom;
  dom.dim = 2;
  dom.box_lo = {0.0, 0.0, 0.0};
  dom.box_hi = {1.0, 1.0, 0.0};
  dom.periodic = {false, false, false};
  dom.H = 3.0 * dx;
  return dom;
}

ParticleSystem perturbed_lattice(double dx, double eps_max, std::uint64_t seed) {
  if (!(eps_max >= 0.0 && eps_max < 1.0))
    throw std::invalid_argument("perturbed_lattice: eps_max must lie in [0, 1)");
  const DomainSpec dom = perturbed_lattice_domain(dx);
  UniformRng rng(seed);
  const double lo = -dom.H, hi = 1.0 + dom.H;
  const int i_min = static_cast<int>(std::floor(lo / dx));
  const int i_max = static_cast<int>(std::ceil(hi / dx)) + 1;
  ParticleSystem sys;
  sys.dim = 2;
  for (int i = i_min; i <= i_max; ++i) {
    for (int j = i_min; j <= i_max; ++j) {
      double e1 = 0.0, e2 = 0.0;
      if (eps_max > 0.0) {
        e1 = rng.next(-eps_max, eps_max);
        e2 = rng.next(-eps_max, eps_max);
      }
      const double x = (i - 0.5 + 0.5 * e1) * dx;
      const double y = (j - 0.5 + 0.5 * e2) * dx;
      if (!(x > lo && x < hi && y > lo && y < hi)) continue;
      const std::size_t id = sys.size();
      for (int a = 0; a < 3; ++a) {
        sys.pos[a].push_back(0.0);
        sys.vel[a].push_back(0.0);
      }
      sys.pressure.push_back(0.0);
      sys.volume.push_back(dx * dx);
      sys.kind.push_back((x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0) ? ParticleKind::Fluid
                                                                    : ParticleKind::Boundary);
      sys.pos[0][id] = x;
      sys.pos[1][id] = y;
    }
  }
  return sys;
}

TruncationResult truncation_error_study(const TruncationConfig& cfg) {
  TruncationResult res;
  const double dx = cfg.dx;
  const DomainSpec dom = perturbed_lattice_domain(dx);
  const double h = cfg.h_factor * dx;
  OperatorSet ops(triple_for(cfg.preset, {}, 2), h, 2);
  const double two_pi = 2.0 * std::numbers::pi;
  for (const std::uint64_t seed : cfg.seeds) {
    const ParticleSystem sys = perturbed_lattice(dx, cfg.eps_max, seed);
    const NeighborList nl = build_neighbor_list(sys, dom, h);
    const std::size_t n = sys.size();
    std::vector<double> phi(n), lap_h(n);
    for (std::size_t i = 0; i < n; ++i)
      phi[i] = std::sin(two_pi * (sys.pos[0][i] + sys.pos[1][i]));
    ops.laplacian_all(sys, nl, phi.data(), lap_h.data());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (sys.kind[i] != ParticleKind::Fluid) continue;
      const double lap_exact = -2.0 * two_pi * two_pi * phi[i];
      num = std::max(num, std::abs(lap_exact - lap_h[i]));
      den = std::max(den, std::abs(lap_exact));
    }
    res.per_seed.push_back(num / den);
  }
  double s = 0.0;
  for (double v : res.per_seed) s += v;
  res.mean = res.per_seed.empty() ? 0.0 : s / static_cast<double>(res.per_seed.size());
  return res;
}

double profile_error(const std::vector<double>& abscissa, const std::vector<double>& numeric,
                     const std::vector<double>& reference) {
  if (abscissa.size() != numeric.size() || abscissa.size() != reference.size() ||
      abscissa.size() < 2)
    throw std::invalid_argument("profile_error: mismatched or too-short inputs");
  double num = 0.0, den = 0.0;
  for (std::size_t j = 1; j < abscissa.size(); ++j) {
    const double w = abscissa[j] - abscissa[j - 1];
    const double d = numeric[j] - reference[j];
    num += w * d * d;
    den += w * reference[j] * reference[j];
  }
  if (!(den > 0.0)) throw std::invalid_argument("profile_error: zero reference norm");
  return std::sqrt(num / den);
}

CavityReport run_cavity(const CavityConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  CavityReport rep;
  DomainSpec dom;
  dom.dim = 2;
  dom.box_lo = {0.0, 0.0, 0.0};
  dom.box_hi = {1.0, 1.0, 0.0};
  dom.periodic = {false, false, false};
  dom.H = cfg.H;

  ParticleSystem sys = lattice_init(dom, cfg.dx, true);
  rep.h = influence_radius(cfg.dx, 0, cfg.h_factor);
  OperatorSet ops(triple_for(cfg.preset, {}, 2), rep.h, 2);

  SolverConfig scfg;
  scfg.rho = 1.0;
  scfg.nu = 1.0 / cfg.Re;  // U = L = 1
  scfg.eps = cfg.eps;
  scfg.tau = 0.0;
  scfg.T = std::numeric_limits<double>::max();
  scfg.dx = cfg.dx;
  scfg.f_inf = 0.0;
  scfg.pressure_recalc = true;
  scfg.boundary_velocity = [](const Vec3& x, double) {
    return x[1] >= 1.0 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 0.0, 0.0};
  };

  Stepper stepper(std::move(sys), dom, std::move(ops), scfg);
  rep.tau = stepper.tau();
  long cap = cfg.max_steps;
  if (std::isfinite(cfg.T_cap))
    cap = std::min(cap, static_cast<long>(std::floor(cfg.T_cap / rep.tau)));

  const std::size_t n = stepper.system().size();
  std::vector<double> prev_u(n), prev_v(n);
  const double tol = cfg.steady_tol;  // in U^2/L = 1 units
  for (long k = 0; k < cap; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      prev_u[i] = stepper.system().vel[0][i];
      prev_v[i] = stepper.system().vel[1][i];
    }
    try {
      stepper.advance();
    } catch (const InstabilityError& err) {
      rep.diverged = true;
      rep.divergence_step = err.step();
      break;
    }
    rep.steps = k + 1;
    if (cfg.observer) cfg.observer(stepper, static_cast<int>(k + 1));
    double dmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dmax = std::max(dmax, std::abs(stepper.system().vel[0][i] - prev_u[i]));
      dmax = std::max(dmax, std::abs(stepper.system().vel[1][i] - prev_v[i]));
    }
    if (dmax / rep.tau <= tol) {
      rep.steady = true;
      break;
    }
  }
  rep.end_time = stepper.time();
  rep.diagnostics = stepper.diagnostics();

  if (!rep.diverged && cfg.reference.size() >= 2) {
    const ParticleSystem& s = stepper.system();
    for (std::size_t j = 0; j < cfg.reference.size(); ++j) {
      const double xj = cfg.reference.abscissa[j];
      // nearest particle to the sample point on the horizontal centerline
      std::size_t best = 0;
      double best_d2 = std::numeric_limits<double>::max();
      for (std::size_t i = 0; i < s.size(); ++i) {
        const double ddx = s.pos[0][i] - xj;
        const double ddy = s.pos[1][i] - 0.5;
        const double d2 = ddx * ddx + ddy * ddy;
        if (d2 < best_d2) {
          best_d2 = d2;
          best = i;
        }
      }
      rep.sample_x.push_back(xj);
      rep.sample_numeric.push_back(s.vel[1][best]);
      rep.sample_ref.push_back(cfg.reference.value[j]);
    }
    rep.profile_error = profile_error(rep.sample_x, rep.sample_numeric, rep.sample_ref);
  }
  rep.runtime_sec = seconds_since(t0);
  return rep;
}

DamBreakReport run_dambreak(const DamBreakConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  DamBreakReport rep;
  DomainSpec dom;
  dom.dim = 2;
  dom.box_lo = {0.0, 0.0, 0.0};
  dom.box_hi = {cfg.tank_w, cfg.tank_h, 0.0};
  dom.periodic = {false, false, false};
  dom.H = cfg.H_factor * cfg.dx;

  // Water column at the left wall plus wall dummies; the top stays open.
  const ParticleSystem full = lattice_init(dom, cfg.dx, true);
  ParticleSystem sys;
  sys.dim = 2;
  for (std::size_t i = 0; i < full.size(); ++i) {
    const double x = full.pos[0][i], y = full.pos[1][i];
    bool keep = false;
    ParticleKind kind = full.kind[i];
    if (kind == ParticleKind::Fluid) {
      keep = x < cfg.col_w && y < cfg.col_h;
    } else {
      const bool below = y < 0.0;
      const bool side = (x < 0.0 || x > cfg.tank_w) && y > 0.0 && y < cfg.tank_h;
      keep = (below || side) && y < cfg.tank_h;
    }
    if (!keep) continue;
    const std::size_t id = sys.size();
    for (int a = 0; a < 3; ++a) {
      sys.pos[a].push_back(full.pos[a][i]);
      sys.vel[a].push_back(0.0);
    }
    sys.pressure.push_back(0.0);
    sys.volume.push_back(full.volume[i]);
    sys.kind.push_back(kind);
  }
  rep.fluid_count_start = sys.count(ParticleKind::Fluid);

  rep.h = cfg.h_factor * cfg.dx;
  OperatorSet ops(triple_for(cfg.preset, {}, 2), rep.h, 2);

  SolverConfig scfg;
  scfg.rho = cfg.rho;
  scfg.nu = cfg.nu;
  scfg.eps = cfg.eps;
  scfg.tau = 0.0;
  scfg.T = cfg.T;
  scfg.dx = cfg.dx;
  scfg.f_inf = cfg.g;
  scfg.pressure_recalc = true;
  scfg.free_surface = true;
  scfg.collision.enabled = cfg.collision;
  scfg.collision.distance_factor = cfg.collision_distance_factor;
  scfg.collision.restitution = cfg.collision_restitution;
  const double g = cfg.g;
  scfg.body_force = [g](const Vec3&, double) { return Vec3{0.0, -g, 0.0}; };

  Stepper stepper(std::move(sys), dom, std::move(ops), scfg);
  rep.tau = stepper.tau();
  const int K = static_cast<int>(std::floor(cfg.T / rep.tau));

  // Sensors sample the nearest wall-boundary particle; walls never move, so
  // the indices are fixed.
  std::vector<std::size_t> sensor_idx;
  {
    const ParticleSystem& s = stepper.system();
    for (const double z : cfg.sensor_heights) {
      std::size_t best = 0;
      double best_d2 = std::numeric_limits<double>::max();
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.kind[i] != ParticleKind::Boundary) continue;
        const double ddx = s.pos[0][i] - cfg.tank_w;
        const double ddy = s.pos[1][i] - z;
        const double d2 = ddx * ddx + ddy * ddy;
        if (d2 < best_d2) {
          best_d2 = d2;
          best = i;
        }
      }
      sensor_idx.push_back(best);
    }
  }
  rep.sensors.assign(sensor_idx.size(), {});

  rep.min_pressure_seen = 0.0;
  for (int k = 1; k <= K; ++k) {
    try {
      stepper.advance();
    } catch (const InstabilityError& err) {
      rep.diverged = true;
      rep.divergence_step = err.step();
      break;
    }
    const ParticleSystem& s = stepper.system();
    rep.times.push_back(stepper.time());
    for (std::size_t l = 0; l < sensor_idx.size(); ++l)
      rep.sensors[l].push_back(s.pressure[sensor_idx[l]]);
    for (std::size_t i = 0; i < s.size(); ++i)
      rep.min_pressure_seen = std::min(rep.min_pressure_seen, s.pressure[i]);
    if (cfg.observer) cfg.observer(stepper, k);
  }
  rep.pressures_nonnegative = rep.min_pressure_seen >= 0.0;
  rep.fluid_count_end = stepper.system().count(ParticleKind::Fluid);
  rep.diagnostics = stepper.diagnostics();

  rep.settled_mean.assign(sensor_idx.size(), 0.0);
  if (!rep.times.empty()) {
    const double t_start = cfg.settle_fraction * cfg.T;
    std::size_t cnt = 0;
    for (std::size_t k = 0; k < rep.times.size(); ++k) {
      if (rep.times[k] < t_start) continue;
      ++cnt;
      for (std::size_t l = 0; l < sensor_idx.size(); ++l)
        rep.settled_mean[l] += rep.sensors[l][k];
    }
    if (cnt > 0)
      for (double& v : rep.settled_mean) v /= static_cast<double>(cnt);
  }
  rep.runtime_sec = seconds_since(t0);
  return rep;
}

}  // namespace epm
