#include "epm/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "epm/parallel.hpp"

namespace epm {

double dt_max(double h, double eps, double nu, double f_inf) {
  double dt = std::min(h * eps / 4.0, h * h / (8.0 * nu));
  if (f_inf > 0.0) dt = std::min(dt, std::sqrt(h) / (4.0 * std::sqrt(f_inf)));
  return dt;
}

Stepper::Stepper(ParticleSystem sys, DomainSpec dom, OperatorSet ops, SolverConfig cfg)
    : sys_(std::move(sys)), dom_(dom), ops_(std::move(ops)), cfg_(cfg) {
  dom_.validate();
  if (!(cfg_.rho > 0.0) || !(cfg_.nu > 0.0) || !(cfg_.eps > 0.0) || !(cfg_.T > 0.0))
    throw std::invalid_argument("solver: rho, nu, eps, T must be positive");
  if (!dom_.fully_periodic() && !(ops_.h() <= dom_.H / 2.0 + 1e-12))
    throw std::invalid_argument("solver: influence radius must satisfy h <= H/2");
  const double bound = dt_max(ops_.h(), cfg_.eps, cfg_.nu, cfg_.f_inf);
  if (cfg_.tau == 0.0) {
    tau_ = bound;
  } else {
    if (!(cfg_.tau > 0.0) || cfg_.tau > bound * (1.0 + 1e-12))
      throw std::invalid_argument("solver: tau must lie in (0, dt_max]");
    tau_ = cfg_.tau;
  }
  c0h_ = c0h(ops_.triple().wpi, ops_.h(), sys_.size(), sys_.total_volume(), dom_.dim);

  const std::size_t n = sys_.size();
  for (int a = 0; a < 3; ++a) {
    ustar_[a].assign(n, 0.0);
    xstar_[a].assign(n, 0.0);
    scratch_[a].assign(n, 0.0);
  }
  pstar_.assign(n, 0.0);
  pnew_.assign(n, 0.0);
}

Vec3 Stepper::body_force_at(const Vec3& x, double t) const {
  return cfg_.body_force ? cfg_.body_force(x, t) : Vec3{0.0, 0.0, 0.0};
}

Vec3 Stepper::wall_velocity_at(const Vec3& x, double t) const {
  return cfg_.boundary_velocity ? cfg_.boundary_velocity(x, t) : Vec3{0.0, 0.0, 0.0};
}

void Stepper::check_finite(const char* stage) {
  const std::size_t n = sys_.size();
  std::atomic<bool> bad{false};
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      bool ok = std::isfinite(pstar_[i]) && std::isfinite(pnew_[i]);
      for (int a = 0; a < dom_.dim; ++a)
        ok = ok && std::isfinite(sys_.pos[a][i]) && std::isfinite(sys_.vel[a][i]) &&
             std::isfinite(ustar_[a][i]) && std::isfinite(xstar_[a][i]);
      if (!ok) bad.store(true, std::memory_order_relaxed);
    }
  });
  if (bad.load()) throw InstabilityError(k_, stage);
}

void Stepper::predictor() {
  const std::size_t n = sys_.size();
  const double t = time();
  build_neighbor_list(sys_, dom_, ops_.h(), nl_);
  // nu * lap(u) into scratch
  ops_.laplacian_vec_all(sys_, nl_, sys_.vel[0].data(), sys_.vel[1].data(),
                         dom_.dim == 3 ? sys_.vel[2].data() : nullptr, scratch_[0].data(),
                         scratch_[1].data(), dom_.dim == 3 ? scratch_[2].data() : nullptr);
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const Vec3 xi = sys_.position(i);
      if (sys_.kind[i] == ParticleKind::Fluid) {
        const Vec3 f = body_force_at(xi, t);
        Vec3 us = sys_.velocity(i);
        for (int a = 0; a < dom_.dim; ++a) us[a] += tau_ * (cfg_.nu * scratch_[a][i] + f[a]);
        Vec3 xs = xi;
        for (int a = 0; a < dom_.dim; ++a) xs[a] += tau_ * us[a];
        xs = wrap_position(xs, dom_);
        for (int a = 0; a < 3; ++a) {
          ustar_[a][i] = us[a];
          xstar_[a][i] = xs[a];
        }
      } else {
        const Vec3 ub = wall_velocity_at(xi, t);
        for (int a = 0; a < 3; ++a) {
          ustar_[a][i] = ub[a];
          xstar_[a][i] = xi[a];
        }
      }
    }
  });
  check_finite("predictor");
}

void Stepper::penalty_pressure() {
  const std::size_t n = sys_.size();
  // operate on tentative positions
  std::swap(sys_.pos, xstar_);
  build_neighbor_list(sys_, dom_, ops_.h(), nl_);
  ops_.kernel_density_all(sys_, nl_, pstar_.data());
  const double coef = cfg_.rho / (cfg_.eps * cfg_.eps);
  const double inv_c0h = 1.0 / c0h_;
  std::vector<std::uint64_t> clamps(chunk_count(n), 0);
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    std::uint64_t local = 0;
    for (std::size_t i = b; i < e; ++i) {
      double p = coef * (pstar_[i] * inv_c0h - 1.0);
      if (cfg_.free_surface && p < 0.0) {
        p = 0.0;
        ++local;
      }
      pstar_[i] = p;
    }
    clamps[b / kParallelChunk] = local;
  });
  for (std::uint64_t c : clamps) diag_.clamped_pressures += c;
  std::swap(sys_.pos, xstar_);
}

void Stepper::position_correct() {
  const std::size_t n = sys_.size();
  // gradient_plus of p* on tentative positions (neighbor list is current:
  // penalty_pressure just built it there)
  std::swap(sys_.pos, xstar_);
  ops_.gradient_all(sys_, nl_, pstar_.data(), scratch_[0].data(), scratch_[1].data(),
                    dom_.dim == 3 ? scratch_[2].data() : nullptr, /*plus=*/true);
  const double coef = tau_ * tau_ / cfg_.rho;
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      Vec3 x{sys_.pos[0][i], sys_.pos[1][i], sys_.pos[2][i]};  // tentative
      if (sys_.kind[i] == ParticleKind::Fluid) {
        for (int a = 0; a < dom_.dim; ++a) x[a] -= coef * scratch_[a][i];
        x = wrap_position(x, dom_);
      }
      for (int a = 0; a < 3; ++a) xstar_[a][i] = x[a];  // writes x^{k+1}
    }
  });
  std::swap(sys_.pos, xstar_);
  // sys_.pos now holds x^{k+1}; xstar_ holds the tentative positions again.
  check_finite("position correction");
}

void Stepper::collision_resolve() {
  if (!(cfg_.free_surface && cfg_.collision.enabled)) return;
  if (!(cfg_.dx > 0.0)) throw std::invalid_argument("collision needs dx > 0");
  const double dist = cfg_.collision.distance_factor * cfg_.dx;
  const double e = cfg_.collision.restitution;
  build_neighbor_list(sys_, dom_, ops_.h(), nl_);
  const std::size_t n = sys_.size();
  std::uint64_t resolved = 0;
  // Sequential sweep in pair order; geometry from the entry list, velocity
  // and position updates applied cumulatively.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint64_t k = nl_.begin(i); k < nl_.end(i); ++k) {
      const std::size_t j = static_cast<std::size_t>(nl_.idx[k]);
      if (j <= i) continue;
      if (nl_.r[k] >= dist) continue;
      const bool fi = sys_.kind[i] == ParticleKind::Fluid;
      const bool fj = sys_.kind[j] == ParticleKind::Fluid;
      if (!fi && !fj) continue;
      const double r = nl_.r[k];
      Vec3 nvec{nl_.dx[k] / r, nl_.dy[k] / r, 0.0};
      if (dom_.dim == 3) nvec[2] = nl_.dz[k] / r;
      Vec3 ui{ustar_[0][i], ustar_[1][i], ustar_[2][i]};
      Vec3 uj{ustar_[0][j], ustar_[1][j], ustar_[2][j]};
      const double vn = dot(uj - ui, nvec);
      const double gap = dist - r;
      const double mi = cfg_.rho * sys_.volume[i];
      const double mj = cfg_.rho * sys_.volume[j];
      if (fi && fj) {
        if (vn < 0.0) {
          const double impulse = -(1.0 + e) * vn * (mi * mj) / (mi + mj);
          for (int a = 0; a < dom_.dim; ++a) {
            ustar_[a][i] -= impulse / mi * nvec[a];
            ustar_[a][j] += impulse / mj * nvec[a];
          }
        }
        const double share_i = mj / (mi + mj), share_j = mi / (mi + mj);
        for (int a = 0; a < dom_.dim; ++a) {
          sys_.pos[a][i] -= gap * share_i * nvec[a];
          sys_.pos[a][j] += gap * share_j * nvec[a];
        }
      } else {
        // One side fixed: reflect the fluid particle, move it the full gap.
        const std::size_t f = fi ? i : j;
        const double sgn = fi ? 1.0 : -1.0;  // direction away from the wall particle
        if ((fi && vn < 0.0) || (fj && vn < 0.0)) {
          for (int a = 0; a < dom_.dim; ++a) ustar_[a][f] += sgn * (1.0 + e) * vn * nvec[a];
        }
        for (int a = 0; a < dom_.dim; ++a) sys_.pos[a][f] -= sgn * gap * nvec[a];
      }
      ++resolved;
    }
  }
  if (resolved > 0) {
    parallel_for(n, [&](std::size_t b, std::size_t ee) {
      for (std::size_t i = b; i < ee; ++i) {
        Vec3 x = sys_.position(i);
        if (sys_.kind[i] == ParticleKind::Fluid) sys_.set_position(i, wrap_position(x, dom_));
      }
    });
  }
  diag_.collisions_resolved += resolved;
}

void Stepper::pressure_velocity_update() {
  const std::size_t n = sys_.size();
  const double t_next = (k_ + 1) * tau_;
  build_neighbor_list(sys_, dom_, ops_.h(), nl_);
  const std::uint64_t fallbacks_before =
      ops_.diagnostics().shepard_fallbacks.load(std::memory_order_relaxed);
  if (cfg_.pressure_recalc) {
    ops_.shepard_all(sys_, nl_, pstar_.data(), pnew_.data());
  } else {
    std::copy(pstar_.begin(), pstar_.end(), pnew_.begin());
  }
  diag_.shepard_fallbacks +=
      ops_.diagnostics().shepard_fallbacks.load(std::memory_order_relaxed) - fallbacks_before;
  const std::uint64_t degen_before =
      ops_.diagnostics().degenerate_stencils.load(std::memory_order_relaxed);
  ops_.gradient_all(sys_, nl_, pnew_.data(), scratch_[0].data(), scratch_[1].data(),
                    dom_.dim == 3 ? scratch_[2].data() : nullptr,
                    /*plus=*/cfg_.free_surface);
  diag_.degenerate_stencils +=
      ops_.diagnostics().degenerate_stencils.load(std::memory_order_relaxed) - degen_before;
  const double coef = tau_ / cfg_.rho;
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      if (sys_.kind[i] == ParticleKind::Fluid) {
        Vec3 u{ustar_[0][i], ustar_[1][i], ustar_[2][i]};
        for (int a = 0; a < dom_.dim; ++a) u[a] -= coef * scratch_[a][i];
        sys_.set_velocity(i, u);
      } else {
        sys_.set_velocity(i, wall_velocity_at(sys_.position(i), t_next));
      }
      sys_.pressure[i] = pnew_[i];
    }
  });
  check_finite("velocity update");
}

void Stepper::advance() {
  predictor();
  penalty_pressure();
  position_correct();
  collision_resolve();
  pressure_velocity_update();
  ++k_;
}

}  // namespace epm
