#include "epm/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "epm/parallel.hpp"

namespace epm {

namespace {

struct Scratch {
  std::vector<double> w, pj, t, tx, ty, tz;
  void ensure(std::size_t n) {
    if (w.size() < n) {
      w.resize(n);
      pj.resize(n);
      t.resize(n);
      tx.resize(n);
      ty.resize(n);
      tz.resize(n);
    }
  }
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

}  // namespace

OperatorSet::OperatorSet(WeightTriple triple, double h, int dim)
    : triple_(std::move(triple)), h_(h), dim_(dim), diag_(std::make_unique<OperatorDiagnostics>()) {
  if (!(h > 0.0)) throw std::invalid_argument("operators: h must be > 0");
  if (dim != 2 && dim != 3) throw std::invalid_argument("operators: dim must be 2 or 3");
  c_pi_ = 1.0 / triple_.wpi.moment(0, dim);
  c_grad_ = dim / triple_.wgrad.moment(1, dim);
  c_lap_ = 2.0 * dim / triple_.wlap.moment(2, dim);
  if (!(c_pi_ > 0.0) || !(c_grad_ > 0.0) || !(c_lap_ > 0.0))
    throw std::invalid_argument("operators: normalization constants must be positive");
}

namespace {

struct ScaledWeight {
  const CompiledWeight* w;
  double h, inv_h, inv_hd;
  double wh0;  // w_h(0)

  ScaledWeight(const ReferenceWeight& rw, double h_, int dim) : w(&rw.compiled()), h(h_) {
    inv_h = 1.0 / h;
    double hd = h;
    for (int a = 1; a < dim; ++a) hd *= h;
    inv_hd = 1.0 / hd;
    wh0 = rw.compiled().w0 * inv_hd;
  }

  void batch(const BatchOps& ops, const double* r, std::size_t n, double* out) const {
    ops.eval_wh(*w, h, inv_h, inv_hd, r, n, out);
  }
};

}  // namespace

double OperatorSet::interpolate(const ParticleSystem& sys, const NeighborList& nl,
                                const double* field, std::size_t i) const {
  const BatchOps& ops = batch_ops();
  const ScaledWeight sw(triple_.wpi, h_, dim_);
  const std::uint64_t off = nl.begin(i);
  const std::size_t n = nl.degree(i);
  Scratch& s = scratch();
  s.ensure(n);
  sw.batch(ops, nl.r.data() + off, n, s.w.data());
  ops.gather(field, nl.idx.data() + off, n, s.pj.data());
  ops.weighted_field(nl.vj.data() + off, s.pj.data(), s.w.data(), n, s.t.data());
  const double self = sys.volume[i] * field[i] * sw.wh0;
  return c_pi_ * (ordered_sum(s.t.data(), n) + self);
}

Vec3 OperatorSet::gradient(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                           std::size_t i, bool plus) const {
  const BatchOps& ops = batch_ops();
  const ScaledWeight sw(triple_.wgrad, h_, dim_);
  const std::uint64_t off = nl.begin(i);
  const std::size_t n = nl.degree(i);
  if (n == 0) {
    diag_->degenerate_stencils.fetch_add(1, std::memory_order_relaxed);
    return {0.0, 0.0, 0.0};
  }
  Scratch& s = scratch();
  s.ensure(n);
  sw.batch(ops, nl.r.data() + off, n, s.w.data());
  ops.gather(field, nl.idx.data() + off, n, s.pj.data());
  if (plus)
    ops.pair_terms_plus(nl.vj.data() + off, s.pj.data(), field[i], s.w.data(), n, s.t.data());
  else
    ops.pair_terms_diff(nl.vj.data() + off, s.pj.data(), field[i], s.w.data(), n, s.t.data());
  const double* dz = dim_ == 3 ? nl.dz.data() + off : nullptr;
  ops.directional_terms(s.t.data(), nl.r.data() + off, nl.dx.data() + off, nl.dy.data() + off, dz,
                        n, s.tx.data(), s.ty.data(), dim_ == 3 ? s.tz.data() : nullptr);
  const double c = c_grad_ * (1.0 / h_);
  Vec3 g{c * ordered_sum(s.tx.data(), n), c * ordered_sum(s.ty.data(), n), 0.0};
  if (dim_ == 3) g[2] = c * ordered_sum(s.tz.data(), n);
  return g;
}

double OperatorSet::laplacian(const ParticleSystem& sys, const NeighborList& nl,
                              const double* field, std::size_t i) const {
  const BatchOps& ops = batch_ops();
  const ScaledWeight sw(triple_.wlap, h_, dim_);
  const std::uint64_t off = nl.begin(i);
  const std::size_t n = nl.degree(i);
  if (n == 0) {
    diag_->degenerate_stencils.fetch_add(1, std::memory_order_relaxed);
    return 0.0;
  }
  Scratch& s = scratch();
  s.ensure(n);
  sw.batch(ops, nl.r.data() + off, n, s.w.data());
  ops.gather(field, nl.idx.data() + off, n, s.pj.data());
  ops.pair_terms_diff(nl.vj.data() + off, s.pj.data(), field[i], s.w.data(), n, s.t.data());
  return c_lap_ * (1.0 / (h_ * h_)) * ordered_sum(s.t.data(), n);
}

double OperatorSet::shepard(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                            std::size_t i) const {
  const BatchOps& ops = batch_ops();
  const ScaledWeight sw(triple_.wpi, h_, dim_);
  const std::uint64_t off = nl.begin(i);
  const std::size_t n = nl.degree(i);
  Scratch& s = scratch();
  s.ensure(n);
  sw.batch(ops, nl.r.data() + off, n, s.w.data());
  ops.gather(field, nl.idx.data() + off, n, s.pj.data());
  ops.weighted_field(nl.vj.data() + off, s.pj.data(), s.w.data(), n, s.t.data());
  const double num_self = sys.volume[i] * field[i] * sw.wh0;
  const double num = ordered_sum(s.t.data(), n) + num_self;
  ops.weighted_volume(nl.vj.data() + off, s.w.data(), n, s.t.data());
  const double den = ordered_sum(s.t.data(), n) + sys.volume[i] * sw.wh0;
  if (!(den > 0.0)) {
    diag_->shepard_fallbacks.fetch_add(1, std::memory_order_relaxed);
    return field[i];
  }
  return num / den;
}

double OperatorSet::kernel_density(const ParticleSystem& sys, const NeighborList& nl,
                                   std::size_t i) const {
  const BatchOps& ops = batch_ops();
  const ScaledWeight sw(triple_.wpi, h_, dim_);
  const std::uint64_t off = nl.begin(i);
  const std::size_t n = nl.degree(i);
  Scratch& s = scratch();
  s.ensure(n);
  sw.batch(ops, nl.r.data() + off, n, s.w.data());
  ops.weighted_volume(nl.vj.data() + off, s.w.data(), n, s.t.data());
  return ordered_sum(s.t.data(), n) + sys.volume[i] * sw.wh0;
}

void OperatorSet::gradient_all(const ParticleSystem& sys, const NeighborList& nl,
                               const double* field, double* ox, double* oy, double* oz,
                               bool plus) const {
  parallel_for(sys.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const Vec3 g = gradient(sys, nl, field, i, plus);
      ox[i] = g[0];
      oy[i] = g[1];
      if (oz) oz[i] = g[2];
    }
  });
}

void OperatorSet::laplacian_all(const ParticleSystem& sys, const NeighborList& nl,
                                const double* field, double* out) const {
  parallel_for(sys.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = laplacian(sys, nl, field, i);
  });
}

void OperatorSet::laplacian_vec_all(const ParticleSystem& sys, const NeighborList& nl,
                                    const double* fx, const double* fy, const double* fz,
                                    double* ox, double* oy, double* oz) const {
  const BatchOps& ops = batch_ops();
  const ScaledWeight sw(triple_.wlap, h_, dim_);
  const double c = c_lap_ * (1.0 / (h_ * h_));
  parallel_for(sys.size(), [&](std::size_t b, std::size_t e) {
    Scratch& s = scratch();
    for (std::size_t i = b; i < e; ++i) {
      const std::uint64_t off = nl.begin(i);
      const std::size_t n = nl.degree(i);
      if (n == 0) {
        diag_->degenerate_stencils.fetch_add(1, std::memory_order_relaxed);
        ox[i] = oy[i] = 0.0;
        if (oz) oz[i] = 0.0;
        continue;
      }
      s.ensure(n);
      sw.batch(ops, nl.r.data() + off, n, s.w.data());
      ops.gather(fx, nl.idx.data() + off, n, s.pj.data());
      ops.pair_terms_diff(nl.vj.data() + off, s.pj.data(), fx[i], s.w.data(), n, s.t.data());
      ox[i] = c * ordered_sum(s.t.data(), n);
      ops.gather(fy, nl.idx.data() + off, n, s.pj.data());
      ops.pair_terms_diff(nl.vj.data() + off, s.pj.data(), fy[i], s.w.data(), n, s.t.data());
      oy[i] = c * ordered_sum(s.t.data(), n);
      if (oz && fz) {
        ops.gather(fz, nl.idx.data() + off, n, s.pj.data());
        ops.pair_terms_diff(nl.vj.data() + off, s.pj.data(), fz[i], s.w.data(), n, s.t.data());
        oz[i] = c * ordered_sum(s.t.data(), n);
      }
    }
  });
}

void OperatorSet::shepard_all(const ParticleSystem& sys, const NeighborList& nl,
                              const double* field, double* out) const {
  parallel_for(sys.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = shepard(sys, nl, field, i);
  });
}

void OperatorSet::kernel_density_all(const ParticleSystem& sys, const NeighborList& nl,
                                     double* out) const {
  parallel_for(sys.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = kernel_density(sys, nl, i);
  });
}

double c0h(const ReferenceWeight& w, double h, std::size_t n_particles, double vol_total,
           int dim) {
  if (!(h > 0.0) || n_particles == 0 || !(vol_total > 0.0))
    throw std::invalid_argument("c0h: invalid arguments");
  const double cell = vol_total / static_cast<double>(n_particles);
  const double s = std::pow(cell, 1.0 / dim);
  const int zmax = static_cast<int>(std::ceil(h / s)) + 1;
  double hd = h;
  for (int a = 1; a < dim; ++a) hd *= h;
  const double inv_h = 1.0 / h, inv_hd = 1.0 / hd;
  const BatchOps& ops = batch_ops(Backend::Scalar);
  double sum = 0.0;
  const int kz_lo = dim == 3 ? -zmax : 0;
  const int kz_hi = dim == 3 ? zmax : 0;
  for (int zx = -zmax; zx <= zmax; ++zx) {
    for (int zy = -zmax; zy <= zmax; ++zy) {
      for (int zz = kz_lo; zz <= kz_hi; ++zz) {
        const double rz = s * std::sqrt(static_cast<double>(zx) * zx +
                                        static_cast<double>(zy) * zy +
                                        static_cast<double>(zz) * zz);
        double wv;
        ops.eval_wh(w.compiled(), h, inv_h, inv_hd, &rz, 1, &wv);
        sum += cell * wv;
      }
    }
  }
  return sum;
}

}  // namespace epm
