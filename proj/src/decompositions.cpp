// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#include "wce/decompositions.hpp"

#include <cmath>
#include <sstream>

#include "wce/error.hpp"

namespace wce {

namespace {

// Per-point expansion of a per-block vector.
template <typename Vec>
Vec spread(const Partition& p, const Vec& per_block) {
  Vec out(static_cast<Eigen::Index>(p.space().size()));
  for (std::size_t i = 0; i < p.space().size(); ++i)
    out(static_cast<Eigen::Index>(i)) =
        per_block(static_cast<Eigen::Index>(p.block_of(i)));
  return out;
}

// Matrix of f -> alpha * a * E(b f), alpha given per block. Every operator in
// this file is block-diagonal with rank at most one per block.
WeightedOperator block_rank_one(const WCEInstance& inst, const Vector& alpha,
                                const Vector& a, const Vector& b) {
  const auto& p = inst.partition();
  const auto& space = inst.space();
  const auto n = static_cast<Eigen::Index>(space.size());
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t blk = 0; blk < p.block_count(); ++blk) {
    const cplx c = alpha(static_cast<Eigen::Index>(blk));
    if (c == cplx(0.0)) continue;
    const double mass = p.block_mass(blk);
    for (std::size_t i : p.block(blk)) {
      const auto ii = static_cast<Eigen::Index>(i);
      for (std::size_t j : p.block(blk)) {
        const auto jj = static_cast<Eigen::Index>(j);
        m(ii, jj) = c * a(ii) * b(jj) * (space.weight(j) / mass);
      }
    }
  }
  return {space, std::move(m)};
}

Vector products(const WCEInstance& inst) {
  return (inst.eu2_blocks().array() * inst.ew2_blocks().array())
      .matrix()
      .cast<cplx>();
}

}  // namespace

WCEInstance::WCEInstance(Partition partition, MeasurableFunction u,
                         MeasurableFunction w, double support_tol)
    : partition_(std::move(partition)),
      cond_exp_(partition_),
      u_(std::move(u)),
      w_(std::move(w)),
      support_tol_(support_tol) {
  require_same_space(partition_.space(), u_.space());
  require_same_space(partition_.space(), w_.space());
  eu2_blocks_ = cond_exp_.block_values(u_.abs_pow(2.0)).real();
  ew2_blocks_ = cond_exp_.block_values(w_.abs_pow(2.0)).real();
  eu2_ = spread(partition_, eu2_blocks_);
  ew2_ = spread(partition_, ew2_blocks_);

  const auto mark = [&](const Eigen::VectorXd& blocks, std::vector<bool>& flags) {
    const double top = blocks.size() == 0 ? 0.0 : blocks.maxCoeff();
    flags.assign(partition_.block_count(), false);
    std::vector<std::size_t> ids;
    for (std::size_t b = 0; b < partition_.block_count(); ++b) {
      if (top > 0.0 && blocks(static_cast<Eigen::Index>(b)) > support_tol_ * top) {
        flags[b] = true;
        ids.push_back(b);
      }
    }
    return partition_.points_of(ids);
  };
  s_ = mark(eu2_blocks_, in_s_);
  g_ = mark(ew2_blocks_, in_g_);
}

WeightedOperator build_T(const WCEInstance& inst) {
  const auto k = static_cast<Eigen::Index>(inst.partition().block_count());
  return block_rank_one(inst, Vector::Ones(k), inst.w().values(),
                        inst.u().values());
}

WeightedOperator build_T_product(const WCEInstance& inst) {
  return WeightedOperator::multiplication(inst.w()) *
         cond_exp_operator(inst.cond_exp()) *
         WeightedOperator::multiplication(inst.u());
}

WeightedOperator closed_adjoint(const WCEInstance& inst) {
  const auto k = static_cast<Eigen::Index>(inst.partition().block_count());
  return block_rank_one(inst, Vector::Ones(k), inst.u().values().conjugate(),
                        inst.w().values().conjugate());
}

double norm_formula(const WCEInstance& inst) {
  const Eigen::VectorXd prod = inst.eu2().cwiseProduct(inst.ew2());
  return prod.size() == 0 ? 0.0 : std::sqrt(prod.maxCoeff());
}

bool check_vanishing(const WCEInstance& inst, const MeasurableFunction& g,
                     double tol) {
  if (!is_measurable(g, inst.partition(), inst.support_tol()))
    throw Error(ErrorKind::NotMeasurable,
                "g must be measurable for the instance partition");
  const WeightedOperator gt = WeightedOperator::multiplication(g) * build_T(inst);
  if (operator_norm(gt) > tol) return true;
  const MeasurableFunction prod(inst.space(),
                                inst.eu2().cwiseProduct(inst.ew2()).cast<cplx>().eval());
  return support(g, inst.support_tol())
      .intersect(support(prod, inst.support_tol()))
      .empty();
}

PartialIsometryVerdict partial_isometry_criterion(const WCEInstance& inst,
                                                  double tol) {
  const Vector p = products(inst);
  PartialIsometryVerdict out;
  out.is_partial_isometry = true;
  for (Eigen::Index b = 0; b < p.size(); ++b) {
    const double v = p(b).real();
    if (std::abs(v) > tol && std::abs(v - 1.0) > tol) {
      out.is_partial_isometry = false;
      break;
    }
  }
  const MeasurableFunction pf(inst.space(), spread(inst.partition(), p));
  out.region = support(pf, inst.support_tol());
  return out;
}

double partial_isometry_residual(const WCEInstance& inst) {
  const WeightedOperator t = build_T_product(inst);
  return operator_norm(t * weighted_adjoint(t) * t - t);
}

WeightedOperator closed_func_calc_TstarT(const WCEInstance& inst,
                                         const RealFunction& f) {
  const auto& part = inst.partition();
  const double f0 = f(0.0);
  const Vector p = products(inst);
  Vector alpha = Vector::Zero(p.size());
  for (std::size_t b = 0; b < part.block_count(); ++b) {
    if (!inst.block_in_s(b)) continue;
    const auto bb = static_cast<Eigen::Index>(b);
    alpha(bb) = (f(p(bb).real()) - f0) / inst.eu2_blocks()(bb);
  }
  const WeightedOperator body = block_rank_one(
      inst, alpha, inst.u().values().conjugate(), inst.u().values());
  return WeightedOperator::identity(inst.space()).scaled(f0) + body;
}

WeightedOperator closed_func_calc_TTstar(const WCEInstance& inst,
                                         const RealFunction& g) {
  const auto& part = inst.partition();
  const double g0 = g(0.0);
  const Vector p = products(inst);
  Vector alpha = Vector::Zero(p.size());
  for (std::size_t b = 0; b < part.block_count(); ++b) {
    if (!inst.block_in_g(b)) continue;
    const auto bb = static_cast<Eigen::Index>(b);
    alpha(bb) = (g(p(bb).real()) - g0) / inst.ew2_blocks()(bb);
  }
  const WeightedOperator body = block_rank_one(
      inst, alpha, inst.w().values(), inst.w().values().conjugate());
  return WeightedOperator::identity(inst.space()).scaled(g0) + body;
}

WeightedOperator closed_power_TstarT(const WCEInstance& inst, unsigned n) {
  if (n == 0) return WeightedOperator::identity(inst.space());
  const Eigen::ArrayXd a = inst.ew2_blocks().array().pow(static_cast<double>(n)) *
                           inst.eu2_blocks().array().pow(static_cast<double>(n - 1));
  return block_rank_one(inst, a.matrix().cast<cplx>(),
                        inst.u().values().conjugate(), inst.u().values());
}

WeightedOperator closed_power_TTstar(const WCEInstance& inst, unsigned n) {
  if (n == 0) return WeightedOperator::identity(inst.space());
  const Eigen::ArrayXd a = inst.eu2_blocks().array().pow(static_cast<double>(n)) *
                           inst.ew2_blocks().array().pow(static_cast<double>(n - 1));
  return block_rank_one(inst, a.matrix().cast<cplx>(), inst.w().values(),
                        inst.w().values().conjugate());
}

PolarParts closed_polar(const WCEInstance& inst) {
  const auto k = static_cast<Eigen::Index>(inst.partition().block_count());
  Vector mod_coef = Vector::Zero(k);
  Vector iso_coef = Vector::Zero(k);
  for (Eigen::Index b = 0; b < k; ++b) {
    const auto bb = static_cast<std::size_t>(b);
    if (!inst.block_in_s(bb)) continue;
    const double eu2 = inst.eu2_blocks()(b);
    const double ew2 = inst.ew2_blocks()(b);
    mod_coef(b) = std::sqrt(ew2 / eu2);
    if (inst.block_in_g(bb)) iso_coef(b) = 1.0 / std::sqrt(ew2 * eu2);
  }
  const Vector& u = inst.u().values();
  return {block_rank_one(inst, iso_coef, inst.w().values(), u),
          block_rank_one(inst, mod_coef, u.conjugate(), u)};
}

WeightedOperator closed_aluthge(const WCEInstance& inst) {
  const auto k = static_cast<Eigen::Index>(inst.partition().block_count());
  const Vector euw = inst.cond_exp().block_values(inst.u() * inst.w());
  Vector coef = Vector::Zero(k);
  for (Eigen::Index b = 0; b < k; ++b)
    if (inst.block_in_s(static_cast<std::size_t>(b)))
      coef(b) = euw(b) / inst.eu2_blocks()(b);
  const Vector& u = inst.u().values();
  return block_rank_one(inst, coef, u.conjugate(), u);
}

WeightedOperator aluthge_square_root(const WCEInstance& inst) {
  const auto k = static_cast<Eigen::Index>(inst.partition().block_count());
  Vector coef = Vector::Zero(k);
  for (Eigen::Index b = 0; b < k; ++b) {
    if (!inst.block_in_s(static_cast<std::size_t>(b))) continue;
    const double eu2 = inst.eu2_blocks()(b);
    coef(b) = std::pow(inst.ew2_blocks()(b) / (eu2 * eu2 * eu2), 0.25);
  }
  const Vector& u = inst.u().values();
  return block_rank_one(inst, coef, u.conjugate(), u);
}

double w_algebra_norm(const MeasurableFunction& u, const Partition& p) {
  require_same_space(u.space(), p.space());
  const Vector bv = CondExp(p).block_values(u.abs_pow(2.0));
  return bv.size() == 0 ? 0.0 : std::sqrt(bv.real().maxCoeff());
}

}  // namespace wce
