// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

// Closed forms for the weighted conditional expectation operator
//
//     T f = w E(u f),   T = M_w E M_u,
//
// on L^2(mu). Everything here is expressed through the two block functions
// E(|u|^2) and E(|w|^2) and their supports S and G; no dense decomposition is
// used. The oracle counterparts live in opalgebra.hpp.
//
// Quotients over a support ("1/E(|u|^2) on S") are taken as the reciprocal on
// the support and 0 elsewhere. Supports are block-resolved: a block belongs
// to S iff its E(|u|^2) value exceeds support_tol times the largest one.

#pragma once

#include <functional>
#include <utility>

#include "wce/condexp.hpp"
#include "wce/measure.hpp"
#include "wce/opalgebra.hpp"

namespace wce {

class WCEInstance {
 public:
  /// Throws Error(SpaceMismatch) if the pieces live on different spaces.
  WCEInstance(Partition partition, MeasurableFunction u, MeasurableFunction w,
              double support_tol = kDefaultSupportTol);

  const FiniteMeasureSpace& space() const noexcept {
    return partition_.space();
  }
  const Partition& partition() const noexcept { return partition_; }
  const CondExp& cond_exp() const noexcept { return cond_exp_; }
  const MeasurableFunction& u() const noexcept { return u_; }
  const MeasurableFunction& w() const noexcept { return w_; }
  double support_tol() const noexcept { return support_tol_; }

  /// E(|u|^2), E(|w|^2) as point functions (real, nonnegative).
  const Eigen::VectorXd& eu2() const noexcept { return eu2_; }
  const Eigen::VectorXd& ew2() const noexcept { return ew2_; }
  /// Same values, one entry per block.
  const Eigen::VectorXd& eu2_blocks() const noexcept { return eu2_blocks_; }
  const Eigen::VectorXd& ew2_blocks() const noexcept { return ew2_blocks_; }

  /// S = support E(|u|^2), G = support E(|w|^2), as point sets and as
  /// per-block flags.
  const IndexSet& s() const noexcept { return s_; }
  const IndexSet& g() const noexcept { return g_; }
  bool block_in_s(std::size_t b) const { return in_s_[b]; }
  bool block_in_g(std::size_t b) const { return in_g_[b]; }

  bool operator==(const WCEInstance& other) const noexcept {
    return partition_ == other.partition_ && u_ == other.u_ && w_ == other.w_;
  }

 private:
  Partition partition_;
  CondExp cond_exp_;
  MeasurableFunction u_;
  MeasurableFunction w_;
  double support_tol_;
  Eigen::VectorXd eu2_, ew2_, eu2_blocks_, ew2_blocks_;
  std::vector<bool> in_s_, in_g_;
  IndexSet s_, g_;
};

/// Matrix of f -> w E(u f).
WeightedOperator build_T(const WCEInstance& inst);

/// The same operator assembled as the product M_w E M_u (independent route).
WeightedOperator build_T_product(const WCEInstance& inst);

/// T* f = conj(u) E(conj(w) f), written down directly.
WeightedOperator closed_adjoint(const WCEInstance& inst);

/// max over points of sqrt(E(|w|^2) E(|u|^2)).
double norm_formula(const WCEInstance& inst);

/// Implication "||M_g T|| <= tol  =>  g vanishes on supp(E|w|^2 E|u|^2)".
/// g must be measurable for the instance partition; throws
/// Error(NotMeasurable) otherwise.
bool check_vanishing(const WCEInstance& inst, const MeasurableFunction& g,
                     double tol = 1e-10);

struct PartialIsometryVerdict {
  bool is_partial_isometry = false;
  IndexSet region;  // A = support of E(|w|^2) E(|u|^2), i.e. S n G
};

/// E(|w|^2) E(|u|^2) takes only the values {0, 1} (within tol).
PartialIsometryVerdict partial_isometry_criterion(const WCEInstance& inst,
                                                  double tol = 1e-8);

/// ||T T* T - T|| computed from dense matrices; the oracle side of the
/// partial-isometry criterion.
double partial_isometry_residual(const WCEInstance& inst);

using RealFunction = std::function<double(double)>;

/// f(T*T) = f(0) I + M_{chi_S / E|u|^2} (M_{f(E|u|^2 E|w|^2)} - f(0) I)
///          M_{conj u} E M_u.
WeightedOperator closed_func_calc_TstarT(const WCEInstance& inst,
                                         const RealFunction& f);

/// g(TT*) = g(0) I + M_{chi_G / E|w|^2} (M_{g(E|u|^2 E|w|^2)} - g(0) I)
///          M_w E M_{conj w}.
WeightedOperator closed_func_calc_TTstar(const WCEInstance& inst,
                                         const RealFunction& g);

/// (T*T)^n f = conj(u) E(|w|^2)^n E(|u|^2)^{n-1} E(u f), n >= 1.
WeightedOperator closed_power_TstarT(const WCEInstance& inst, unsigned n);
/// (TT*)^n f = w E(|u|^2)^n E(|w|^2)^{n-1} E(conj(w) f), n >= 1.
WeightedOperator closed_power_TTstar(const WCEInstance& inst, unsigned n);

/// |T| f = sqrt(E|w|^2 / E|u|^2) chi_S conj(u) E(u f)
/// U f   = sqrt(chi_{S n G} / (E|w|^2 E|u|^2)) w E(u f)
PolarParts closed_polar(const WCEInstance& inst);

/// Aluthge transform |T|^{1/2} U |T|^{1/2}:
///   f -> chi_S E(u w) / E|u|^2 * conj(u) E(u f).
WeightedOperator closed_aluthge(const WCEInstance& inst);

/// V f = (E|w|^2 / (E|u|^2)^3)^{1/4} chi_S conj(u) E(u f); V^2 = |T|.
WeightedOperator aluthge_square_root(const WCEInstance& inst);

/// ||u||_W = max sqrt(E(|u|^2)).
double w_algebra_norm(const MeasurableFunction& u, const Partition& p);

}  // namespace wce
