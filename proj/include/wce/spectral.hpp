// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

// Normality, spectrum and spectral decomposition of EM_u, and the spectral
// measure S -> E^phi M_{chi_{phi^{-1}(S)}} induced by a point map phi.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "wce/condexp.hpp"
#include "wce/measure.hpp"
#include "wce/opalgebra.hpp"
#include "wce/random.hpp"

namespace wce {

inline constexpr double kGroupingTol = 1e-8;

/// Matrix of f -> E(u f).
WeightedOperator build_EMu(const MeasurableFunction& u, const Partition& p);

/// EM_u is normal iff u is measurable for p.
bool is_normal_EMu(const MeasurableFunction& u, const Partition& p,
                   double tol = kDefaultSupportTol);

/// Block values of E(u), deduplicated at grouping_tol * (1 + max|E u|), with
/// 0 always adjoined. Sorted by (real, imag).
std::vector<cplx> spectrum_EMu(const MeasurableFunction& u, const Partition& p,
                               double grouping_tol = kGroupingTol);

/// Coefficients alpha[n][m] of p(z, t) = sum alpha_{n,m} z^m t^n.
using StarPolynomial = std::vector<std::vector<cplx>>;

/// M_{p(u, conj u)} E. Throws Error(NotNormal) unless u is measurable.
WeightedOperator star_poly_calc(const MeasurableFunction& u, const Partition& p,
                                const StarPolynomial& coeffs);

/// M_{f(u)} E. Throws Error(NotNormal) unless u is measurable.
WeightedOperator cont_func_calc_EMu(const MeasurableFunction& u,
                                    const Partition& p,
                                    const std::function<cplx(cplx)>& f);

struct SpectralDecomp {
  std::vector<cplx> eigenvalues;
  std::vector<WeightedOperator> projections;
};

/// EM_u = sum lambda_n P_n with P_n f = chi_{A_n} E(f), A_n the union of
/// blocks on which u equals lambda_n (nonzero values), and P_0 = I - sum P_n
/// for lambda = 0 whenever that projection is nonzero.
/// Throws Error(NotNormal).
SpectralDecomp spectral_decomposition(const MeasurableFunction& u,
                                      const Partition& p,
                                      double grouping_tol = kGroupingTol);

/// phi(x_i) = x_{images[i]}.
class PointMap {
 public:
  /// Throws Error(ConfigInvalid) on an out-of-range image.
  PointMap(FiniteMeasureSpace space, std::vector<std::size_t> images);

  static PointMap identity(const FiniteMeasureSpace& space);

  const FiniteMeasureSpace& space() const noexcept { return space_; }
  const std::vector<std::size_t>& images() const noexcept { return images_; }
  std::size_t operator()(std::size_t i) const { return images_[i]; }

  /// phi^{-1}(S).
  IndexSet preimage(const IndexSet& s) const;

  bool operator==(const PointMap& o) const noexcept {
    return space_ == o.space_ && images_ == o.images_;
  }

 private:
  FiniteMeasureSpace space_;
  std::vector<std::size_t> images_;
};

/// Blocks are the nonempty fibers phi^{-1}({s}).
Partition fiber_partition(const PointMap& phi);

/// h(x) = mu(phi^{-1}{x}) / mu({x}).
MeasurableFunction pushforward_density(const PointMap& phi);

/// E^phi M_{chi_{phi^{-1}(S)}}.
WeightedOperator spectral_measure(const PointMap& phi, const IndexSet& s);

/// Singleton values E({s}) precomputed once; E(S) is their sum.
class SpectralMeasureTable {
 public:
  explicit SpectralMeasureTable(const PointMap& phi);

  const PointMap& map() const noexcept { return phi_; }
  const CondExp& cond_exp() const noexcept { return cond_exp_; }
  const WeightedOperator& singleton(std::size_t s) const { return atoms_[s]; }
  WeightedOperator operator()(const IndexSet& s) const;

 private:
  PointMap phi_;
  CondExp cond_exp_;
  std::vector<WeightedOperator> atoms_;
};

/// Worst residual per axiom; each is a weighted operator norm.
struct AxiomReport {
  double projection = 0.0;      // (a) ||E^2 - E|| and ||E - E*||
  double empty_set = 0.0;       // (b) ||E(empty)||
  double whole_space = 0.0;     // (b) ||E(X) - I||
  double multiplicative = 0.0;  // (c) ||E(S1 n S2) - E(S1) E(S2)||
  double additive = 0.0;        // (d) ||E(u S_k) - sum E(S_k)||
  bool on_subspace = false;

  double worst() const;
};

/// Evaluates the axioms over all singletons plus `random_sets` random
/// subsets drawn from rng. With on_subspace, operators are compressed to
/// L^2(phi^{-1}(Sigma)) through the mu-orthonormal basis chi_B / sqrt(mu(B)).
AxiomReport check_spectral_axioms(const PointMap& phi, bool on_subspace,
                                  Rng& rng,
                                  std::size_t random_sets = 24);

/// Compression Q* A Q onto L^2(phi^{-1}(Sigma)) as a plain k x k matrix in an
/// orthonormal basis.
Matrix compress_to_fibers(const Partition& fibers, const WeightedOperator& a);

/// sum_s v(s) E({s}) where v(phi(x)) = u(x) and v = 0 off the range of phi.
/// Throws Error(NotFiberMeasurable).
WeightedOperator reconstruct_from_measure(const PointMap& phi,
                                          const MeasurableFunction& u,
                                          double tol = kDefaultSupportTol);

}  // namespace wce
