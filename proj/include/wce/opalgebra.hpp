// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

// Operators on L^2(mu) of a finite measure space, and the dense oracles used
// to certify closed-form results.
//
// A WeightedOperator stores the plain matrix A acting on value vectors. Every
// metric notion (adjoint, norm, eigenbasis, kernel) refers to the weighted
// inner product <f, g>_mu = sum_i f_i conj(g_i) mu_i. Internally these are
// evaluated in the Euclidean frame B = D^{1/2} A D^{-1/2}, D = diag(mu), where
// mu-orthonormality becomes ordinary orthonormality.

#pragma once

#include <functional>
#include <vector>

#include "wce/measure.hpp"

namespace wce {

inline constexpr double kRankTol = 1e-9;
inline constexpr double kClampTol = 1e-10;
inline constexpr double kSelfAdjointTol = 1e-10;

class WeightedOperator {
 public:
  /// Throws Error(SpaceMismatch) unless entries is n x n, and
  /// Error(NonFiniteValue) on non-finite entries.
  WeightedOperator(FiniteMeasureSpace space, Matrix entries);

  static WeightedOperator identity(const FiniteMeasureSpace& space);
  static WeightedOperator zero(const FiniteMeasureSpace& space);
  /// M_phi : f -> phi f.
  static WeightedOperator multiplication(const MeasurableFunction& phi);

  const FiniteMeasureSpace& space() const noexcept { return space_; }
  const Matrix& matrix() const noexcept { return entries_; }
  std::size_t size() const noexcept { return space_.size(); }

  MeasurableFunction apply(const MeasurableFunction& f) const;

  WeightedOperator operator*(const WeightedOperator& rhs) const;
  WeightedOperator operator+(const WeightedOperator& rhs) const;
  WeightedOperator operator-(const WeightedOperator& rhs) const;
  WeightedOperator scaled(cplx c) const;

 private:
  FiniteMeasureSpace space_;
  Matrix entries_;
};

/// <f, g>_mu.
cplx weighted_inner(const MeasurableFunction& f, const MeasurableFunction& g);
double weighted_norm(const MeasurableFunction& f);

/// D^{1/2} A D^{-1/2} and its inverse map.
Matrix to_euclidean(const WeightedOperator& a);
WeightedOperator from_euclidean(const FiniteMeasureSpace& space,
                                const Matrix& b);

/// A* = D^{-1} A^H D.
WeightedOperator weighted_adjoint(const WeightedOperator& a);

/// Largest singular value with respect to <.,.>_mu.
double operator_norm(const WeightedOperator& a);

/// All singular values (descending) in the weighted sense.
Eigen::VectorXd singular_values(const WeightedOperator& a);

/// ||A - B|| / (1 + max(||A||, ||B||)), all norms weighted operator norms.
double relative_deviation(const WeightedOperator& a, const WeightedOperator& b);

/// ||A - A*|| <= tol * ||A||.
bool is_self_adjoint(const WeightedOperator& a, double tol = kSelfAdjointTol);

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns are mu-orthonormal eigenvectors
};

/// Throws Error(NotSelfAdjoint).
EigenSystem hermitian_eig(const WeightedOperator& a,
                          double tol = kSelfAdjointTol);

/// Eigenvalues of an arbitrary square operator (similarity-invariant, so the
/// weighting is irrelevant).
std::vector<cplx> general_eigenvalues(const WeightedOperator& a);

/// Positive square root through the eigenbasis. Eigenvalues with
/// |lambda| <= clamp_tol * ||A|| are snapped to 0. Throws Error(NotPositive)
/// if some eigenvalue is below -clamp_tol * ||A||, Error(NotSelfAdjoint).
WeightedOperator positive_sqrt(const WeightedOperator& a,
                               double clamp_tol = kClampTol);

struct PolarParts {
  WeightedOperator unitary;  // partial isometry U
  WeightedOperator modulus;  // |A| = (A*A)^{1/2}
};

/// A = U |A| with ker U = ker |A| = ker A. Singular values at or below
/// rank_tol * sigma_max are treated as zero.
PolarParts polar_oracle(const WeightedOperator& a, double rank_tol = kRankTol);

/// f(A) = sum_k f(lambda_k) v_k <., v_k>_mu for mu-self-adjoint A.
/// Spectrum is clamped as in positive_sqrt before f is applied.
WeightedOperator func_calc_oracle(const WeightedOperator& a,
                                  const std::function<double(double)>& f,
                                  double clamp_tol = kClampTol);

/// f(A) for a mu-normal A through its (numerically diagonal) Schur form.
/// Throws Error(NotNormal) if the commutator exceeds tol * (1 + ||A||^2).
WeightedOperator normal_func_calc_oracle(const WeightedOperator& a,
                                         const std::function<cplx(cplx)>& f,
                                         double tol = 1e-8);

/// mu-orthogonal projection onto ker A.
WeightedOperator kernel_projection(const WeightedOperator& a,
                                   double rank_tol = kRankTol);

/// Weighted norm of the commutator A A* - A* A.
double commutator_norm(const WeightedOperator& a);

}  // namespace wce
