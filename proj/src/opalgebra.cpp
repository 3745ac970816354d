// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#include "wce/opalgebra.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "wce/error.hpp"

namespace wce {

namespace {

Eigen::VectorXd sqrt_weights(const FiniteMeasureSpace& space) {
  Eigen::VectorXd s(static_cast<Eigen::Index>(space.size()));
  for (std::size_t i = 0; i < space.size(); ++i)
    s(static_cast<Eigen::Index>(i)) = std::sqrt(space.weight(i));
  return s;
}

Eigen::JacobiSVD<Matrix> svd_of(const Matrix& b) {
  return Eigen::JacobiSVD<Matrix>(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

Eigen::Index numerical_rank(const Eigen::VectorXd& sv, double rank_tol) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = rank_tol * sv(0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

}  // namespace

WeightedOperator::WeightedOperator(FiniteMeasureSpace space, Matrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(space_.size());
  if (entries_.rows() != n || entries_.cols() != n) {
    std::ostringstream os;
    os << "operator is " << entries_.rows() << "x" << entries_.cols()
       << " on a " << n << "-point space";
    throw Error(ErrorKind::SpaceMismatch, os.str());
  }
  if (!entries_.allFinite())
    throw Error(ErrorKind::NonFiniteValue, "operator has non-finite entries");
}

WeightedOperator WeightedOperator::identity(const FiniteMeasureSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  return {space, Matrix::Identity(n, n)};
}

WeightedOperator WeightedOperator::zero(const FiniteMeasureSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  return {space, Matrix::Zero(n, n)};
}

WeightedOperator WeightedOperator::multiplication(
    const MeasurableFunction& phi) {
  return {phi.space(), phi.values().asDiagonal().toDenseMatrix()};
}

MeasurableFunction WeightedOperator::apply(const MeasurableFunction& f) const {
  require_same_space(space_, f.space());
  return {space_, entries_ * f.values()};
}

WeightedOperator WeightedOperator::operator*(const WeightedOperator& rhs) const {
  require_same_space(space_, rhs.space_);
  return {space_, entries_ * rhs.entries_};
}

WeightedOperator WeightedOperator::operator+(const WeightedOperator& rhs) const {
  require_same_space(space_, rhs.space_);
  return {space_, entries_ + rhs.entries_};
}

WeightedOperator WeightedOperator::operator-(const WeightedOperator& rhs) const {
  require_same_space(space_, rhs.space_);
  return {space_, entries_ - rhs.entries_};
}

WeightedOperator WeightedOperator::scaled(cplx c) const {
  return {space_, entries_ * c};
}

cplx weighted_inner(const MeasurableFunction& f, const MeasurableFunction& g) {
  require_same_space(f.space(), g.space());
  cplx acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    acc += f[i] * std::conj(g[i]) * f.space().weight(i);
  return acc;
}

double weighted_norm(const MeasurableFunction& f) {
  return std::sqrt(std::max(0.0, weighted_inner(f, f).real()));
}

Matrix to_euclidean(const WeightedOperator& a) {
  const Eigen::VectorXd s = sqrt_weights(a.space());
  return s.asDiagonal() * a.matrix() * s.cwiseInverse().asDiagonal();
}

WeightedOperator from_euclidean(const FiniteMeasureSpace& space,
                                const Matrix& b) {
  const Eigen::VectorXd s = sqrt_weights(space);
  return {space, s.cwiseInverse().asDiagonal() * b * s.asDiagonal()};
}

WeightedOperator weighted_adjoint(const WeightedOperator& a) {
  const auto& space = a.space();
  Matrix m = a.matrix().adjoint();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) *= space.weight(static_cast<std::size_t>(j)) /
                 space.weight(static_cast<std::size_t>(i));
  return {space, std::move(m)};
}

Eigen::VectorXd singular_values(const WeightedOperator& a) {
  Eigen::JacobiSVD<Matrix> svd(to_euclidean(a));
  return svd.singularValues();
}

double operator_norm(const WeightedOperator& a) {
  const Eigen::VectorXd sv = singular_values(a);
  return sv.size() == 0 ? 0.0 : sv(0);
}

double relative_deviation(const WeightedOperator& a,
                          const WeightedOperator& b) {
  const double scale = 1.0 + std::max(operator_norm(a), operator_norm(b));
  return operator_norm(a - b) / scale;
}

bool is_self_adjoint(const WeightedOperator& a, double tol) {
  return operator_norm(a - weighted_adjoint(a)) <= tol * operator_norm(a);
}

double commutator_norm(const WeightedOperator& a) {
  const WeightedOperator s = weighted_adjoint(a);
  return operator_norm(a * s - s * a);
}

EigenSystem hermitian_eig(const WeightedOperator& a, double tol) {
  const Matrix b = to_euclidean(a);
  const double norm = operator_norm(a);
  const double skew = Eigen::JacobiSVD<Matrix>(b - b.adjoint())
                          .singularValues()
                          .maxCoeff();
  if (skew > tol * norm) {
    std::ostringstream os;
    os << "operator is not self-adjoint: ||A - A*|| = " << skew
       << " vs ||A|| = " << norm;
    throw Error(ErrorKind::NotSelfAdjoint, os.str());
  }
  const Matrix h = 0.5 * (b + b.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd s = sqrt_weights(a.space());
  return {es.eigenvalues(), s.cwiseInverse().asDiagonal() * es.eigenvectors()};
}

std::vector<cplx> general_eigenvalues(const WeightedOperator& a) {
  Eigen::ComplexEigenSolver<Matrix> es(to_euclidean(a), false);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

namespace {

// Eigenvalues snapped to 0 near the kernel; returns the spectral scale.
double clamp_spectrum(Eigen::VectorXd& values, double clamp_tol) {
  const double scale = values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < values.size(); ++k)
    if (std::abs(values(k)) <= clamp_tol * scale) values(k) = 0.0;
  return scale;
}

WeightedOperator assemble(const FiniteMeasureSpace& space,
                          const EigenSystem& es, const Eigen::VectorXd& fvals) {
  // v_k are mu-orthonormal, so the rank-one piece v_k <., v_k>_mu has matrix
  // v_k v_k^H D.
  Matrix m = es.vectors * fvals.cast<cplx>().asDiagonal() * es.vectors.adjoint();
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    m.col(j) *= space.weight(static_cast<std::size_t>(j));
  return {space, std::move(m)};
}

}  // namespace

WeightedOperator positive_sqrt(const WeightedOperator& a, double clamp_tol) {
  EigenSystem es = hermitian_eig(a);
  const double scale = clamp_spectrum(es.values, clamp_tol);
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (es.values(k) < 0.0) {
      std::ostringstream os;
      os << "eigenvalue " << es.values(k) << " below -" << clamp_tol
         << " * " << scale;
      throw Error(ErrorKind::NotPositive, os.str());
    }
  }
  return assemble(a.space(), es, es.values.cwiseSqrt());
}

WeightedOperator func_calc_oracle(const WeightedOperator& a,
                                  const std::function<double(double)>& f,
                                  double clamp_tol) {
  EigenSystem es = hermitian_eig(a);
  clamp_spectrum(es.values, clamp_tol);
  Eigen::VectorXd fv(es.values.size());
  for (Eigen::Index k = 0; k < fv.size(); ++k) fv(k) = f(es.values(k));
  return assemble(a.space(), es, fv);
}

WeightedOperator normal_func_calc_oracle(const WeightedOperator& a,
                                         const std::function<cplx(cplx)>& f,
                                         double tol) {
  const double norm = operator_norm(a);
  const double comm = commutator_norm(a);
  if (comm > tol * (1.0 + norm * norm)) {
    std::ostringstream os;
    os << "operator is not normal: commutator norm " << comm;
    throw Error(ErrorKind::NotNormal, os.str());
  }
  Eigen::ComplexSchur<Matrix> schur(to_euclidean(a));
  const Matrix& q = schur.matrixU();
  const Matrix& t = schur.matrixT();
  Vector fd(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) fd(k) = f(t(k, k));
  return from_euclidean(a.space(), q * fd.asDiagonal() * q.adjoint());
}

PolarParts polar_oracle(const WeightedOperator& a, double rank_tol) {
  const auto svd = svd_of(to_euclidean(a));
  const Eigen::VectorXd& sv = svd.singularValues();
  const Eigen::Index r = numerical_rank(sv, rank_tol);
  const Matrix& w = svd.matrixU();
  const Matrix& v = svd.matrixV();
  Matrix u = w.leftCols(r) * v.leftCols(r).adjoint();
  Matrix p = v.leftCols(r) * sv.head(r).cast<cplx>().asDiagonal() *
             v.leftCols(r).adjoint();
  return {from_euclidean(a.space(), u), from_euclidean(a.space(), p)};
}

WeightedOperator kernel_projection(const WeightedOperator& a,
                                   double rank_tol) {
  const auto svd = svd_of(to_euclidean(a));
  const Eigen::Index r = numerical_rank(svd.singularValues(), rank_tol);
  const Matrix& v = svd.matrixV();
  const Eigen::Index k = v.cols() - r;
  const Matrix p = v.rightCols(k) * v.rightCols(k).adjoint();
  return from_euclidean(a.space(), p);
}

}  // namespace wce
