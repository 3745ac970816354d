// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#include "wce/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "wce/error.hpp"

namespace wce {

namespace {

void require_normal(const MeasurableFunction& u, const Partition& p) {
  if (!is_normal_EMu(u, p))
    throw Error(ErrorKind::NotNormal,
                "EM_u is normal only when u is constant on every block");
}

// Groups nearby values; returns representatives in first-seen order and the
// group index of each input value.
std::vector<cplx> group_values(const std::vector<cplx>& values, double tol,
                               std::vector<std::size_t>* group_of = nullptr) {
  std::vector<cplx> reps;
  if (group_of) group_of->assign(values.size(), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::size_t g = 0;
    while (g < reps.size() && std::abs(reps[g] - values[i]) > tol) ++g;
    if (g == reps.size()) reps.push_back(values[i]);
    if (group_of) (*group_of)[i] = g;
  }
  return reps;
}

bool lex_less(cplx a, cplx b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

WeightedOperator diag_times(const Vector& d, const WeightedOperator& a) {
  return {a.space(), d.asDiagonal() * a.matrix()};
}

}  // namespace

WeightedOperator build_EMu(const MeasurableFunction& u, const Partition& p) {
  require_same_space(u.space(), p.space());
  return cond_exp_operator(CondExp(p)) * WeightedOperator::multiplication(u);
}

bool is_normal_EMu(const MeasurableFunction& u, const Partition& p,
                   double tol) {
  return is_measurable(u, p, tol);
}

std::vector<cplx> spectrum_EMu(const MeasurableFunction& u, const Partition& p,
                               double grouping_tol) {
  require_same_space(u.space(), p.space());
  const Vector bv = CondExp(p).block_values(u);
  std::vector<cplx> vals(bv.data(), bv.data() + bv.size());
  const double scale = 1.0 + (bv.size() ? bv.cwiseAbs().maxCoeff() : 0.0);
  const double tol = grouping_tol * scale;
  vals.insert(vals.begin(), cplx(0.0));
  std::vector<cplx> reps = group_values(vals, tol);
  reps.front() = 0.0;
  std::sort(reps.begin(), reps.end(), lex_less);
  return reps;
}

WeightedOperator star_poly_calc(const MeasurableFunction& u, const Partition& p,
                                const StarPolynomial& coeffs) {
  require_same_space(u.space(), p.space());
  require_normal(u, p);
  Vector pv = Vector::Zero(static_cast<Eigen::Index>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i) {
    const cplx z = u[i];
    cplx acc = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n)
      for (std::size_t m = 0; m < coeffs[n].size(); ++m)
        acc += coeffs[n][m] * std::pow(z, static_cast<int>(m)) *
               std::pow(std::conj(z), static_cast<int>(n));
    pv(static_cast<Eigen::Index>(i)) = acc;
  }
  return diag_times(pv, cond_exp_operator(CondExp(p)));
}

WeightedOperator cont_func_calc_EMu(const MeasurableFunction& u,
                                    const Partition& p,
                                    const std::function<cplx(cplx)>& f) {
  require_same_space(u.space(), p.space());
  require_normal(u, p);
  Vector fv(static_cast<Eigen::Index>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i)
    fv(static_cast<Eigen::Index>(i)) = f(u[i]);
  return diag_times(fv, cond_exp_operator(CondExp(p)));
}

SpectralDecomp spectral_decomposition(const MeasurableFunction& u,
                                      const Partition& p,
                                      double grouping_tol) {
  require_same_space(u.space(), p.space());
  require_normal(u, p);
  const CondExp e(p);
  const Vector bv = e.block_values(u);
  const double tol =
      grouping_tol * (1.0 + (bv.size() ? bv.cwiseAbs().maxCoeff() : 0.0));

  std::vector<cplx> nonzero;
  std::vector<std::size_t> nonzero_blocks;
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    const cplx v = bv(static_cast<Eigen::Index>(b));
    if (std::abs(v) > tol) {
      nonzero.push_back(v);
      nonzero_blocks.push_back(b);
    }
  }
  std::vector<std::size_t> group_of;
  const std::vector<cplx> lambdas = group_values(nonzero, tol, &group_of);

  const WeightedOperator emat = cond_exp_operator(e);
  SpectralDecomp out;
  WeightedOperator rest = WeightedOperator::identity(u.space());
  for (std::size_t g = 0; g < lambdas.size(); ++g) {
    std::vector<std::size_t> ids;
    for (std::size_t k = 0; k < nonzero.size(); ++k)
      if (group_of[k] == g) ids.push_back(nonzero_blocks[k]);
    const IndexSet region = p.points_of(ids);
    const WeightedOperator proj = diag_times(
        MeasurableFunction::indicator(u.space(), region).values(), emat);
    rest = rest - proj;
    out.eigenvalues.push_back(lambdas[g]);
    out.projections.push_back(proj);
  }
  // rest is an orthogonal projection, so its norm is 0 or 1.
  if (operator_norm(rest) > 0.5) {
    out.eigenvalues.push_back(0.0);
    out.projections.push_back(rest);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Point maps and spectral measures

PointMap::PointMap(FiniteMeasureSpace space, std::vector<std::size_t> images)
    : space_(std::move(space)), images_(std::move(images)) {
  if (images_.size() != space_.size()) {
    std::ostringstream os;
    os << "point map has " << images_.size() << " images on a "
       << space_.size() << "-point space";
    throw Error(ErrorKind::SpaceMismatch, os.str());
  }
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] >= space_.size()) {
      std::ostringstream os;
      os << "point map sends " << i << " to " << images_[i]
         << ", outside the space";
      throw Error(ErrorKind::ConfigInvalid, os.str());
    }
  }
}

PointMap PointMap::identity(const FiniteMeasureSpace& space) {
  return {space, IndexSet::all(space.size()).members()};
}

IndexSet PointMap::preimage(const IndexSet& s) const {
  std::vector<std::size_t> pts;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (s.contains(images_[i])) pts.push_back(i);
  return IndexSet(std::move(pts));
}

Partition fiber_partition(const PointMap& phi) {
  std::vector<std::vector<std::size_t>> fibers(phi.space().size());
  for (std::size_t i = 0; i < phi.images().size(); ++i)
    fibers[phi(i)].push_back(i);
  std::erase_if(fibers, [](const auto& f) { return f.empty(); });
  return Partition::make(phi.space(), std::move(fibers));
}

MeasurableFunction pushforward_density(const PointMap& phi) {
  const auto& space = phi.space();
  Vector h = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  for (std::size_t i = 0; i < space.size(); ++i)
    h(static_cast<Eigen::Index>(phi(i))) += space.weight(i);
  for (std::size_t x = 0; x < space.size(); ++x)
    h(static_cast<Eigen::Index>(x)) /= space.weight(x);
  return {space, std::move(h)};
}

WeightedOperator spectral_measure(const PointMap& phi, const IndexSet& s) {
  const CondExp e(fiber_partition(phi));
  return cond_exp_operator(e) *
         WeightedOperator::multiplication(
             MeasurableFunction::indicator(phi.space(), phi.preimage(s)));
}

SpectralMeasureTable::SpectralMeasureTable(const PointMap& phi)
    : phi_(phi), cond_exp_(fiber_partition(phi)) {
  const WeightedOperator e = cond_exp_operator(cond_exp_);
  atoms_.reserve(phi.space().size());
  for (std::size_t s = 0; s < phi.space().size(); ++s) {
    const auto chi = MeasurableFunction::indicator(
        phi.space(), phi.preimage(IndexSet({s})));
    atoms_.push_back(e * WeightedOperator::multiplication(chi));
  }
}

WeightedOperator SpectralMeasureTable::operator()(const IndexSet& s) const {
  WeightedOperator acc = WeightedOperator::zero(phi_.space());
  for (std::size_t x : s.members()) acc = acc + atoms_[x];
  return acc;
}

double AxiomReport::worst() const {
  return std::max({projection, empty_set, whole_space, multiplicative, additive});
}

Matrix compress_to_fibers(const Partition& fibers, const WeightedOperator& a) {
  require_same_space(fibers.space(), a.space());
  const auto& space = a.space();
  const auto n = static_cast<Eigen::Index>(space.size());
  const auto k = static_cast<Eigen::Index>(fibers.block_count());
  Matrix q = Matrix::Zero(n, k);
  for (std::size_t b = 0; b < fibers.block_count(); ++b) {
    const double norm = std::sqrt(fibers.block_mass(b));
    for (std::size_t i : fibers.block(b))
      q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)) = 1.0 / norm;
  }
  Eigen::VectorXd mu(n);
  for (Eigen::Index i = 0; i < n; ++i)
    mu(i) = space.weight(static_cast<std::size_t>(i));
  return q.adjoint() * mu.asDiagonal() * a.matrix() * q;
}

AxiomReport check_spectral_axioms(const PointMap& phi, bool on_subspace,
                                  Rng& rng, std::size_t random_sets) {
  const SpectralMeasureTable table(phi);
  const Partition fibers = table.cond_exp().partition();
  const std::size_t n = phi.space().size();

  const auto size = [&](const WeightedOperator& a) {
    if (!on_subspace) return operator_norm(a);
    const Matrix c = compress_to_fibers(fibers, a);
    return c.size() == 0 ? 0.0 : Eigen::JacobiSVD<Matrix>(c).singularValues()(0);
  };

  std::vector<IndexSet> family;
  for (std::size_t s = 0; s < n; ++s) family.emplace_back(std::vector{s});
  for (std::size_t r = 0; r < random_sets; ++r) {
    std::vector<std::size_t> pts;
    for (std::size_t s = 0; s < n; ++s)
      if (rng.chance(0.5)) pts.push_back(s);
    family.emplace_back(std::move(pts));
  }
  family.push_back(IndexSet::all(n));

  AxiomReport rep;
  rep.on_subspace = on_subspace;

  for (const auto& s : family) {
    const WeightedOperator e = table(s);
    rep.projection = std::max({rep.projection, size(e * e - e),
                               size(e - weighted_adjoint(e))});
  }

  rep.empty_set = size(table(IndexSet{}));
  rep.whole_space =
      size(table(IndexSet::all(n)) - WeightedOperator::identity(phi.space()));

  for (std::size_t r = 0; r < family.size(); ++r) {
    const auto& s1 = family[r];
    const auto& s2 = family[rng.index(family.size())];
    const WeightedOperator lhs = table(s1.intersect(s2));
    rep.multiplicative =
        std::max(rep.multiplicative, size(lhs - table(s1) * table(s2)));
  }

  for (const auto& s : family) {
    const std::size_t pieces = 1 + rng.index(4);
    std::vector<std::vector<std::size_t>> parts(pieces);
    for (std::size_t x : s.members()) parts[rng.index(pieces)].push_back(x);
    WeightedOperator sum = WeightedOperator::zero(phi.space());
    for (auto& part : parts) sum = sum + table(IndexSet(std::move(part)));
    rep.additive = std::max(rep.additive, size(table(s) - sum));
  }
  // Countable additivity reduces to the singleton decomposition of X.
  WeightedOperator all = WeightedOperator::zero(phi.space());
  for (std::size_t s = 0; s < n; ++s) all = all + table.singleton(s);
  rep.additive = std::max(rep.additive, size(table(IndexSet::all(n)) - all));
  return rep;
}

WeightedOperator reconstruct_from_measure(const PointMap& phi,
                                          const MeasurableFunction& u,
                                          double tol) {
  require_same_space(phi.space(), u.space());
  const Partition fibers = fiber_partition(phi);
  if (!is_measurable(u, fibers, tol))
    throw Error(ErrorKind::NotFiberMeasurable,
                "u must be constant on every fiber of the point map");
  const SpectralMeasureTable table(phi);
  std::vector<cplx> v(phi.space().size(), cplx(0.0));
  for (std::size_t x = 0; x < phi.space().size(); ++x) v[phi(x)] = u[x];
  WeightedOperator acc = WeightedOperator::zero(phi.space());
  for (std::size_t s = 0; s < v.size(); ++s)
    if (v[s] != cplx(0.0)) acc = acc + table.singleton(s).scaled(v[s]);
  return acc;
}

}  // namespace wce
