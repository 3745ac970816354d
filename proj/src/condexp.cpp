// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#include "wce/condexp.hpp"

namespace wce {

Vector CondExp::block_values(const MeasurableFunction& f) const {
  require_same_space(f.space(), space());
  const auto& p = partition_;
  Vector out(static_cast<Eigen::Index>(p.block_count()));
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    cplx acc = 0.0;
    for (std::size_t j : p.block(b)) acc += f[j] * space().weight(j);
    out(static_cast<Eigen::Index>(b)) = acc / p.block_mass(b);
  }
  return out;
}

MeasurableFunction CondExp::operator()(const MeasurableFunction& f) const {
  const Vector bv = block_values(f);
  Vector g(static_cast<Eigen::Index>(space().size()));
  for (std::size_t i = 0; i < space().size(); ++i)
    g(static_cast<Eigen::Index>(i)) =
        bv(static_cast<Eigen::Index>(partition_.block_of(i)));
  return {space(), std::move(g)};
}

WeightedOperator CondExp::matrix() const {
  const auto n = static_cast<Eigen::Index>(space().size());
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t b = 0; b < partition_.block_count(); ++b) {
    const double mass = partition_.block_mass(b);
    for (std::size_t i : partition_.block(b))
      for (std::size_t j : partition_.block(b))
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            space().weight(j) / mass;
  }
  return {space(), std::move(m)};
}

}  // namespace wce
