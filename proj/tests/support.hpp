// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "wce/harness.hpp"

namespace wce::test {

inline MeasurableFunction fn(const FiniteMeasureSpace& s,
                             std::initializer_list<cplx> values) {
  return MeasurableFunction(s, std::vector<cplx>(values));
}

inline Matrix mat(std::initializer_list<std::initializer_list<cplx>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  Matrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline double dist(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double dist(const WeightedOperator& a, const WeightedOperator& b) {
  return dist(a.matrix(), b.matrix());
}

inline double dist(const WeightedOperator& a, const Matrix& b) {
  return dist(a.matrix(), b);
}

// Random partition of n points into k nonempty blocks.
inline Partition random_partition(const FiniteMeasureSpace& s, std::size_t k,
                                  Rng& rng) {
  std::vector<std::size_t> order(s.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<std::vector<std::size_t>> blocks(k);
  for (std::size_t i = 0; i < order.size(); ++i)
    blocks[i < k ? i : rng.index(k)].push_back(order[i]);
  return Partition::make(s, blocks);
}

inline FiniteMeasureSpace random_space(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  for (auto& x : w) x = rng.uniform(0.1, 10.0);
  return FiniteMeasureSpace::make(w);
}

inline MeasurableFunction random_fn(const FiniteMeasureSpace& s, Rng& rng,
                                    double scale = 4.0) {
  std::vector<cplx> v(s.size());
  for (auto& x : v) x = {rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
  return MeasurableFunction(s, v);
}

inline MeasurableFunction random_measurable(const Partition& p, Rng& rng) {
  std::vector<cplx> v(p.space().size());
  for (const auto& blk : p.blocks()) {
    const cplx c{rng.uniform(-4, 4), rng.uniform(-4, 4)};
    for (auto i : blk) v[i] = c;
  }
  return MeasurableFunction(p.space(), v);
}

}  // namespace wce::test
