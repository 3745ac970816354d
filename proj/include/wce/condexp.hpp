// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "wce/measure.hpp"
#include "wce/opalgebra.hpp"

namespace wce {

/// Conditional expectation onto the algebra generated by a partition:
/// mu-weighted averaging over each block.
class CondExp {
 public:
  explicit CondExp(Partition partition) : partition_(std::move(partition)) {}

  const Partition& partition() const noexcept { return partition_; }
  const FiniteMeasureSpace& space() const noexcept {
    return partition_.space();
  }

  /// Block averages, one per block (in partition block order).
  Vector block_values(const MeasurableFunction& f) const;

  /// Throws Error(SpaceMismatch).
  MeasurableFunction operator()(const MeasurableFunction& f) const;

  /// M_ij = mu_j / mu(B(i)) for j in B(i), else 0.
  WeightedOperator matrix() const;

 private:
  Partition partition_;
};

inline MeasurableFunction cond_exp(const CondExp& e,
                                   const MeasurableFunction& f) {
  return e(f);
}

inline WeightedOperator cond_exp_operator(const CondExp& e) {
  return e.matrix();
}

}  // namespace wce
