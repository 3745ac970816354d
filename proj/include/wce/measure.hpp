// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

// Finite measure spaces, partition sub-algebras and measurable functions.
//
// A FiniteMeasureSpace is n points with strictly positive masses and every
// subset measurable, so "almost everywhere" collapses to "everywhere" and the
// essential supremum is a plain maximum. A sub-sigma-algebra of such a space
// is always generated by a partition of the points; the blocks are its atoms.

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wce {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kDefaultSupportTol = 1e-10;

class FiniteMeasureSpace {
 public:
  /// Throws Error(EmptySpace) or Error(NonpositiveWeight).
  static FiniteMeasureSpace make(std::vector<double> weights,
                                 std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return data_->weights.size(); }
  double weight(std::size_t i) const { return data_->weights[i]; }
  std::span<const double> weights() const noexcept { return data_->weights; }
  double total_mass() const noexcept { return data_->total; }
  const std::vector<std::string>& labels() const noexcept {
    return data_->labels;
  }

  /// Structural equality: same point masses and labels.
  bool operator==(const FiniteMeasureSpace& other) const noexcept;

 private:
  struct Data {
    std::vector<double> weights;
    std::vector<std::string> labels;
    double total = 0.0;
  };
  explicit FiniteMeasureSpace(std::shared_ptr<const Data> d)
      : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

inline FiniteMeasureSpace make_space(std::vector<double> weights) {
  return FiniteMeasureSpace::make(std::move(weights));
}

/// Sorted subset of point indices.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<std::size_t> members);

  const std::vector<std::size_t>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(std::size_t i) const noexcept;

  IndexSet intersect(const IndexSet& other) const;
  IndexSet unite(const IndexSet& other) const;
  IndexSet minus(const IndexSet& other) const;
  bool is_subset_of(const IndexSet& other) const;

  static IndexSet all(std::size_t n);

  bool operator==(const IndexSet&) const = default;

 private:
  std::vector<std::size_t> members_;
};

class Partition {
 public:
  /// Blocks must be nonempty, disjoint and cover {0..n-1}; they are stored
  /// canonically (members sorted, blocks ordered by smallest member).
  /// Throws Error(NotAPartition).
  static Partition make(const FiniteMeasureSpace& space,
                        std::vector<std::vector<std::size_t>> blocks);
  static Partition finest(const FiniteMeasureSpace& space);
  static Partition coarsest(const FiniteMeasureSpace& space);

  const FiniteMeasureSpace& space() const noexcept { return space_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept {
    return blocks_;
  }
  const std::vector<std::size_t>& block(std::size_t b) const {
    return blocks_[b];
  }
  std::size_t block_of(std::size_t point) const { return owner_[point]; }
  double block_mass(std::size_t b) const { return masses_[b]; }

  /// Union of the given blocks as a point set.
  IndexSet points_of(std::span<const std::size_t> block_ids) const;

  /// True when every block of *this lies inside a block of coarser.
  bool refines(const Partition& coarser) const;

  bool operator==(const Partition& other) const noexcept {
    return space_ == other.space_ && blocks_ == other.blocks_;
  }

 private:
  Partition(FiniteMeasureSpace space,
            std::vector<std::vector<std::size_t>> blocks);

  FiniteMeasureSpace space_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> owner_;
  std::vector<double> masses_;
};

inline Partition make_partition(const FiniteMeasureSpace& space,
                                std::vector<std::vector<std::size_t>> blocks) {
  return Partition::make(space, std::move(blocks));
}

/// A complex-valued function on the points of a space.
class MeasurableFunction {
 public:
  /// Throws Error(SpaceMismatch) on a length mismatch and
  /// Error(NonFiniteValue) on NaN or infinite entries.
  MeasurableFunction(FiniteMeasureSpace space, Vector values);
  MeasurableFunction(FiniteMeasureSpace space, std::vector<cplx> values);

  static MeasurableFunction constant(const FiniteMeasureSpace& space, cplx c);
  static MeasurableFunction indicator(const FiniteMeasureSpace& space,
                                      const IndexSet& set);

  const FiniteMeasureSpace& space() const noexcept { return space_; }
  const Vector& values() const noexcept { return values_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(values_.size());
  }
  cplx operator[](std::size_t i) const {
    return values_(static_cast<Eigen::Index>(i));
  }

  double max_abs() const noexcept;

  MeasurableFunction conj() const;
  MeasurableFunction abs() const;
  MeasurableFunction abs_pow(double p) const;
  MeasurableFunction operator*(const MeasurableFunction& other) const;
  MeasurableFunction operator+(const MeasurableFunction& other) const;
  MeasurableFunction operator-(const MeasurableFunction& other) const;
  MeasurableFunction scaled(cplx c) const;

  bool operator==(const MeasurableFunction& other) const noexcept {
    return space_ == other.space_ && values_ == other.values_;
  }

 private:
  FiniteMeasureSpace space_;
  Vector values_;
};

/// S(f) = {i : |f_i| > tol * max_j |f_j|}; empty for f = 0. With tol = 0
/// this is the exact set where f is nonzero.
IndexSet support(const MeasurableFunction& f, double tol = kDefaultSupportTol);

/// f is constant on each block up to tol * (1 + max|f|).
/// Throws Error(SpaceMismatch).
bool is_measurable(const MeasurableFunction& f, const Partition& p,
                   double tol = kDefaultSupportTol);

/// Throws Error(SpaceMismatch) when a and b live on different spaces.
void require_same_space(const FiniteMeasureSpace& a,
                        const FiniteMeasureSpace& b);

}  // namespace wce
