// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#include "wce/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wce/error.hpp"

namespace wce {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptySpace: return "EmptySpace";
    case ErrorKind::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorKind::NotAPartition: return "NotAPartition";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotMeasurable: return "NotMeasurable";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotFiberMeasurable: return "NotFiberMeasurable";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// FiniteMeasureSpace

FiniteMeasureSpace FiniteMeasureSpace::make(std::vector<double> weights,
                                            std::vector<std::string> labels) {
  if (weights.empty())
    throw Error(ErrorKind::EmptySpace, "measure space needs at least one point");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] <= 0.0) {
      std::ostringstream os;
      os << "weight " << i << " = " << weights[i]
         << " is not a finite positive number";
      throw Error(ErrorKind::NonpositiveWeight, os.str());
    }
  }
  if (!labels.empty()) {
    if (labels.size() != weights.size())
      throw Error(ErrorKind::SpaceMismatch,
                  "label count differs from point count");
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::ConfigInvalid, "point labels must be distinct");
  }
  auto d = std::make_shared<Data>();
  d->total = 0.0;
  for (double w : weights) d->total += w;
  d->weights = std::move(weights);
  d->labels = std::move(labels);
  return FiniteMeasureSpace(std::move(d));
}

bool FiniteMeasureSpace::operator==(
    const FiniteMeasureSpace& other) const noexcept {
  if (data_ == other.data_) return true;
  return data_->weights == other.data_->weights &&
         data_->labels == other.data_->labels;
}

void require_same_space(const FiniteMeasureSpace& a,
                        const FiniteMeasureSpace& b) {
  if (!(a == b))
    throw Error(ErrorKind::SpaceMismatch,
                "operands live on different measure spaces");
}

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(std::vector<std::size_t> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

bool IndexSet::contains(std::size_t i) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), i);
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
  std::vector<std::size_t> out;
  std::set_intersection(members_.begin(), members_.end(),
                        other.members_.begin(), other.members_.end(),
                        std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet IndexSet::unite(const IndexSet& other) const {
  std::vector<std::size_t> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet IndexSet::minus(const IndexSet& other) const {
  std::vector<std::size_t> out;
  std::set_difference(members_.begin(), members_.end(),
                      other.members_.begin(), other.members_.end(),
                      std::back_inserter(out));
  return IndexSet(std::move(out));
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

IndexSet IndexSet::all(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return IndexSet(std::move(m));
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(FiniteMeasureSpace space,
                     std::vector<std::vector<std::size_t>> blocks)
    : space_(std::move(space)), blocks_(std::move(blocks)) {
  owner_.assign(space_.size(), 0);
  masses_.assign(blocks_.size(), 0.0);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (std::size_t i : blocks_[b]) {
      owner_[i] = b;
      masses_[b] += space_.weight(i);
    }
  }
}

Partition Partition::make(const FiniteMeasureSpace& space,
                          std::vector<std::vector<std::size_t>> blocks) {
  const std::size_t n = space.size();
  std::vector<int> seen(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) {
      std::ostringstream os;
      os << "block " << b << " is empty";
      throw Error(ErrorKind::NotAPartition, os.str());
    }
    for (std::size_t i : blocks[b]) {
      if (i >= n) {
        std::ostringstream os;
        os << "block " << b << " names point " << i << " outside 0.." << n - 1;
        throw Error(ErrorKind::NotAPartition, os.str());
      }
      if (seen[i] >= 0) {
        std::ostringstream os;
        os << "blocks " << seen[i] << " and " << b << " overlap at point " << i;
        throw Error(ErrorKind::NotAPartition, os.str());
      }
      seen[i] = static_cast<int>(b);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i] < 0) {
      std::ostringstream os;
      os << "point " << i << " is not covered by any block";
      throw Error(ErrorKind::NotAPartition, os.str());
    }
  }
  for (auto& blk : blocks) std::sort(blk.begin(), blk.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return Partition(space, std::move(blocks));
}

Partition Partition::finest(const FiniteMeasureSpace& space) {
  std::vector<std::vector<std::size_t>> blocks(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) blocks[i] = {i};
  return Partition(space, std::move(blocks));
}

Partition Partition::coarsest(const FiniteMeasureSpace& space) {
  return Partition(space, {IndexSet::all(space.size()).members()});
}

IndexSet Partition::points_of(std::span<const std::size_t> block_ids) const {
  std::vector<std::size_t> pts;
  for (std::size_t b : block_ids)
    pts.insert(pts.end(), blocks_[b].begin(), blocks_[b].end());
  return IndexSet(std::move(pts));
}

bool Partition::refines(const Partition& coarser) const {
  if (!(space_ == coarser.space_)) return false;
  for (const auto& blk : blocks_) {
    const std::size_t target = coarser.block_of(blk.front());
    for (std::size_t i : blk)
      if (coarser.block_of(i) != target) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// MeasurableFunction

MeasurableFunction::MeasurableFunction(FiniteMeasureSpace space, Vector values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != space_.size()) {
    std::ostringstream os;
    os << "function has " << values_.size() << " values on a "
       << space_.size() << "-point space";
    throw Error(ErrorKind::SpaceMismatch, os.str());
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_(i).real()) || !std::isfinite(values_(i).imag())) {
      std::ostringstream os;
      os << "value " << i << " is not finite";
      throw Error(ErrorKind::NonFiniteValue, os.str());
    }
  }
}

MeasurableFunction::MeasurableFunction(FiniteMeasureSpace space,
                                       std::vector<cplx> values)
    : MeasurableFunction(
          std::move(space),
          Vector(Eigen::Map<const Vector>(values.data(),
                                          static_cast<Eigen::Index>(values.size())))) {}

MeasurableFunction MeasurableFunction::constant(const FiniteMeasureSpace& space,
                                                cplx c) {
  return {space, Vector::Constant(static_cast<Eigen::Index>(space.size()), c)};
}

MeasurableFunction MeasurableFunction::indicator(const FiniteMeasureSpace& space,
                                                 const IndexSet& set) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  for (std::size_t i : set.members()) v(static_cast<Eigen::Index>(i)) = 1.0;
  return {space, std::move(v)};
}

double MeasurableFunction::max_abs() const noexcept {
  return values_.size() == 0 ? 0.0 : values_.cwiseAbs().maxCoeff();
}

MeasurableFunction MeasurableFunction::conj() const {
  return {space_, values_.conjugate()};
}

MeasurableFunction MeasurableFunction::abs() const {
  return {space_, values_.cwiseAbs().cast<cplx>()};
}

MeasurableFunction MeasurableFunction::abs_pow(double p) const {
  Vector v(values_.size());
  for (Eigen::Index i = 0; i < values_.size(); ++i)
    v(i) = std::pow(std::abs(values_(i)), p);
  return {space_, std::move(v)};
}

MeasurableFunction MeasurableFunction::operator*(
    const MeasurableFunction& other) const {
  require_same_space(space_, other.space_);
  return {space_, values_.cwiseProduct(other.values_)};
}

MeasurableFunction MeasurableFunction::operator+(
    const MeasurableFunction& other) const {
  require_same_space(space_, other.space_);
  return {space_, values_ + other.values_};
}

MeasurableFunction MeasurableFunction::operator-(
    const MeasurableFunction& other) const {
  require_same_space(space_, other.space_);
  return {space_, values_ - other.values_};
}

MeasurableFunction MeasurableFunction::scaled(cplx c) const {
  return {space_, values_ * c};
}

// ---------------------------------------------------------------------------

IndexSet support(const MeasurableFunction& f, double tol) {
  const double scale = f.max_abs();
  if (scale == 0.0) return {};
  const double cut = tol * scale;
  std::vector<std::size_t> pts;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(f[i]) > cut) pts.push_back(i);
  return IndexSet(std::move(pts));
}

bool is_measurable(const MeasurableFunction& f, const Partition& p,
                   double tol) {
  require_same_space(f.space(), p.space());
  const double slack = tol * (1.0 + f.max_abs());
  for (const auto& blk : p.blocks()) {
    const cplx ref = f[blk.front()];
    for (std::size_t i : blk)
      if (std::abs(f[i] - ref) > slack) return false;
  }
  return true;
}

}  // namespace wce
