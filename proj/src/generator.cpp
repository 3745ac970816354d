// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <sstream>

#include "wce/error.hpp"
#include "wce/harness.hpp"

namespace wce {

namespace {

void invalid(const std::string& msg) {
  throw Error(ErrorKind::ConfigInvalid, msg);
}

cplx draw_value(Rng& rng, const GeneratorConfig& cfg) {
  const double r = rng.uniform(cfg.magnitude_lo, cfg.magnitude_hi);
  const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return std::polar(r, theta);
}

std::vector<std::vector<std::size_t>> draw_blocks(Rng& rng, std::size_t n,
                                                  std::size_t k,
                                                  bool need_big_block) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<std::vector<std::size_t>> blocks(k);
  for (std::size_t b = 0; b < k; ++b) blocks[b].push_back(order[b]);
  for (std::size_t i = k; i < n; ++i) {
    // The first surplus point always joins block 0 when a block with two
    // points is required.
    const std::size_t b = (need_big_block && i == k) ? 0 : rng.index(k);
    blocks[b].push_back(order[i]);
  }
  return blocks;
}

}  // namespace

void validate(const GeneratorConfig& cfg) {
  if (cfg.n < 2 || cfg.n > 64) invalid("n must lie in 2..64");
  if (cfg.block_count < 1 || cfg.block_count > cfg.n)
    invalid("block count must lie in 1..n");
  if (!(cfg.weight_lo > 0.0) || !(cfg.weight_lo <= cfg.weight_hi) ||
      !std::isfinite(cfg.weight_hi))
    invalid("weight range must be a nonempty interval of positive numbers");
  if (!(cfg.magnitude_lo >= 0.0) || !(cfg.magnitude_lo <= cfg.magnitude_hi) ||
      !std::isfinite(cfg.magnitude_hi))
    invalid("magnitude range must be a nonempty interval in [0, inf)");
  if (cfg.perturbed_u && cfg.block_count == cfg.n)
    invalid("perturbed_u needs a block with at least two points (blocks < n)");
  if (cfg.perturbed_u && cfg.constant_u)
    invalid("perturbed_u and constant_u are mutually exclusive");
}

InstanceRecord gen_instance(const GeneratorConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  const std::size_t n = cfg.n;
  const std::size_t k = cfg.block_count;

  std::vector<double> weights(n);
  for (auto& w : weights) w = rng.uniform(cfg.weight_lo, cfg.weight_hi);
  const auto space = FiniteMeasureSpace::make(std::move(weights));
  const auto partition =
      Partition::make(space, draw_blocks(rng, n, k, cfg.perturbed_u));

  std::vector<cplx> u(n), w(n);
  const bool block_constant = cfg.measurable_u || cfg.perturbed_u;
  if (cfg.constant_u) {
    const cplx c = draw_value(rng, cfg);
    std::fill(u.begin(), u.end(), c);
  } else if (block_constant) {
    for (const auto& blk : partition.blocks()) {
      const cplx c = draw_value(rng, cfg);
      for (std::size_t i : blk) u[i] = c;
    }
  } else {
    for (auto& v : u) v = draw_value(rng, cfg);
  }
  for (auto& v : w) v = draw_value(rng, cfg);

  if (cfg.perturbed_u) {
    std::vector<std::size_t> big;
    for (std::size_t b = 0; b < k; ++b)
      if (partition.block(b).size() > 1) big.push_back(b);
    const auto& blk = partition.block(big[rng.index(big.size())]);
    const std::size_t at = blk[rng.index(blk.size())];
    const double size = rng.uniform(1e-3, 1e-2) * (1.0 + std::abs(u[at]));
    u[at] += std::polar(size, rng.uniform(0.0, 2.0 * std::numbers::pi));
  }

  if (cfg.zero_blocks) {
    std::vector<std::size_t> ids(k);
    for (std::size_t b = 0; b < k; ++b) ids[b] = b;
    rng.shuffle(ids);
    const std::size_t zeros = k == 1 ? 1 : 1 + rng.index(k - 1);
    for (std::size_t z = 0; z < zeros; ++z)
      for (std::size_t i : partition.block(ids[z])) u[i] = 0.0;
    // Half the time also clear w on a block where u survives, so S and G
    // differ.
    if (zeros < k && rng.chance(0.5))
      for (std::size_t i : partition.block(ids[zeros])) w[i] = 0.0;
  }

  if (cfg.partial_isometry) {
    const CondExp e(partition);
    MeasurableFunction uf(space, u), wf(space, w);
    const Vector eu2 = e.block_values(uf.abs_pow(2.0));
    const Vector ew2 = e.block_values(wf.abs_pow(2.0));
    std::vector<bool> in_a(k);
    bool any = false;
    for (std::size_t b = 0; b < k; ++b) {
      in_a[b] = rng.chance(0.5);
      any = any || in_a[b];
    }
    if (!any) in_a[rng.index(k)] = true;
    for (std::size_t b = 0; b < k; ++b) {
      const double prod = eu2(static_cast<Eigen::Index>(b)).real() *
                          ew2(static_cast<Eigen::Index>(b)).real();
      const double scale = (in_a[b] && prod > 0.0) ? 1.0 / std::sqrt(prod) : 0.0;
      for (std::size_t i : partition.block(b)) w[i] *= scale;
    }
  }

  std::optional<PointMap> phi;
  if (cfg.with_point_map) {
    std::vector<std::size_t> images(n);
    for (auto& im : images) im = rng.index(n);
    phi.emplace(space, std::move(images));
  }

  return {WCEInstance(partition, MeasurableFunction(space, std::move(u)),
                      MeasurableFunction(space, std::move(w))),
          std::move(phi)};
}

MeasurableFunction random_fiber_measurable(const PointMap& phi, Rng& rng) {
  const std::size_t n = phi.space().size();
  std::vector<cplx> per_target(n);
  for (auto& v : per_target)
    v = std::polar(rng.uniform(0.0, 4.0),
                   rng.uniform(0.0, 2.0 * std::numbers::pi));
  std::vector<cplx> u(n);
  for (std::size_t x = 0; x < n; ++x) u[x] = per_target[phi(x)];
  return {phi.space(), std::move(u)};
}

}  // namespace wce
