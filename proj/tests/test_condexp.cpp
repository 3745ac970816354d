// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace wce;
using wce::test::dist;
using wce::test::fn;
using wce::test::mat;

TEST_SUITE("condexp") {

TEST_CASE("cond_exp examples") {
  const auto s = make_space({1, 3});
  const CondExp e(Partition::coarsest(s));
  const auto avg = e(fn(s, {4, 0}));
  CHECK(std::abs(avg[0] - cplx(1)) < 1e-15);
  CHECK(std::abs(avg[1] - cplx(1)) < 1e-15);

  const auto f = fn(s, {cplx(2, 1), -7});
  CHECK(CondExp(Partition::finest(s))(f) == f);
  const auto one = MeasurableFunction::constant(s, 1.0);
  CHECK((e(one).values() - one.values()).norm() < 1e-15);
}

TEST_CASE("cond_exp_operator examples") {
  const auto s11 = make_space({1, 1});
  CHECK(dist(CondExp(Partition::coarsest(s11)).matrix(),
             mat({{0.5, 0.5}, {0.5, 0.5}})) < 1e-15);
  CHECK(dist(CondExp(Partition::finest(s11)).matrix(), Matrix::Identity(2, 2)) ==
        0.0);
  const auto s13 = make_space({1, 3});
  CHECK(dist(CondExp(Partition::coarsest(s13)).matrix(),
             mat({{0.25, 0.75}, {0.25, 0.75}})) < 1e-15);
}

TEST_CASE("matrix agrees with cond_exp on basis vectors") {
  Rng rng(5);
  const auto s = test::random_space(7, rng);
  const CondExp e(test::random_partition(s, 3, rng));
  const auto m = e.matrix();
  for (std::size_t j = 0; j < 7; ++j) {
    const auto ej = MeasurableFunction::indicator(s, IndexSet({j}));
    CHECK((m.apply(ej).values() - e(ej).values()).norm() < 1e-14);
  }
}

TEST_CASE("properties: conditional expectation identities") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(20);
    const auto s = test::random_space(n, rng);
    const auto p = test::random_partition(s, 1 + rng.index(n), rng);
    const CondExp e(p);
    const auto f = test::random_fn(s, rng);
    const auto h = test::random_fn(s, rng);
    const auto g = test::random_measurable(p, rng);
    const double tol = 1e-12 * (1 + f.max_abs() * (1 + g.max_abs()));

    const auto ef = e(f);
    CHECK((e(ef).values() - ef.values()).cwiseAbs().maxCoeff() <= tol);
    CHECK(is_measurable(ef, p, 1e-12));
    CHECK((e(g).values() - g.values()).cwiseAbs().maxCoeff() <= tol);
    CHECK((e(f * g).values() - (ef * g).values()).cwiseAbs().maxCoeff() <= tol * 16);

    for (double pw : {1.0, 2.0, 4.0}) {
      const auto lhs = ef.abs_pow(pw);
      const auto rhs = e(f.abs_pow(pw));
      for (std::size_t i = 0; i < n; ++i)
        CHECK(lhs[i].real() <= rhs[i].real() * (1 + 1e-12) + 1e-12);
    }

    const auto fpos = f.abs();
    const auto epos = e(fpos);
    for (std::size_t i = 0; i < n; ++i) CHECK(epos[i].real() >= 0.0);
    CHECK(support(fpos, 0.0).is_subset_of(support(epos, 0.0)));

    const auto efh = e(f * h);
    for (auto [pp, qq] : {std::pair{2.0, 2.0}, std::pair{4.0, 4.0 / 3.0}}) {
      const auto a = e(f.abs_pow(pp));
      const auto b = e(h.abs_pow(qq));
      for (std::size_t i = 0; i < n; ++i) {
        const double bound =
            std::pow(a[i].real(), 1 / pp) * std::pow(b[i].real(), 1 / qq);
        CHECK(std::abs(efh[i]) <= bound * (1 + 1e-12) + 1e-12);
      }
    }

    const cplx l = weighted_inner(ef, h), r = weighted_inner(f, e(h));
    CHECK(std::abs(l - r) <= 1e-12 * (1 + std::abs(l)) * s.total_mass() * 16);
  }
}

TEST_CASE("strict positivity") {
  const auto s = make_space({0.5, 2, 1});
  const CondExp e(make_partition(s, {{0, 2}, {1}}));
  const auto out = e(fn(s, {1e-3, 2, 5}));
  for (std::size_t i = 0; i < 3; ++i) CHECK(out[i].real() > 0.0);
}

}  // TEST_SUITE
