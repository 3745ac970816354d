// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wce/error.hpp"

using namespace wce;
using wce::test::dist;
using wce::test::fn;
using wce::test::mat;

namespace {

FiniteMeasureSpace s13() { return make_space({1, 3}); }

WCEInstance one_block(std::initializer_list<cplx> u, std::initializer_list<cplx> w) {
  const auto s = s13();
  return WCEInstance(Partition::coarsest(s), fn(s, u), fn(s, w));
}

WCEInstance unit_instance(const Partition& p) {
  const auto one = MeasurableFunction::constant(p.space(), 1.0);
  return WCEInstance(p, one, one);
}

const std::vector<std::pair<const char*, RealFunction>>& test_functions() {
  static const std::vector<std::pair<const char*, RealFunction>> fs = {
      {"1", [](double) { return 1.0; }},
      {"t", [](double t) { return t; }},
      {"t^2", [](double t) { return t * t; }},
      {"t^3", [](double t) { return t * t * t; }},
      {"sqrt", [](double t) { return std::sqrt(std::max(t, 0.0)); }},
      {"exp(-t)", [](double t) { return std::exp(-t); }}};
  return fs;
}

}  // namespace

TEST_SUITE("decompositions") {

TEST_CASE("build_T") {
  Rng rng(1);
  const auto s = test::random_space(5, rng);
  const auto p = test::random_partition(s, 2, rng);
  CHECK(dist(build_T(unit_instance(p)), CondExp(p).matrix()) < 1e-14);

  const auto fine = Partition::finest(s);
  const auto u = test::random_fn(s, rng), w = test::random_fn(s, rng);
  CHECK(dist(build_T(WCEInstance(fine, u, w)),
             WeightedOperator::multiplication(u * w)) < 1e-13);

  const auto inst = one_block({2, 0}, {0, 1});
  const Matrix expect = mat({{0, 0}, {0.5, 0}});
  CHECK(dist(build_T(inst), expect) < 1e-15);
  CHECK(dist(build_T_product(inst), expect) < 1e-15);
  // basis vectors
  const auto e0 = MeasurableFunction::indicator(s13(), IndexSet({0}));
  const auto t0 = build_T(inst).apply(e0);
  CHECK(std::abs(t0[0]) < 1e-15);
  CHECK(std::abs(t0[1] - cplx(0.5)) < 1e-15);
}

TEST_CASE("closed adjoint") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = test::random_space(2 + rng.index(10), rng);
    const WCEInstance inst(test::random_partition(s, 1 + rng.index(s.size()), rng),
                           test::random_fn(s, rng), test::random_fn(s, rng));
    CHECK(relative_deviation(closed_adjoint(inst), weighted_adjoint(build_T(inst))) <
          1e-12);
  }
}

TEST_CASE("norm_formula") {
  Rng rng(3);
  const auto s = test::random_space(4, rng);
  CHECK(norm_formula(unit_instance(test::random_partition(s, 2, rng))) ==
        doctest::Approx(1.0));
  const auto inst = one_block({2, 0}, {0, 1});
  CHECK(norm_formula(inst) == doctest::Approx(0.8660254037844386).epsilon(1e-15));
  CHECK(operator_norm(build_T_product(inst)) ==
        doctest::Approx(0.8660254037844386).epsilon(1e-12));
  CHECK(norm_formula(one_block({2, 1}, {0, 0})) == 0.0);
}

TEST_CASE("check_vanishing") {
  const auto s = make_space({1, 2, 1, 3});
  const auto p = make_partition(s, {{0, 1}, {2, 3}});
  const auto one = MeasurableFunction::constant(s, 1.0);
  const WCEInstance unit(p, one, one);
  CHECK(check_vanishing(unit, MeasurableFunction::constant(s, 0.0)));
  CHECK(check_vanishing(unit, one));

  const WCEInstance local(p, fn(s, {1, 2, 0, 0}), fn(s, {3, -1, 0, 0}));
  const auto g = MeasurableFunction::indicator(s, IndexSet({2, 3}));
  CHECK(operator_norm(WeightedOperator::multiplication(g) * build_T(local)) == 0.0);
  CHECK(check_vanishing(local, g));

  CHECK_THROWS_AS(check_vanishing(local, fn(s, {1, 0, 0, 0})), Error);
}

TEST_CASE("partial_isometry_criterion") {
  Rng rng(4);
  const auto s = test::random_space(5, rng);
  const auto v = partial_isometry_criterion(unit_instance(test::random_partition(s, 2, rng)));
  CHECK(v.is_partial_isometry);
  CHECK(v.region == IndexSet::all(5));

  const auto a = one_block({2, 0}, {2, 0});
  const auto va = partial_isometry_criterion(a);
  CHECK(va.is_partial_isometry);
  CHECK(va.region == IndexSet({0, 1}));
  CHECK(partial_isometry_residual(a) < 1e-14);

  const auto b = one_block({4, 4}, {4, 4});  // Eu2 = Ew2 = 16
  const auto vb = partial_isometry_criterion(b);
  CHECK_FALSE(vb.is_partial_isometry);
  CHECK(vb.region == IndexSet({0, 1}));
  CHECK(partial_isometry_residual(b) > 100.0);

  const auto c = one_block({2, 2}, {2, 2});  // product 16 with u = w = 2
  CHECK_FALSE(partial_isometry_criterion(c).is_partial_isometry);
}

TEST_CASE("functional calculus examples") {
  Rng rng(5);
  const auto s = test::random_space(6, rng);
  const WCEInstance inst(test::random_partition(s, 3, rng), test::random_fn(s, rng),
                         test::random_fn(s, rng));
  const auto t = build_T_product(inst);
  const auto ts = weighted_adjoint(t);
  const auto tst = ts * t, tts = t * ts;
  const auto id = WeightedOperator::identity(s);

  CHECK(relative_deviation(closed_func_calc_TstarT(inst, [](double x) { return x; }),
                           tst) < 1e-12);
  CHECK(relative_deviation(closed_func_calc_TstarT(inst, [](double) { return 1.0; }),
                           id) < 1e-12);
  CHECK(relative_deviation(closed_power_TstarT(inst, 2), tst * tst) < 1e-12);
  CHECK(relative_deviation(closed_func_calc_TTstar(inst, [](double x) { return x; }),
                           tts) < 1e-12);
  CHECK(relative_deviation(closed_func_calc_TTstar(inst, [](double) { return 1.0; }),
                           id) < 1e-12);
  CHECK(relative_deviation(closed_power_TTstar(inst, 3), tts * tts * tts) < 1e-12);
}

TEST_CASE("closed_polar examples") {
  Rng rng(6);
  const auto s = test::random_space(4, rng);
  const auto p = test::random_partition(s, 2, rng);
  const auto unit = closed_polar(unit_instance(p));
  CHECK(dist(unit.unitary, CondExp(p).matrix()) < 1e-14);
  CHECK(dist(unit.modulus, CondExp(p).matrix()) < 1e-14);

  const auto inst = one_block({2, 0}, {0, 1});
  const auto pp = closed_polar(inst);
  const double r3 = std::sqrt(3.0);
  CHECK(dist(pp.modulus, mat({{r3 / 2, 0}, {0, 0}})) < 1e-15);
  CHECK(dist(pp.unitary, mat({{0, 0}, {1 / r3, 0}})) < 1e-15);
  const auto t = build_T_product(inst);
  CHECK(dist(pp.modulus * pp.modulus, weighted_adjoint(t) * t) < 1e-14);
  CHECK(dist(pp.unitary * pp.modulus, t) < 1e-15);

  const auto zero = closed_polar(one_block({0, 0}, {1, 2}));
  CHECK(dist(zero.unitary, WeightedOperator::zero(s13())) == 0.0);
  CHECK(dist(zero.modulus, WeightedOperator::zero(s13())) == 0.0);
}

TEST_CASE("closed_aluthge examples") {
  Rng rng(7);
  const auto s = test::random_space(4, rng);
  const auto p = test::random_partition(s, 3, rng);
  CHECK(dist(closed_aluthge(unit_instance(p)), CondExp(p).matrix()) < 1e-14);

  const auto inst = one_block({2, 0}, {2, 0});
  const auto hat = closed_aluthge(inst);
  CHECK(dist(hat, mat({{1, 0}, {0, 0}})) < 1e-15);
  const auto pp = polar_oracle(build_T_product(inst));
  const auto root = positive_sqrt(pp.modulus);
  CHECK(dist(hat, root * pp.unitary * root) < 1e-12);

  CHECK(dist(closed_aluthge(one_block({0, 0}, {1, 1})), WeightedOperator::zero(s13())) ==
        0.0);
}

TEST_CASE("w_algebra_norm") {
  const auto s = s13();
  const auto p = Partition::coarsest(s);
  CHECK(w_algebra_norm(MeasurableFunction::constant(s, 1.0), p) == doctest::Approx(1.0));
  CHECK(w_algebra_norm(fn(s, {2, 0}), p) == doctest::Approx(1.0));
  CHECK(w_algebra_norm(fn(s, {0, 0}), p) == 0.0);
}

TEST_CASE("properties: closed forms against oracles") {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.index(14);
    const auto s = test::random_space(n, rng);
    const auto p = test::random_partition(s, 1 + rng.index(n), rng);
    auto u = test::random_fn(s, rng), w = test::random_fn(s, rng);
    if (rng.chance(0.4)) {
      // kill u or w on one block to exercise the support indicators
      std::vector<cplx> uv(u.values().data(), u.values().data() + n);
      for (auto i : p.block(rng.index(p.block_count()))) uv[i] = 0.0;
      u = MeasurableFunction(s, uv);
    }
    const WCEInstance inst(p, u, w);
    const auto t = build_T_product(inst);
    const double nf = norm_formula(inst);
    CHECK(std::abs(nf - operator_norm(t)) <= 1e-9 * (1 + nf));

    const auto tst = weighted_adjoint(t) * t;
    const auto tts = t * weighted_adjoint(t);
    for (const auto& [name, f] : test_functions()) {
      CAPTURE(name);
      CHECK(relative_deviation(closed_func_calc_TstarT(inst, f),
                               func_calc_oracle(tst, f)) < 1e-7);
      CHECK(relative_deviation(closed_func_calc_TTstar(inst, f),
                               func_calc_oracle(tts, f)) < 1e-7);
    }

    const auto pp = closed_polar(inst);
    const auto oracle = polar_oracle(t);
    CHECK(relative_deviation(pp.modulus, oracle.modulus) < 1e-8);
    CHECK(relative_deviation(pp.unitary, oracle.unitary) < 1e-8);
    CHECK(relative_deviation(pp.unitary * pp.modulus, t) < 1e-8);

    const auto root = positive_sqrt(oracle.modulus);
    CHECK(relative_deviation(closed_aluthge(inst), root * oracle.unitary * root) < 1e-8);
    const auto v = aluthge_square_root(inst);
    CHECK(relative_deviation(v * v, pp.modulus) < 1e-8);

    // partial isometry equivalence in both directions
    const bool pi = partial_isometry_criterion(inst).is_partial_isometry;
    const bool oracle_pi =
        relative_deviation(t * weighted_adjoint(t) * t, t) <= 1e-8 * std::max(1.0, nf);
    CHECK(pi == oracle_pi);

    // w-algebra norm axioms
    const auto a = test::random_fn(s, rng), b = test::random_fn(s, rng);
    const cplx c{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    CHECK(w_algebra_norm(a.scaled(c), p) ==
          doctest::Approx(std::abs(c) * w_algebra_norm(a, p)).epsilon(1e-12));
    CHECK(w_algebra_norm(a + b, p) <=
          (w_algebra_norm(a, p) + w_algebra_norm(b, p)) * (1 + 1e-12));
    CHECK(w_algebra_norm(a.conj(), p) == doctest::Approx(w_algebra_norm(a, p)));
  }
}

}  // TEST_SUITE
