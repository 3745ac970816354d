// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

// Verification checks. Each check builds the closed form from
// decompositions.hpp / spectral.hpp and compares it against a dense oracle
// from opalgebra.hpp applied to the product-form matrix M_w E M_u, so the two
// sides never share a code path beyond the conditional expectation matrix.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "wce/error.hpp"
#include "wce/harness.hpp"

namespace wce {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

struct Context {
  const InstanceRecord& rec;
  const Tolerances& tol;
  std::string digest;
  Rng rng;
  std::vector<CheckRecord> out;

  const WCEInstance& inst() const { return rec.instance; }

  CheckRecord& emit(std::string check, std::string identity, double residual,
                    double tolerance, std::string detail = {}) {
    CheckRecord r;
    r.instance = digest;
    r.check = std::move(check);
    r.identity = std::move(identity);
    r.residual = residual;
    r.tolerance = tolerance;
    r.status = residual <= tolerance ? Status::Pass : Status::Fail;
    r.detail = std::move(detail);
    out.push_back(std::move(r));
    return out.back();
  }

  void skip(std::string check, std::string identity, std::string reason) {
    CheckRecord r;
    r.instance = digest;
    r.check = std::move(check);
    r.identity = std::move(identity);
    r.status = Status::Skipped;
    r.detail = std::move(reason);
    out.push_back(std::move(r));
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// Dense T and its adjoint, never touching the closed forms.
WeightedOperator dense_T(const WCEInstance& inst) { return build_T_product(inst); }

cplx random_value(Rng& rng, double lo, double hi) {
  return std::polar(rng.uniform(lo, hi), rng.uniform(0.0, 2.0 * std::numbers::pi));
}

MeasurableFunction random_function(const FiniteMeasureSpace& space, Rng& rng) {
  std::vector<cplx> v(space.size());
  for (auto& x : v) x = random_value(rng, 0.0, 4.0);
  return {space, std::move(v)};
}

// Measurable function with independent random block values; blocks listed
// in `zero_blocks` get 0, the rest are nonzero with probability `density`.
MeasurableFunction random_block_function(const Partition& p, Rng& rng,
                                         const std::vector<bool>& zero_blocks,
                                         double density) {
  std::vector<cplx> v(p.space().size(), cplx(0.0));
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    if (zero_blocks[b] || !rng.chance(density)) continue;
    const cplx c = random_value(rng, 0.5, 4.0);
    for (std::size_t i : p.block(b)) v[i] = c;
  }
  return {p.space(), std::move(v)};
}

Partition random_partition(const FiniteMeasureSpace& space, Rng& rng) {
  const std::size_t n = space.size();
  const std::size_t k = 1 + rng.index(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<std::vector<std::size_t>> blocks(k);
  for (std::size_t i = 0; i < n; ++i)
    blocks[i < k ? i : rng.index(k)].push_back(order[i]);
  return Partition::make(space, std::move(blocks));
}

// Two-sided distance between finite sets of complex numbers.
double set_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() || b.empty()) return (a.empty() && b.empty()) ? 0.0 : kInf;
  const auto one_way = [](const std::vector<cplx>& x, const std::vector<cplx>& y) {
    double worst = 0.0;
    for (cplx p : x) {
      double best = kInf;
      for (cplx q : y) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

// ---------------------------------------------------------------------------

void check_operator(Context& c) {
  const auto& inst = c.inst();
  const WeightedOperator t = dense_T(inst);
  c.emit("operator/product-form", "w E(u f) = (M_w E M_u) f",
         relative_deviation(build_T(inst), t), c.tol.op);
  c.emit("operator/adjoint", "T* f = conj(u) E(conj(w) f)",
         relative_deviation(weighted_adjoint(t), closed_adjoint(inst)), c.tol.op);
}

void check_norm(Context& c) {
  const auto& inst = c.inst();
  const double formula = norm_formula(inst);
  const double oracle = operator_norm(dense_T(inst));
  c.emit("norm", "||T|| = max sqrt(E|w|^2 E|u|^2)",
         std::abs(formula - oracle) / (1.0 + formula), c.tol.op,
         "formula " + fmt(formula) + ", oracle " + fmt(oracle));
}

void check_vanishing_group(Context& c) {
  const auto& inst = c.inst();
  const auto& p = inst.partition();
  const WeightedOperator t = dense_T(inst);
  std::vector<bool> in_sg(p.block_count());
  std::vector<std::size_t> sg_blocks;
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    in_sg[b] = inst.block_in_s(b) && inst.block_in_g(b);
    if (in_sg[b]) sg_blocks.push_back(b);
  }
  const std::string ident = "M_g T = 0 forces g = 0 on S n G";

  {
    const auto g = random_block_function(p, c.rng, in_sg, 0.7);
    const double norm = operator_norm(WeightedOperator::multiplication(g) * t);
    const bool implication = check_vanishing(inst, g, c.tol.support);
    auto& r = c.emit("vanishing/disjoint", ident, norm, c.tol.support,
                     "g vanishes on S n G; ||M_g T|| must be ~0");
    if (!implication) r.status = Status::Fail;
  }

  if (sg_blocks.empty()) {
    c.skip("vanishing/meeting", ident, "S n G is empty");
    return;
  }
  std::vector<bool> none(p.block_count(), false);
  auto g = random_block_function(p, c.rng, none, 0.5);
  // Force a nonzero value on one block of S n G.
  const std::size_t forced = sg_blocks[c.rng.index(sg_blocks.size())];
  std::vector<cplx> vals(g.values().data(), g.values().data() + g.size());
  const cplx v = random_value(c.rng, 0.5, 4.0);
  for (std::size_t i : p.block(forced)) vals[i] = v;
  g = MeasurableFunction(p.space(), std::move(vals));
  const double norm = operator_norm(WeightedOperator::multiplication(g) * t);
  const bool implication = check_vanishing(inst, g, c.tol.support);
  auto& r = c.emit("vanishing/meeting", ident, norm, c.tol.vanish_positive,
                   "lower bound: ||M_g T|| must exceed the tolerance");
  r.status = (norm > c.tol.vanish_positive && implication) ? Status::Pass
                                                           : Status::Fail;
}

void check_partial_isometry(Context& c) {
  const auto& inst = c.inst();
  const WeightedOperator t = dense_T(inst);
  const double scale = std::max(1.0, operator_norm(t));
  const double raw = partial_isometry_residual(inst);
  const double residual = raw / scale;
  const bool oracle = residual <= c.tol.op;
  const auto verdict = partial_isometry_criterion(inst, c.tol.op);

  double gap = 0.0;
  for (Eigen::Index b = 0; b < inst.eu2_blocks().size(); ++b) {
    const double prod = inst.eu2_blocks()(b) * inst.ew2_blocks()(b);
    gap = std::max(gap, std::min(std::abs(prod), std::abs(prod - 1.0)));
  }

  std::string detail = std::string("criterion ") +
                       (verdict.is_partial_isometry ? "true" : "false") +
                       ", oracle " + (oracle ? "true" : "false") +
                       ", distance of E|w|^2 E|u|^2 from {0,1} " + fmt(gap);
  bool ok = verdict.is_partial_isometry == oracle;
  if (verdict.is_partial_isometry && !(verdict.region == inst.s().intersect(inst.g()))) {
    ok = false;
    detail += ", region differs from S n G";
  }
  if (gap > 1e-3 && raw <= c.tol.pi_gap) {
    ok = false;
    detail += ", oracle residual too small for a non-partial-isometry";
  }
  auto& r = c.emit("partial-isometry",
                   "T partial isometry <=> E|w|^2 E|u|^2 = chi_A", residual,
                   c.tol.op, std::move(detail));
  r.status = ok ? Status::Pass : Status::Fail;
}

struct NamedFunction {
  const char* name;
  RealFunction f;
};

const std::vector<NamedFunction>& calculus_functions() {
  static const std::vector<NamedFunction> fs = {
      {"1", [](double) { return 1.0; }},
      {"t", [](double t) { return t; }},
      {"t^2", [](double t) { return t * t; }},
      {"t^3", [](double t) { return t * t * t; }},
      {"sqrt(t)", [](double t) { return std::sqrt(std::max(t, 0.0)); }},
      {"exp(-t)", [](double t) { return std::exp(-t); }},
  };
  return fs;
}

void check_func_calc(Context& c) {
  const auto& inst = c.inst();
  const WeightedOperator t = dense_T(inst);
  const WeightedOperator ts = weighted_adjoint(t);
  const WeightedOperator tst = ts * t;
  const WeightedOperator tts = t * ts;

  for (int side = 0; side < 2; ++side) {
    double worst = 0.0;
    std::string worst_name = "-";
    for (const auto& nf : calculus_functions()) {
      const WeightedOperator closed = side == 0
                                          ? closed_func_calc_TstarT(inst, nf.f)
                                          : closed_func_calc_TTstar(inst, nf.f);
      const WeightedOperator oracle =
          func_calc_oracle(side == 0 ? tst : tts, nf.f);
      const double dev = relative_deviation(closed, oracle);
      if (dev > worst || worst_name == "-") {
        worst = std::max(worst, dev);
        worst_name = nf.name;
      }
    }
    c.emit(side == 0 ? "func-calc/TstarT" : "func-calc/TTstar",
           side == 0 ? "f(T*T) closed form = spectral calculus"
                     : "g(TT*) closed form = spectral calculus",
           worst, c.tol.func_calc, "worst f = " + worst_name);
  }

  double worst = 0.0;
  WeightedOperator pa = tst, pb = tts;
  for (unsigned n = 1; n <= 3; ++n) {
    worst = std::max(worst, relative_deviation(closed_power_TstarT(inst, n), pa));
    worst = std::max(worst, relative_deviation(closed_power_TTstar(inst, n), pb));
    pa = pa * tst;
    pb = pb * tts;
  }
  c.emit("func-calc/powers",
         "(T*T)^n = conj(u) (E|w|^2)^n (E|u|^2)^(n-1) E(u .), n = 1..3", worst,
         c.tol.op);
}

void check_polar(Context& c) {
  const auto& inst = c.inst();
  const WeightedOperator t = dense_T(inst);
  const PolarParts closed = closed_polar(inst);
  const PolarParts oracle = polar_oracle(t);
  const WeightedOperator sqrt_tst = positive_sqrt(weighted_adjoint(t) * t);

  c.emit("polar/modulus", "|T| closed form = (T*T)^(1/2)",
         std::max(relative_deviation(closed.modulus, sqrt_tst),
                  relative_deviation(closed.modulus, oracle.modulus)),
         c.tol.op);
  c.emit("polar/isometry", "U closed form = polar factor of T",
         relative_deviation(closed.unitary, oracle.unitary), c.tol.op);
  c.emit("polar/product", "U |T| = T",
         relative_deviation(closed.unitary * closed.modulus, t), c.tol.op);
  const WeightedOperator uu = weighted_adjoint(closed.unitary) * closed.unitary;
  c.emit("polar/partial-isometry", "U*U is a projection",
         relative_deviation(uu * uu, uu), c.tol.op);

  const WeightedOperator ku = kernel_projection(closed.unitary);
  const WeightedOperator kp = kernel_projection(closed.modulus);
  const WeightedOperator kt = kernel_projection(t);
  const double kdev = std::max({operator_norm(ku - kp), operator_norm(ku - kt),
                                operator_norm(kp - kt)});
  c.emit("polar/kernels", "ker U = ker |T| = ker T", kdev, c.tol.kernel);
}

void check_aluthge(Context& c) {
  const auto& inst = c.inst();
  const WeightedOperator t = dense_T(inst);
  const PolarParts oracle = polar_oracle(t);
  const WeightedOperator root = positive_sqrt(oracle.modulus);
  const WeightedOperator oracle_hat = root * oracle.unitary * root;
  c.emit("aluthge/transform",
         "|T|^(1/2) U |T|^(1/2) = chi_S E(uw)/E|u|^2 conj(u) E(u .)",
         relative_deviation(closed_aluthge(inst), oracle_hat), c.tol.op);

  const WeightedOperator v = aluthge_square_root(inst);
  c.emit("aluthge/square-root", "V^2 = |T|",
         std::max(relative_deviation(v * v, closed_polar(inst).modulus),
                  relative_deviation(v * v, oracle.modulus)),
         c.tol.op);
}

void check_normality(Context& c) {
  const auto& inst = c.inst();
  const WeightedOperator a = build_EMu(inst.u(), inst.partition());
  const double norm = operator_norm(a);
  const double residual = commutator_norm(a) / (1.0 + norm * norm);
  const bool oracle = residual <= c.tol.normality;
  const bool formula = is_normal_EMu(inst.u(), inst.partition(), c.tol.support);
  auto& r = c.emit("normality", "EM_u normal <=> u measurable for the partition",
                   residual, c.tol.normality,
                   std::string("criterion ") + (formula ? "true" : "false") +
                       ", oracle " + (oracle ? "true" : "false"));
  r.status = formula == oracle ? Status::Pass : Status::Fail;
}

// Numerical spectrum of EM_u compared with the block values of E(u) plus 0.
double spectrum_residual(const MeasurableFunction& u, const Partition& p,
                         const std::vector<cplx>& formula, double grouping,
                         std::string* detail) {
  const WeightedOperator a = build_EMu(u, p);
  const Vector bv = CondExp(p).block_values(u);
  const double scale = 1.0 + bv.cwiseAbs().maxCoeff();
  std::vector<cplx> numeric = general_eigenvalues(a);

  std::vector<cplx> expected = formula;
  // 0 is adjoined by the formula; it is a genuine eigenvalue unless EM_u is
  // invertible (all blocks singletons and E(u) nowhere zero).
  bool invertible = p.block_count() == p.space().size();
  for (Eigen::Index b = 0; b < bv.size(); ++b)
    invertible = invertible && std::abs(bv(b)) > grouping * scale;
  if (invertible) {
    std::erase_if(expected, [](cplx z) { return z == cplx(0.0); });
    if (detail) *detail = "EM_u invertible: adjoined 0 dropped";
  }
  return set_distance(expected, numeric) / scale;
}

void check_spectrum(Context& c) {
  const auto& inst = c.inst();
  const auto formula_spectrum = spectrum_EMu(inst.u(), inst.partition(), c.tol.grouping);
  std::string detail;
  const double res = spectrum_residual(inst.u(), inst.partition(), formula_spectrum,
                                       c.tol.grouping, &detail);
  c.emit("spectrum", "sigma(EM_u) = ess range E(u) u {0}", res, c.tol.grouping,
         std::move(detail));
}

void check_spectral_decomposition(Context& c) {
  const auto& inst = c.inst();
  const char* ident = "EM_u = sum lambda_n P_n";
  if (!is_normal_EMu(inst.u(), inst.partition(), c.tol.support)) {
    for (const char* name :
         {"spectral-decomposition/projections", "spectral-decomposition/orthogonality",
          "spectral-decomposition/reconstruction", "spectral-decomposition/spectrum",
          "spectral-decomposition/ranks"})
      c.skip(name, ident, "EM_u is not normal");
    return;
  }
  const SpectralDecomp sd =
      spectral_decomposition(inst.u(), inst.partition(), c.tol.grouping);
  const WeightedOperator a = build_EMu(inst.u(), inst.partition());

  double proj = 0.0, orth = 0.0, trace = 0.0;
  WeightedOperator sum = WeightedOperator::zero(inst.space());
  for (std::size_t k = 0; k < sd.projections.size(); ++k) {
    const auto& pk = sd.projections[k];
    proj = std::max({proj, operator_norm(pk * pk - pk),
                     operator_norm(pk - weighted_adjoint(pk))});
    for (std::size_t j = 0; j < sd.projections.size(); ++j)
      if (j != k) orth = std::max(orth, operator_norm(pk * sd.projections[j]));
    sum = sum + pk.scaled(sd.eigenvalues[k]);
    trace += pk.matrix().trace().real();
  }
  c.emit("spectral-decomposition/projections", "P_n^2 = P_n = P_n*", proj, c.tol.op);
  c.emit("spectral-decomposition/orthogonality", "P_n P_m = 0 (n != m)", orth,
         c.tol.op);
  c.emit("spectral-decomposition/reconstruction", ident,
         relative_deviation(sum, a), c.tol.op);

  std::vector<cplx> with_zero = sd.eigenvalues;
  with_zero.push_back(0.0);
  const auto formula_spectrum = spectrum_EMu(inst.u(), inst.partition(), c.tol.grouping);
  const Vector bv = CondExp(inst.partition()).block_values(inst.u());
  c.emit("spectral-decomposition/spectrum", "{lambda_n} u {0} = sigma(EM_u)",
         set_distance(with_zero, formula_spectrum) / (1.0 + bv.cwiseAbs().maxCoeff()),
         c.tol.grouping);
  const double n = static_cast<double>(inst.space().size());
  c.emit("spectral-decomposition/ranks", "sum rank P_n = n",
         std::abs(trace - n) / n, c.tol.op);
}

void check_spectral_measure(Context& c) {
  const char* ident = "E(S) = E^phi M_chi(phi^-1 S) is a spectral measure";
  if (!c.rec.phi) {
    for (const char* name : {"spectral-measure/sigma", "spectral-measure/fiber-subspace",
                             "spectral-measure/mass"})
      c.skip(name, ident, "instance has no point map");
    return;
  }
  const PointMap& phi = *c.rec.phi;
  const AxiomReport full = check_spectral_axioms(phi, false, c.rng);
  const double full_res = std::max({full.projection, full.empty_set,
                                    full.multiplicative, full.additive});
  c.emit("spectral-measure/sigma", ident, full_res, c.tol.measure,
         "on L2(Sigma): projection " + fmt(full.projection) + ", empty " +
             fmt(full.empty_set) + ", intersection " + fmt(full.multiplicative) +
             ", additivity " + fmt(full.additive) + "; ||E(X) - I|| = " +
             fmt(full.whole_space) + " (informational)");
  const AxiomReport sub = check_spectral_axioms(phi, true, c.rng);
  c.emit("spectral-measure/fiber-subspace", ident, sub.worst(), c.tol.measure,
         "on L2(phi^-1 Sigma): ||E(X) - I|| = " + fmt(sub.whole_space));

  const MeasurableFunction h = pushforward_density(phi);
  double mass = 0.0;
  for (std::size_t x = 0; x < h.size(); ++x)
    mass += h[x].real() * phi.space().weight(x);
  const double total = phi.space().total_mass();
  c.emit("spectral-measure/mass", "sum h mu = mu(X), h = d(mu o phi^-1)/d mu",
         std::abs(mass - total) / total, c.tol.mass);
}

void check_spectral_reconstruction(Context& c) {
  const char* ident = "E^phi M_u = sum_s v(s) E({s}), u = v o phi";
  if (!c.rec.phi) {
    c.skip("spectral-reconstruction", ident, "instance has no point map");
    return;
  }
  const PointMap& phi = *c.rec.phi;
  const Partition fibers = fiber_partition(phi);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const MeasurableFunction u = random_fiber_measurable(phi, c.rng);
    worst = std::max(worst, relative_deviation(reconstruct_from_measure(phi, u),
                                               build_EMu(u, fibers)));
  }
  c.emit("spectral-reconstruction", ident, worst, c.tol.measure);
}

// --- conditional expectation property suite --------------------------------

struct CondExpResiduals {
  double idempotence = 0, range = 0, module = 0, jensen = 0, positivity = 0,
         holder = 0, support = 0, self_adjoint = 0;
};

void condexp_sample(const Partition& p, const MeasurableFunction& f,
                    const MeasurableFunction& g, Rng& rng,
                    CondExpResiduals& r) {
  const CondExp e(p);
  const auto& space = p.space();
  const std::size_t n = space.size();
  const auto maxdiff = [](const MeasurableFunction& a, const MeasurableFunction& b) {
    return (a.values() - b.values()).cwiseAbs().maxCoeff();
  };
  const MeasurableFunction ef = e(f);
  const double fs = 1.0 + f.max_abs();

  r.idempotence = std::max(r.idempotence, maxdiff(e(ef), ef) / fs);

  // Range: E f is measurable, and E fixes measurable functions.
  std::vector<bool> none(p.block_count(), false);
  const MeasurableFunction gm = random_block_function(p, rng, none, 0.8);
  double range = maxdiff(e(gm), gm) / (1.0 + gm.max_abs());
  if (!is_measurable(ef, p)) range = kInf;
  r.range = std::max(r.range, range);

  r.module = std::max(r.module, maxdiff(e(f * gm), ef * gm) /
                                    (1.0 + f.max_abs() * gm.max_abs()));

  for (double pw : {1.0, 2.0, 4.0}) {
    const MeasurableFunction lhs = ef.abs_pow(pw);
    const MeasurableFunction rhs = e(f.abs_pow(pw));
    const double scale = 1.0 + std::pow(f.max_abs(), pw);
    for (std::size_t i = 0; i < n; ++i)
      r.jensen = std::max(r.jensen, (lhs[i].real() - rhs[i].real()) / scale);
  }

  // Nonnegative h with some exact zeros.
  std::vector<cplx> hv(n);
  for (auto& x : hv) x = rng.chance(0.3) ? 0.0 : rng.uniform(0.0, 4.0);
  const MeasurableFunction h(space, hv);
  const MeasurableFunction eh = e(h);
  const MeasurableFunction eh_strict = e(h + MeasurableFunction::constant(space, 0.1));
  const double hs = 1.0 + h.max_abs();
  double pos = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pos = std::max({pos, -eh[i].real() / hs, std::abs(eh[i].imag()) / hs});
    if (!(eh_strict[i].real() > 0.0)) pos = kInf;
  }
  r.positivity = std::max(r.positivity, pos);

  const MeasurableFunction efg = e(f * g);
  const double fgs = 1.0 + f.max_abs() * g.max_abs();
  for (auto [pp, qq] : {std::pair{2.0, 2.0}, std::pair{4.0, 4.0 / 3.0}}) {
    const MeasurableFunction a = e(f.abs_pow(pp));
    const MeasurableFunction b = e(g.abs_pow(qq));
    for (std::size_t i = 0; i < n; ++i) {
      const double bound =
          std::pow(a[i].real(), 1.0 / pp) * std::pow(b[i].real(), 1.0 / qq);
      r.holder = std::max(r.holder, (std::abs(efg[i]) - bound) / fgs);
    }
  }

  if (!support(h, 0.0).is_subset_of(support(eh, 0.0))) r.support = kInf;

  const double ip = std::abs(weighted_inner(ef, g) - weighted_inner(f, e(g)));
  r.self_adjoint = std::max(
      r.self_adjoint, ip / (1.0 + weighted_norm(f) * weighted_norm(g)));
}

void check_condexp(Context& c) {
  const auto& inst = c.inst();
  CondExpResiduals r;
  condexp_sample(inst.partition(), inst.u(), inst.w(), c.rng, r);
  for (int k = 0; k < 2; ++k) {
    const Partition p = random_partition(inst.space(), c.rng);
    const auto f = random_function(inst.space(), c.rng);
    const auto g = random_function(inst.space(), c.rng);
    condexp_sample(p, f, g, c.rng, r);
  }
  const double s = c.tol.slack;
  c.emit("condexp/idempotence", "E(E f) = E f", r.idempotence, s);
  c.emit("condexp/range", "E f measurable; E g = g for measurable g", r.range, s);
  c.emit("condexp/module", "E(f g) = E(f) g for measurable g", r.module, s);
  c.emit("condexp/jensen", "|E f|^p <= E |f|^p, p = 1, 2, 4", r.jensen, s);
  c.emit("condexp/positivity", "f >= 0 => E f >= 0; f > 0 => E f > 0",
         r.positivity, s);
  c.emit("condexp/holder", "|E(fg)| <= E(|f|^p)^(1/p) E(|g|^q)^(1/q)", r.holder, s);
  c.emit("condexp/support", "S(f) subset S(E f) for f >= 0", r.support, s);
  c.emit("condexp/self-adjoint", "<E f, g> = <f, E g>", r.self_adjoint, s);
}

void check_w_norm(Context& c) {
  const auto& inst = c.inst();
  const auto& p = inst.partition();
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const MeasurableFunction a = k == 0 ? inst.u() : random_function(inst.space(), c.rng);
    const MeasurableFunction b = random_function(inst.space(), c.rng);
    const cplx z = random_value(c.rng, 0.0, 3.0);
    const double na = w_algebra_norm(a, p), nb = w_algebra_norm(b, p);
    const double scale = 1.0 + na + nb;
    worst = std::max(worst, std::abs(w_algebra_norm(a.scaled(z), p) - std::abs(z) * na) /
                                (1.0 + std::abs(z) * na));
    worst = std::max(worst, (w_algebra_norm(a + b, p) - na - nb) / scale);
    worst = std::max(worst, std::abs(w_algebra_norm(a.conj(), p) - na) / scale);
  }
  c.emit("w-norm", "||u|| = max sqrt(E|u|^2) is a *-invariant norm", worst,
         c.tol.slack);
}

using CheckFn = void (*)(Context&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r = {
      {"operator", check_operator},
      {"norm", check_norm},
      {"vanishing", check_vanishing_group},
      {"partial-isometry", check_partial_isometry},
      {"func-calc", check_func_calc},
      {"polar", check_polar},
      {"aluthge", check_aluthge},
      {"normality", check_normality},
      {"spectrum", check_spectrum},
      {"spectral-decomposition", check_spectral_decomposition},
      {"spectral-measure", check_spectral_measure},
      {"spectral-reconstruction", check_spectral_reconstruction},
      {"condexp", check_condexp},
      {"w-norm", check_w_norm},
  };
  return r;
}

std::vector<CheckRecord> run_one(const std::string& group,
                                 const InstanceRecord& rec,
                                 const std::string& digest,
                                 const Tolerances& tol) {
  CheckFn fn = nullptr;
  for (const auto& [name, f] : registry())
    if (name == group) fn = f;
  if (!fn) throw Error(ErrorKind::ConfigInvalid, "unknown check group '" + group + "'");

  Context c{rec, tol, digest, Rng(fnv1a(digest + "/" + group)), {}};
  try {
    fn(c);
  } catch (const Error& e) {
    CheckRecord r;
    r.instance = digest;
    r.check = group;
    r.identity = "check raised an error";
    r.status = Status::Fail;
    r.residual = kInf;
    r.detail = std::string(to_string(e.kind())) + ": " + e.what();
    c.out.push_back(std::move(r));
  }
  bool failed = false;
  for (const auto& r : c.out) failed = failed || r.status == Status::Fail;
  if (failed) {
    const std::string text = serialize_instance(rec);
    for (auto& r : c.out)
      if (r.status == Status::Fail) r.instance_text = text;
  }
  return std::move(c.out);
}

}  // namespace

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

const std::vector<std::string>& check_groups() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

std::vector<CheckRecord> run_check(const std::string& group,
                                   const InstanceRecord& rec,
                                   const Tolerances& tol) {
  return run_one(group, rec, instance_digest(rec), tol);
}

VerificationReport run_suite(const std::vector<InstanceRecord>& instances,
                             const std::vector<std::string>& groups,
                             const Tolerances& tol) {
  for (const auto& g : groups) {
    if (std::find(check_groups().begin(), check_groups().end(), g) ==
        check_groups().end())
      throw Error(ErrorKind::ConfigInvalid, "unknown check group '" + g + "'");
  }
  VerificationReport report;
  for (const auto& rec : instances) {
    const std::string digest = instance_digest(rec);
    for (const auto& g : groups)
      for (auto& r : run_one(g, rec, digest, tol)) report.add(std::move(r));
  }
  report.canonicalize();
  return report;
}

}  // namespace wce
