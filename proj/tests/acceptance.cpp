// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "wce/harness.hpp"

using namespace wce;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
  std::printf("%s  %2d  %-34s %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Tracks the worst value of a residual against its bound.
struct Worst {
  double value = 0.0;
  std::size_t violations = 0;
  void le(double v, double bound) {
    value = std::max(value, v);
    if (!(v <= bound)) ++violations;
  }
};

GeneratorConfig base_config(std::uint64_t seed, std::size_t max_n, Rng& plan) {
  GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.n = 2 + plan.index(max_n - 1);
  cfg.block_count = 1 + plan.index(cfg.n);
  return cfg;
}

// The 200 instances of criteria 1-4: n in [2, 24], mixing zero_blocks and
// constant modes.
std::vector<WCEInstance> main_instances() {
  std::vector<WCEInstance> out;
  for (std::uint64_t seed = 1; seed <= 200; ++seed)
    out.push_back(suite_instances(seed, false).front().instance);
  return out;
}

const std::vector<std::pair<const char*, RealFunction>>& calc_functions() {
  static const std::vector<std::pair<const char*, RealFunction>> fs = {
      {"1", [](double) { return 1.0; }},
      {"t", [](double t) { return t; }},
      {"t^2", [](double t) { return t * t; }},
      {"t^3", [](double t) { return t * t * t; }},
      {"sqrt(t)", [](double t) { return std::sqrt(std::max(t, 0.0)); }},
      {"exp(-t)", [](double t) { return std::exp(-t); }}};
  return fs;
}

Outcome criterion_norm(const std::vector<WCEInstance>& insts) {
  Worst w;
  std::size_t zero_block = 0, constant = 0;
  for (const auto& inst : insts) {
    const double nf = norm_formula(inst);
    const double no = operator_norm(build_T_product(inst));
    w.le(std::abs(nf - no) / (1.0 + nf), 1e-8);
    if (inst.s().size() < inst.space().size()) ++zero_block;
    if (is_measurable(inst.u(), Partition::coarsest(inst.space()))) ++constant;
  }
  return {w.violations == 0 && zero_block > 0 && constant > 0,
          fmt("worst |nf-no|/(1+nf) = %.2e over %.0f instances (%.0f with S != X, "
              "%.0f constant u)",
              w.value, double(insts.size()), double(zero_block), double(constant))};
}

Outcome criterion_polar(const std::vector<WCEInstance>& insts) {
  Worst mod, uni, prod, ker;
  for (const auto& inst : insts) {
    const auto t = build_T_product(inst);
    const auto pc = closed_polar(inst);
    const auto po = polar_oracle(t);
    mod.le(relative_deviation(pc.modulus, positive_sqrt(weighted_adjoint(t) * t)), 1e-8);
    uni.le(relative_deviation(pc.unitary, po.unitary), 1e-8);
    prod.le(relative_deviation(pc.unitary * pc.modulus, t), 1e-8);
    const auto ku = kernel_projection(pc.unitary);
    const auto km = kernel_projection(pc.modulus);
    const auto kt = kernel_projection(t);
    ker.le(std::max({relative_deviation(ku, km), relative_deviation(ku, kt),
                     relative_deviation(km, kt)}),
           1e-7);
  }
  const std::size_t v = mod.violations + uni.violations + prod.violations + ker.violations;
  return {v == 0, fmt("|T| %.2e, U %.2e, U|T|=T %.2e, kernels %.2e", mod.value, uni.value,
                      prod.value, ker.value)};
}

Outcome criterion_aluthge(const std::vector<WCEInstance>& insts) {
  Worst hat, sq;
  for (const auto& inst : insts) {
    const auto po = polar_oracle(build_T_product(inst));
    const auto root = positive_sqrt(po.modulus);
    hat.le(relative_deviation(closed_aluthge(inst), root * po.unitary * root), 1e-8);
    const auto v = aluthge_square_root(inst);
    sq.le(relative_deviation(v * v, closed_polar(inst).modulus), 1e-8);
  }
  return {hat.violations + sq.violations == 0,
          fmt("transform %.2e, V^2 = |T| %.2e", hat.value, sq.value)};
}

Outcome criterion_func_calc(const std::vector<WCEInstance>& insts) {
  Worst w;
  for (const auto& inst : insts) {
    const auto t = build_T_product(inst);
    const auto tst = weighted_adjoint(t) * t;
    const auto tts = t * weighted_adjoint(t);
    for (const auto& [name, f] : calc_functions()) {
      w.le(relative_deviation(closed_func_calc_TstarT(inst, f), func_calc_oracle(tst, f)),
           1e-7);
      w.le(relative_deviation(closed_func_calc_TTstar(inst, f), func_calc_oracle(tts, f)),
           1e-7);
    }
  }
  return {w.violations == 0,
          fmt("worst deviation %.2e over 6 functions x 2 forms", w.value)};
}

double pi_gap(const WCEInstance& inst) {
  double gap = 0.0;
  for (Eigen::Index b = 0; b < inst.eu2_blocks().size(); ++b) {
    const double p = inst.eu2_blocks()(b) * inst.ew2_blocks()(b);
    gap = std::max(gap, std::min(std::abs(p), std::abs(p - 1.0)));
  }
  return gap;
}

double pi_oracle_residual(const WeightedOperator& t) {
  return operator_norm(t * weighted_adjoint(t) * t - t);
}

Outcome criterion_partial_isometry() {
  Rng plan(0xA11CE);
  std::size_t bad_pi = 0, bad_generic = 0;
  double worst_pi = 0.0, min_generic = INFINITY;
  for (std::uint64_t k = 0; k < 50; ++k) {
    auto cfg = base_config(1000 + k, 24, plan);
    cfg.partial_isometry = true;
    cfg.zero_blocks = k % 3 == 0;
    const auto inst = gen_instance(cfg).instance;
    const auto t = build_T_product(inst);
    const double r = pi_oracle_residual(t) / std::max(1.0, operator_norm(t));
    worst_pi = std::max(worst_pi, r);
    const auto v = partial_isometry_criterion(inst);
    if (!(r <= 1e-8) || !v.is_partial_isometry || !(v.region == inst.s().intersect(inst.g())))
      ++bad_pi;
  }
  std::size_t generic = 0;
  for (std::uint64_t seed = 2000; generic < 50; ++seed) {
    const auto cfg = base_config(seed, 24, plan);
    const auto inst = gen_instance(cfg).instance;
    if (!(pi_gap(inst) > 1e-3)) continue;
    ++generic;
    const double r = pi_oracle_residual(build_T_product(inst));
    min_generic = std::min(min_generic, r);
    if (!(r > 1e-4) || partial_isometry_criterion(inst).is_partial_isometry) ++bad_generic;
  }
  return {bad_pi + bad_generic == 0,
          fmt("50 constructed: worst %.2e (%.0f bad); 50 generic: min residual %.2e "
              "(%.0f bad)",
              worst_pi, double(bad_pi), min_generic, double(bad_generic))};
}

Outcome criterion_vanishing() {
  Rng plan(0xB0B);
  Rng rng(0xB0B1);
  double worst_disjoint = 0.0, min_meeting = INFINITY;
  std::size_t bad = 0, disjoint = 0, meeting = 0;
  for (std::uint64_t seed = 3000; disjoint < 100 || meeting < 100; ++seed) {
    auto cfg = base_config(seed, 24, plan);
    const bool want_disjoint = disjoint < 100;
    cfg.zero_blocks = want_disjoint;
    if (want_disjoint && cfg.block_count < 2) cfg.block_count = 2;
    const auto inst = gen_instance(cfg).instance;
    const auto& p = inst.partition();
    const IndexSet sg = inst.s().intersect(inst.g());
    std::vector<cplx> g(inst.space().size(), 0.0);
    bool touches = false;
    for (std::size_t b = 0; b < p.block_count(); ++b) {
      const bool inside = sg.contains(p.block(b).front());
      if (want_disjoint && inside) continue;
      if (!want_disjoint && !inside && rng.chance(0.5)) continue;
      const cplx c = std::polar(rng.uniform(0.1, 3.0), rng.uniform(0.0, 6.283185307179586));
      for (auto i : p.block(b)) g[i] = c;
      touches = touches || inside;
    }
    if (!want_disjoint && !touches) continue;
    if (want_disjoint && sg.size() == inst.space().size()) continue;
    const MeasurableFunction gf(inst.space(), g);
    const double r =
        operator_norm(WeightedOperator::multiplication(gf) * build_T_product(inst));
    if (want_disjoint) {
      ++disjoint;
      worst_disjoint = std::max(worst_disjoint, r);
      if (!(r <= 1e-10)) ++bad;
    } else {
      ++meeting;
      min_meeting = std::min(min_meeting, r);
      if (!(r > 1e-6)) ++bad;
    }
  }
  return {bad == 0, fmt("disjoint: max ||M_g T|| = %.2e; meeting: min = %.2e (%.0f bad)",
                        worst_disjoint, min_meeting, double(bad))};
}

std::vector<cplx> dedup(const std::vector<cplx>& values, double tol) {
  std::vector<cplx> out;
  for (const auto& v : values) {
    bool seen = false;
    for (const auto& o : out) seen = seen || std::abs(o - v) <= tol;
    if (!seen) out.push_back(v);
  }
  return out;
}

// Symmetric set distance, or infinity when the sets do not correspond.
double set_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (const auto& x : a) {
    double best = INFINITY;
    for (const auto& y : b) best = std::min(best, std::abs(x - y));
    d = std::max(d, best);
  }
  for (const auto& y : b) {
    double best = INFINITY;
    for (const auto& x : a) best = std::min(best, std::abs(x - y));
    d = std::max(d, best);
  }
  return d;
}

Outcome criterion_spectral() {
  Rng plan(0x5EC7);
  Worst decomp, spectrum_dev;
  std::size_t disagreements = 0, bad_invariants = 0;
  auto spectrum_matches = [&](const WCEInstance& inst) {
    const auto emu = build_EMu(inst.u(), inst.partition());
    const double scale = 1.0 + operator_norm(emu);
    auto numeric = dedup(general_eigenvalues(emu), 1e-8 * scale);
    auto formula = spectrum_EMu(inst.u(), inst.partition());
    // 0 is adjoined by the formula; it is an eigenvalue unless E M_u is invertible
    const bool invertible = inst.partition().block_count() == inst.space().size() &&
                            inst.u().values().cwiseAbs().minCoeff() > 1e-8 * scale;
    if (invertible)
      formula.erase(std::remove_if(formula.begin(), formula.end(),
                                   [](cplx z) { return z == cplx(0.0); }),
                    formula.end());
    const double d = set_distance(numeric, formula) / scale;
    spectrum_dev.le(d, 1e-8);
  };
  for (std::uint64_t k = 0; k < 100; ++k) {
    auto cfg = base_config(4000 + k, 24, plan);
    cfg.measurable_u = true;
    cfg.zero_blocks = k % 4 == 0;
    const auto inst = gen_instance(cfg).instance;
    const auto& u = inst.u();
    const auto& p = inst.partition();
    const auto emu = build_EMu(u, p);
    const double scale = 1.0 + operator_norm(emu);

    const auto d = spectral_decomposition(u, p);
    WeightedOperator sum = WeightedOperator::zero(inst.space());
    double rank = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < d.projections.size(); ++i) {
      const auto& pi = d.projections[i];
      worst = std::max({worst, relative_deviation(pi * pi, pi),
                        relative_deviation(weighted_adjoint(pi), pi)});
      for (std::size_t j = 0; j < d.projections.size(); ++j)
        if (j != i) worst = std::max(worst, operator_norm(pi * d.projections[j]));
      sum = sum + pi.scaled(d.eigenvalues[i]);
      rank += pi.matrix().trace().real();
    }
    worst = std::max(worst, operator_norm(sum - emu) / scale);
    decomp.le(worst, 1e-8);
    if (std::abs(rank - double(inst.space().size())) > 1e-8) ++bad_invariants;
    if (dedup(d.eigenvalues, 1e-8 * scale).size() != d.eigenvalues.size())
      ++bad_invariants;

    spectrum_matches(inst);
    const bool oracle = commutator_norm(emu) <= 1e-8 * scale * scale;
    if (is_normal_EMu(u, p) != oracle || !oracle) ++disagreements;
  }
  for (std::uint64_t k = 0; k < 100; ++k) {
    auto cfg = base_config(5000 + k, 24, plan);
    if (cfg.n < 3) cfg.n = 3;
    cfg.block_count = 1 + plan.index(cfg.n - 1);
    cfg.perturbed_u = true;
    const auto inst = gen_instance(cfg).instance;
    const auto emu = build_EMu(inst.u(), inst.partition());
    const double scale = 1.0 + operator_norm(emu);
    spectrum_matches(inst);
    const bool oracle = commutator_norm(emu) <= 1e-8 * scale * scale;
    if (is_normal_EMu(inst.u(), inst.partition()) != oracle || oracle) ++disagreements;
  }
  return {decomp.violations + spectrum_dev.violations + disagreements + bad_invariants == 0,
          fmt("decomposition %.2e, spectrum %.2e, normality disagreements %.0f, "
              "invariant violations %.0f",
              decomp.value, spectrum_dev.value, double(disagreements), double(bad_invariants))};
}

Outcome criterion_spectral_measure() {
  Rng plan(0x3EA5);
  Worst off, on, rec, mass;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const auto cfg = base_config(6000 + k, 16, plan);
    const auto record = gen_instance(cfg);
    const auto& phi = *record.phi;
    Rng rng(7000 + k);
    const auto a_off = check_spectral_axioms(phi, false, rng);
    off.le(std::max({a_off.projection, a_off.empty_set, a_off.multiplicative,
                     a_off.additive}),
           1e-9);
    on.le(check_spectral_axioms(phi, true, rng).worst(), 1e-9);

    const SpectralMeasureTable table(phi);
    const auto& fibers = table.cond_exp().partition();
    for (int j = 0; j < 3; ++j) {
      const auto u = random_fiber_measurable(phi, rng);
      // sum over image points s of v(s) E({s}), with u = v o phi
      WeightedOperator sum = WeightedOperator::zero(phi.space());
      for (std::size_t b = 0; b < fibers.block_count(); ++b) {
        const std::size_t i = fibers.block(b).front();
        sum = sum + table.singleton(phi(i)).scaled(u[i]);
      }
      const auto target = table.cond_exp().matrix() * WeightedOperator::multiplication(u);
      rec.le(operator_norm(sum - target) / (1.0 + operator_norm(target)), 1e-9);
      rec.le(relative_deviation(reconstruct_from_measure(phi, u), target), 1e-9);
    }
    const auto h = pushforward_density(phi);
    double total = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) total += h[i].real() * phi.space().weight(i);
    mass.le(std::abs(total - phi.space().total_mass()) / phi.space().total_mass(), 1e-12);
  }
  return {off.violations + on.violations + rec.violations + mass.violations == 0,
          fmt("L2(S) axioms %.2e, fiber subspace %.2e, reconstruction %.2e, mass %.2e",
              off.value, on.value, rec.value, mass.value)};
}

Partition sample_partition(const FiniteMeasureSpace& s, Rng& rng) {
  const std::size_t n = s.size();
  const std::size_t k = 1 + rng.index(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<std::vector<std::size_t>> blocks(k);
  for (std::size_t i = 0; i < n; ++i) blocks[i < k ? i : rng.index(k)].push_back(order[i]);
  return Partition::make(s, blocks);
}

MeasurableFunction sample_function(const FiniteMeasureSpace& s, Rng& rng) {
  std::vector<cplx> v(s.size());
  for (auto& x : v)
    x = rng.chance(0.1) ? cplx(0.0) : std::polar(rng.uniform(0.0, 4.0), rng.uniform(0.0, 6.3));
  return MeasurableFunction(s, v);
}

Outcome criterion_condexp() {
  constexpr double slack = 1e-12;
  Rng rng(0xC0DE);
  std::array<std::size_t, 8> fails{};
  const char* names[8] = {"idempotence", "range",  "module",  "jensen",
                          "positivity",  "holder", "support", "self-adjoint"};
  auto maxdiff = [](const MeasurableFunction& a, const MeasurableFunction& b) {
    return (a.values() - b.values()).cwiseAbs().maxCoeff();
  };
  for (int sample = 0; sample < 500; ++sample) {
    const std::size_t n = 2 + rng.index(24);
    std::vector<double> weights(n);
    for (auto& x : weights) x = rng.uniform(0.1, 10.0);
    const auto s = FiniteMeasureSpace::make(weights);
    const auto p = sample_partition(s, rng);
    const CondExp e(p);
    const auto f = sample_function(s, rng), g = sample_function(s, rng);
    std::vector<cplx> mv(n);
    for (const auto& blk : p.blocks()) {
      const cplx c = std::polar(rng.uniform(0.0, 4.0), rng.uniform(0.0, 6.3));
      for (auto i : blk) mv[i] = c;
    }
    const MeasurableFunction m(s, mv);
    const auto ef = e(f);
    const double fs = 1.0 + f.max_abs();

    if (maxdiff(e(ef), ef) > slack * fs) ++fails[0];
    if (!is_measurable(ef, p) || maxdiff(e(m), m) > slack * (1 + m.max_abs())) ++fails[1];
    if (maxdiff(e(f * m), ef * m) > slack * (1 + f.max_abs() * m.max_abs())) ++fails[2];
    for (double pw : {1.0, 2.0, 4.0}) {
      const auto lhs = ef.abs_pow(pw), rhs = e(f.abs_pow(pw));
      for (std::size_t i = 0; i < n; ++i)
        if (lhs[i].real() - rhs[i].real() > slack * (1 + std::pow(f.max_abs(), pw))) {
          ++fails[3];
          break;
        }
    }
    const auto fa = f.abs();
    const auto efa = e(fa);
    const auto efa_strict = e(fa + MeasurableFunction::constant(s, 0.5));
    for (std::size_t i = 0; i < n; ++i)
      if (efa[i].real() < -slack * fs || !(efa_strict[i].real() > 0.0)) {
        ++fails[4];
        break;
      }
    const auto efg = e(f * g);
    const double fgs = 1.0 + f.max_abs() * g.max_abs();
    for (auto [pp, qq] : {std::pair{2.0, 2.0}, std::pair{4.0, 4.0 / 3.0}}) {
      const auto a = e(f.abs_pow(pp)), b = e(g.abs_pow(qq));
      for (std::size_t i = 0; i < n; ++i)
        if (std::abs(efg[i]) - std::pow(a[i].real(), 1 / pp) * std::pow(b[i].real(), 1 / qq) >
            slack * fgs) {
          ++fails[5];
          break;
        }
    }
    if (!support(fa, 0.0).is_subset_of(support(efa, 0.0))) ++fails[6];
    const double ip = std::abs(weighted_inner(ef, g) - weighted_inner(f, e(g)));
    if (ip > slack * (1 + weighted_norm(f) * weighted_norm(g))) ++fails[7];
  }
  std::ostringstream os;
  std::size_t total = 0;
  for (int i = 0; i < 8; ++i) {
    total += fails[i];
    if (fails[i]) os << names[i] << ":" << fails[i] << " ";
  }
  if (total == 0) os << "500 samples, 8 properties, zero failures";
  return {total == 0, os.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome criterion_determinism(const std::string& cli, const std::string& workdir) {
  const std::string r1 = workdir + "/acceptance_report_1.json";
  const std::string r2 = workdir + "/acceptance_report_2.json";
  double seconds[2] = {0, 0};
  int codes[2] = {0, 0};
  for (int run = 0; run < 2; ++run) {
    const std::string cmd = "\"" + cli + "\" suite --seeds 1..200 --full --report \"" +
                            (run == 0 ? r1 : r2) + "\" > /dev/null";
    const auto t0 = std::chrono::steady_clock::now();
    codes[run] = std::system(cmd.c_str());
    seconds[run] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  const std::string a = read_file(r1), b = read_file(r2);
  const bool identical = !a.empty() && a == b;
  const bool fast = std::max(seconds[0], seconds[1]) < 60.0;
  char buf[256];
  std::snprintf(buf, sizeof buf, "reports %s (%zu bytes), wall %.1f s / %.1f s%s",
                identical ? "identical" : "differ", a.size(), seconds[0], seconds[1],
                codes[0] || codes[1] ? ", suite reported failures" : "");
  return {identical && fast && codes[0] == 0 && codes[1] == 0, buf};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "wcelab";
  const std::string workdir = argc > 2 ? argv[2] : ".";

  const auto t0 = std::chrono::steady_clock::now();
  const auto insts = main_instances();
  report(1, "norm formula", criterion_norm(insts));
  const double c1 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("          (criterion 1 took %.2f s)\n", c1);
  report(2, "polar decomposition", criterion_polar(insts));
  report(3, "Aluthge transform", criterion_aluthge(insts));
  report(4, "functional calculus", criterion_func_calc(insts));
  report(5, "partial isometry criterion", criterion_partial_isometry());
  report(6, "vanishing of M_g T", criterion_vanishing());
  report(7, "spectral decomposition of E M_u", criterion_spectral());
  report(8, "spectral measure", criterion_spectral_measure());
  report(9, "conditional expectation suite", criterion_condexp());
  report(10, "suite determinism and wall time", criterion_determinism(cli, workdir));
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
