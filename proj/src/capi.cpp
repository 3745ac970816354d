// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#include "wce/wce.h"

#include <chrono>
#include <cstring>
#include <new>
#include <string>

#include "wce/error.hpp"
#include "wce/harness.hpp"

struct wce_instance {
  wce::InstanceRecord rec;
};

struct wce_report {
  wce::VerificationReport report;
};

namespace {

thread_local std::string last_error;

wce_status fail(wce_status code, const std::string& msg) {
  last_error = msg;
  return code;
}

wce_status map_error(const wce::Error& e) {
  using wce::ErrorKind;
  switch (e.kind()) {
    case ErrorKind::ParseError: return fail(WCE_ERR_PARSE, e.what());
    case ErrorKind::IoError: return fail(WCE_ERR_IO, e.what());
    case ErrorKind::ConfigInvalid: return fail(WCE_ERR_CONFIG, e.what());
    default:
      return fail(WCE_ERR_DOMAIN,
                  std::string(wce::to_string(e.kind())) + ": " + e.what());
  }
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
wce_status guarded(Fn&& fn) {
  try {
    fn();
    return WCE_OK;
  } catch (const wce::Error& e) {
    return map_error(e);
  } catch (const std::bad_alloc&) {
    return fail(WCE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(WCE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(WCE_ERR_INTERNAL, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

wce::Tolerances to_tolerances(const wce_tolerances* t) {
  wce::Tolerances out;
  if (!t) return out;
  out.op = t->op;
  out.func_calc = t->func_calc;
  out.kernel = t->kernel;
  out.support = t->support;
  out.vanish_positive = t->vanish_positive;
  out.pi_gap = t->pi_gap;
  out.measure = t->measure;
  out.mass = t->mass;
  out.slack = t->slack;
  out.grouping = t->grouping;
  out.normality = t->normality;
  return out;
}

std::vector<std::string> split_checks(const char* checks) {
  if (!checks || !*checks || std::strcmp(checks, "all") == 0)
    return wce::check_groups();
  std::vector<std::string> out;
  std::string cur;
  for (const char* p = checks;; ++p) {
    if (*p == ',' || *p == '\0') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
      if (*p == '\0') break;
    } else if (*p != ' ') {
      cur.push_back(*p);
    }
  }
  return out;
}

#define WCE_REQUIRE(cond, msg) \
  do {                         \
    if (!(cond)) return fail(WCE_ERR_INVALID_ARGUMENT, msg); \
  } while (0)

}  // namespace

extern "C" {

const char* wce_version(void) { return "1.0.0"; }

const char* wce_last_error(void) { return last_error.c_str(); }

void wce_string_free(char* s) { delete[] s; }

void wce_gen_config_default(wce_gen_config* cfg) {
  if (!cfg) return;
  const wce::GeneratorConfig d;
  cfg->seed = d.seed;
  cfg->n = static_cast<uint32_t>(d.n);
  cfg->block_count = static_cast<uint32_t>(d.block_count);
  cfg->modes = 0;
  cfg->with_point_map = d.with_point_map ? 1 : 0;
}

void wce_tolerances_default(wce_tolerances* tol) {
  if (!tol) return;
  const wce::Tolerances d;
  tol->op = d.op;
  tol->func_calc = d.func_calc;
  tol->kernel = d.kernel;
  tol->support = d.support;
  tol->vanish_positive = d.vanish_positive;
  tol->pi_gap = d.pi_gap;
  tol->measure = d.measure;
  tol->mass = d.mass;
  tol->slack = d.slack;
  tol->grouping = d.grouping;
  tol->normality = d.normality;
}

wce_status wce_instance_generate(const wce_gen_config* cfg, wce_instance** out) {
  WCE_REQUIRE(cfg && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    wce::GeneratorConfig g;
    g.seed = cfg->seed;
    g.n = cfg->n;
    g.block_count = cfg->block_count;
    g.measurable_u = cfg->modes & WCE_MODE_MEASURABLE_U;
    g.partial_isometry = cfg->modes & WCE_MODE_PARTIAL_ISOMETRY;
    g.zero_blocks = cfg->modes & WCE_MODE_ZERO_BLOCKS;
    g.constant_u = cfg->modes & WCE_MODE_CONSTANT_U;
    g.perturbed_u = cfg->modes & WCE_MODE_PERTURBED_U;
    g.with_point_map = cfg->with_point_map != 0;
    *out = new wce_instance{wce::gen_instance(g)};
  });
}

wce_status wce_instance_parse(const char* text, size_t len, wce_instance** out) {
  WCE_REQUIRE(text && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new wce_instance{wce::parse_instance(std::string_view(text, len))};
  });
}

wce_status wce_instance_load(const char* path, wce_instance** out) {
  WCE_REQUIRE(path && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new wce_instance{wce::load_instance(path)}; });
}

wce_status wce_instance_save(const wce_instance* inst, const char* path) {
  WCE_REQUIRE(inst && path, "null argument");
  return guarded([&] { wce::save_instance(inst->rec, path); });
}

wce_status wce_instance_serialize(const wce_instance* inst, char** out) {
  WCE_REQUIRE(inst && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = dup_string(wce::serialize_instance(inst->rec)); });
}

wce_status wce_instance_digest(const wce_instance* inst, char* out) {
  WCE_REQUIRE(inst && out, "null argument");
  return guarded([&] {
    const std::string d = wce::instance_digest(inst->rec);
    std::memcpy(out, d.c_str(), d.size() + 1);
  });
}

size_t wce_instance_size(const wce_instance* inst) {
  return inst ? inst->rec.instance.space().size() : 0;
}

size_t wce_instance_block_count(const wce_instance* inst) {
  return inst ? inst->rec.instance.partition().block_count() : 0;
}

wce_status wce_instance_norm(const wce_instance* inst, double* formula,
                             double* oracle) {
  WCE_REQUIRE(inst, "null instance");
  return guarded([&] {
    if (formula) *formula = wce::norm_formula(inst->rec.instance);
    if (oracle)
      *oracle = wce::operator_norm(wce::build_T_product(inst->rec.instance));
  });
}

void wce_instance_free(wce_instance* inst) { delete inst; }

size_t wce_check_group_count(void) { return wce::check_groups().size(); }

const char* wce_check_group_name(size_t index) {
  const auto& g = wce::check_groups();
  return index < g.size() ? g[index].c_str() : nullptr;
}

wce_status wce_verify(const wce_instance* const* instances, size_t count,
                      const char* checks, const wce_tolerances* tol,
                      wce_report** out) {
  WCE_REQUIRE(out, "null output");
  WCE_REQUIRE(instances || count == 0, "null instance array");
  *out = nullptr;
  const auto groups = split_checks(checks);
  for (const auto& g : groups) {
    bool known = false;
    for (const auto& k : wce::check_groups()) known = known || k == g;
    WCE_REQUIRE(known, ("unknown check group '" + g + "'").c_str());
  }
  return guarded([&] {
    std::vector<wce::InstanceRecord> recs;
    for (size_t i = 0; i < count; ++i) {
      if (!instances[i]) throw wce::Error(wce::ErrorKind::ConfigInvalid, "null instance");
      recs.push_back(instances[i]->rec);
    }
    const auto t0 = std::chrono::steady_clock::now();
    auto report = wce::run_suite(recs, groups, to_tolerances(tol));
    report.wall_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
    *out = new wce_report{std::move(report)};
  });
}

wce_status wce_suite(uint64_t first, uint64_t last, int full,
                     const wce_tolerances* tol, wce_report** out) {
  WCE_REQUIRE(out, "null output");
  WCE_REQUIRE(first <= last, "seed range is empty");
  *out = nullptr;
  return guarded([&] {
    const auto t0 = std::chrono::steady_clock::now();
    auto report = wce::run_seed_suite(first, last, full != 0, to_tolerances(tol));
    report.wall_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
    *out = new wce_report{std::move(report)};
  });
}

wce_status wce_report_summary_get(const wce_report* report,
                                  wce_report_summary* out) {
  WCE_REQUIRE(report && out, "null argument");
  const auto& r = report->report;
  out->instances = r.instances();
  out->records = r.records().size();
  out->passed = r.count(wce::Status::Pass);
  out->failed = r.count(wce::Status::Fail);
  out->skipped = r.count(wce::Status::Skipped);
  out->wall_seconds = r.wall_seconds;
  return WCE_OK;
}

wce_status wce_report_json(const wce_report* report, char** out) {
  WCE_REQUIRE(report && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = dup_string(report->report.to_json()); });
}

wce_status wce_report_text(const wce_report* report, int verbose, char** out) {
  WCE_REQUIRE(report && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = dup_string(report->report.to_text(verbose != 0)); });
}

void wce_report_free(wce_report* report) { delete report; }

}  // extern "C"
