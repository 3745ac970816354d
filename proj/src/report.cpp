// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wce/error.hpp"
#include "wce/harness.hpp"

namespace wce {

namespace {

using ordered_json = nlohmann::ordered_json;

// JSON has no infinity; non-finite residuals are written as strings.
ordered_json number_or_tag(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

void VerificationReport::merge(VerificationReport other) {
  records_.insert(records_.end(),
                  std::make_move_iterator(other.records_.begin()),
                  std::make_move_iterator(other.records_.end()));
  wall_seconds += other.wall_seconds;
}

void VerificationReport::canonicalize() {
  std::stable_sort(records_.begin(), records_.end(),
                   [](const CheckRecord& a, const CheckRecord& b) {
                     if (a.instance != b.instance) return a.instance < b.instance;
                     return a.check < b.check;
                   });
}

std::size_t VerificationReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(),
                    [s](const CheckRecord& r) { return r.status == s; }));
}

std::size_t VerificationReport::instances() const {
  std::set<std::string> ids;
  for (const auto& r : records_) ids.insert(r.instance);
  return ids.size();
}

std::string VerificationReport::to_json() const {
  ordered_json doc;
  doc["format"] = "wcelab-report/1";
  doc["summary"] = {{"instances", instances()},
                    {"records", records_.size()},
                    {"passed", count(Status::Pass)},
                    {"failed", count(Status::Fail)},
                    {"skipped", count(Status::Skipped)}};
  ordered_json recs = ordered_json::array();
  for (const auto& r : records_) {
    ordered_json j;
    j["instance"] = r.instance;
    j["check"] = r.check;
    j["identity"] = r.identity;
    j["status"] = to_string(r.status);
    j["residual"] = number_or_tag(r.residual);
    j["tolerance"] = r.tolerance;
    if (!r.detail.empty()) j["detail"] = r.detail;
    if (!r.instance_text.empty()) j["instance_json"] = r.instance_text;
    recs.push_back(std::move(j));
  }
  doc["records"] = std::move(recs);
  return doc.dump(1) + "\n";
}

std::string VerificationReport::to_text(bool verbose) const {
  std::ostringstream os;
  os << instances() << " instance(s), " << records_.size() << " record(s): "
     << count(Status::Pass) << " passed, " << count(Status::Fail) << " failed, "
     << count(Status::Skipped) << " skipped";
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.2f s)", wall_seconds);
  os << buf << "\n";
  for (const auto& r : records_) {
    if (!verbose && r.status != Status::Fail) continue;
    std::snprintf(buf, sizeof buf, "%-7s ", to_string(r.status));
    os << buf << r.instance << "  " << r.check;
    if (r.status != Status::Skipped) {
      std::snprintf(buf, sizeof buf, "  residual %.3e / tol %.1e", r.residual,
                    r.tolerance);
      os << buf;
    }
    if (!r.detail.empty()) os << "  [" << r.detail << "]";
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Seeded suite

std::vector<InstanceRecord> suite_instances(std::uint64_t seed, bool full) {
  Rng plan(seed ^ 0x5EEDF00Dull);
  std::vector<InstanceRecord> out;

  GeneratorConfig base;
  base.seed = seed;
  base.n = 2 + plan.index(23);  // 2..24
  base.block_count = 1 + plan.index(base.n);
  switch (seed % 6) {
    case 0: base.zero_blocks = true; break;
    case 1: base.constant_u = true; break;
    case 3: base.zero_blocks = true; base.measurable_u = true; break;
    default: break;
  }
  out.push_back(gen_instance(base));
  if (!full) return out;

  GeneratorConfig pi;
  pi.seed = plan.bits();
  pi.n = 2 + plan.index(23);
  pi.block_count = 1 + plan.index(pi.n);
  pi.partial_isometry = true;
  pi.zero_blocks = plan.chance(0.3);
  out.push_back(gen_instance(pi));

  GeneratorConfig meas;
  meas.seed = plan.bits();
  meas.n = 2 + plan.index(23);
  meas.block_count = 1 + plan.index(meas.n);
  meas.measurable_u = true;
  meas.zero_blocks = plan.chance(0.3);
  out.push_back(gen_instance(meas));

  GeneratorConfig pert;
  pert.seed = plan.bits();
  pert.n = 2 + plan.index(23);
  pert.block_count = 1 + plan.index(pert.n - 1);  // leaves a block of size >= 2
  pert.perturbed_u = true;
  out.push_back(gen_instance(pert));

  GeneratorConfig small;
  small.seed = plan.bits();
  small.n = 2 + plan.index(15);  // 2..16
  small.block_count = 1 + plan.index(small.n);
  out.push_back(gen_instance(small));
  return out;
}

VerificationReport run_seed_suite(std::uint64_t first, std::uint64_t last,
                                  bool full, const Tolerances& tol) {
  if (last < first)
    throw Error(ErrorKind::ConfigInvalid, "seed range is empty (last < first)");
  std::vector<InstanceRecord> instances;
  for (std::uint64_t s = first;; ++s) {
    for (auto& rec : suite_instances(s, full)) instances.push_back(std::move(rec));
    if (s == last) break;
  }
  return run_suite(instances, check_groups(), tol);
}

}  // namespace wce
