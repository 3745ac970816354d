// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

// Instance generation, instance files, verification checks and reports.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wce/decompositions.hpp"
#include "wce/random.hpp"
#include "wce/spectral.hpp"

namespace wce {

// ---------------------------------------------------------------------------
// Generation

struct GeneratorConfig {
  std::uint64_t seed = 1;
  std::size_t n = 8;            // 2..64
  std::size_t block_count = 3;  // 1..n
  double weight_lo = 0.1, weight_hi = 10.0;
  // Nonzero magnitudes of u and w. Exact zeros only come from the modes.
  double magnitude_lo = 0.05, magnitude_hi = 4.0;

  bool measurable_u = false;      // u constant on each block
  bool partial_isometry = false;  // E|w|^2 E|u|^2 = chi_A for random blocks A
  bool zero_blocks = false;       // u = 0 on some blocks, so S != X
  bool constant_u = false;        // u constant on the whole space
  bool perturbed_u = false;       // measurable u, then broken on one block
  bool with_point_map = true;
};

/// Throws Error(ConfigInvalid).
void validate(const GeneratorConfig& cfg);

/// An instance plus the optional point map used by the spectral-measure
/// checks.
struct InstanceRecord {
  WCEInstance instance;
  std::optional<PointMap> phi;

  bool operator==(const InstanceRecord&) const = default;
};

/// Deterministic in cfg. Throws Error(ConfigInvalid).
InstanceRecord gen_instance(const GeneratorConfig& cfg);

/// Random u constant on every fiber of phi.
MeasurableFunction random_fiber_measurable(const PointMap& phi, Rng& rng);

// ---------------------------------------------------------------------------
// Instance files

/// Pretty-printed JSON; numbers round-trip exactly.
std::string serialize_instance(const InstanceRecord& rec);

/// Throws Error(ParseError) with the line or field at fault.
InstanceRecord parse_instance(std::string_view text);

InstanceRecord load_instance(const std::string& path);
void save_instance(const InstanceRecord& rec, const std::string& path);

/// 16 hex digits, FNV-1a over the serialized form.
std::string instance_digest(const InstanceRecord& rec);

// ---------------------------------------------------------------------------
// Verification

struct Tolerances {
  double op = 1e-8;               // relative operator deviation
  double func_calc = 1e-7;        // functional calculus closed vs oracle
  double kernel = 1e-7;           // kernel projections
  double support = 1e-10;         // zero / support detection
  double vanish_positive = 1e-6;  // ||M_g T|| lower bound when g meets S n G
  double pi_gap = 1e-4;           // oracle residual for non-partial-isometries
  double measure = 1e-9;          // spectral-measure axioms / reconstruction
  double mass = 1e-12;            // pushforward mass conservation (relative)
  double slack = 1e-12;           // pointwise inequalities, times scale
  double grouping = 1e-8;         // eigenvalue deduplication
  double normality = 1e-8;        // commutator oracle, times 1 + ||A||^2
};

enum class Status { Pass, Fail, Skipped };
const char* to_string(Status s) noexcept;

struct CheckRecord {
  std::string instance;  // digest
  std::string check;     // e.g. "polar/abs"
  std::string identity;  // the relation being certified
  Status status = Status::Pass;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
  std::string instance_text;  // serialized instance, failures only
};

class VerificationReport {
 public:
  void add(CheckRecord rec) { records_.push_back(std::move(rec)); }
  void merge(VerificationReport other);

  /// Orders records by (instance digest, check name).
  void canonicalize();

  const std::vector<CheckRecord>& records() const noexcept { return records_; }
  std::size_t count(Status s) const;
  std::size_t instances() const;
  bool ok() const { return count(Status::Fail) == 0; }

  /// Not part of the JSON form.
  double wall_seconds = 0.0;

  /// Canonical machine-readable form. Deterministic for equal records.
  std::string to_json() const;
  /// Summary line plus one line per failing record.
  std::string to_text(bool verbose = false) const;

 private:
  std::vector<CheckRecord> records_;
};

/// Names of the check groups, in execution order.
const std::vector<std::string>& check_groups();

/// Runs one group on one instance. Throws Error(ConfigInvalid) for an unknown
/// group name. Randomized parts draw from a stream seeded by the instance
/// digest and the group name.
std::vector<CheckRecord> run_check(const std::string& group,
                                   const InstanceRecord& rec,
                                   const Tolerances& tol = {});

VerificationReport run_suite(const std::vector<InstanceRecord>& instances,
                             const std::vector<std::string>& groups,
                             const Tolerances& tol = {});

/// The instance family exercised by `suite` for one seed: one generic
/// instance, plus (full) a partial-isometry construction, a measurable-u
/// instance, a perturbed non-measurable instance and a small point-map
/// instance.
std::vector<InstanceRecord> suite_instances(std::uint64_t seed, bool full);

VerificationReport run_seed_suite(std::uint64_t first, std::uint64_t last,
                                  bool full, const Tolerances& tol = {});

}  // namespace wce
