// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0
//
// wcelab: generate instances, verify them, and run the seeded suite.
// Exit codes: 0 all checks pass, 1 some check failed, 2 usage or input error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wce/wce.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CString {
  char* p = nullptr;
  ~CString() { wce_string_free(p); }
};

int report_error(const char* what) {
  std::cerr << "wcelab: " << what << ": " << wce_last_error() << "\n";
  return kExitUsage;
}

bool parse_seed_range(const std::string& text, uint64_t& first, uint64_t& last) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      first = last = std::stoull(text, &used);
      return used == text.size();
    }
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    first = std::stoull(a, &used);
    if (used != a.size()) return false;
    last = std::stoull(b, &used);
    return used == b.size() && first <= last;
  } catch (const std::exception&) {
    return false;
  }
}

// Writes the JSON report when requested, prints the text summary, and maps the
// outcome to an exit code.
int finish(wce_report* report, const std::string& json_path, bool verbose) {
  CString text;
  if (wce_report_text(report, verbose ? 1 : 0, &text.p) != WCE_OK)
    return report_error("report");
  std::cout << text.p;
  if (!json_path.empty()) {
    CString json;
    if (wce_report_json(report, &json.p) != WCE_OK) return report_error("report");
    std::ofstream out(json_path, std::ios::binary | std::ios::trunc);
    out << json.p;
    if (!out) {
      std::cerr << "wcelab: cannot write " << json_path << "\n";
      return kExitUsage;
    }
  }
  wce_report_summary s{};
  wce_report_summary_get(report, &s);
  return s.failed == 0 ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify weighted conditional expectation operator identities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wce_version()));

  wce_tolerances tol;
  wce_tolerances_default(&tol);
  auto add_tolerance_flags = [&tol](CLI::App* cmd) {
    cmd->add_option("--tol", tol.op, "relative tolerance for operator comparisons")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--support-tol", tol.support,
                    "relative threshold for support and zero detection")
        ->check(CLI::PositiveNumber);
  };

  // gen
  auto* gen = app.add_subcommand("gen", "generate a seeded instance");
  wce_gen_config cfg;
  wce_gen_config_default(&cfg);
  std::vector<std::string> modes;
  std::string gen_out;
  bool no_phi = false;
  gen->add_option("--seed", cfg.seed, "generator seed")->required();
  gen->add_option("--n", cfg.n, "number of points (2..64)");
  gen->add_option("--blocks", cfg.block_count, "number of partition blocks");
  gen->add_option("--mode", modes, "special mode(s)")
      ->check(CLI::IsMember({"measurable", "partial-isometry", "zero-blocks",
                             "constant", "perturbed"}))
      ->delimiter(',');
  gen->add_flag("--no-phi", no_phi, "omit the random point map");
  gen->add_option("-o,--output", gen_out, "output file (default: stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "run checks on instance files");
  std::vector<std::string> files;
  std::string checks = "all";
  std::string verify_report;
  bool verify_verbose = false;
  verify->add_option("files", files, "instance files")->required();
  verify->add_option("--checks", checks, "comma-separated check groups or 'all'");
  verify->add_option("--report", verify_report, "write the JSON report here");
  verify->add_flag("-v,--verbose", verify_verbose, "list every record");
  add_tolerance_flags(verify);

  // suite
  auto* suite = app.add_subcommand("suite", "run the seeded verification suite");
  std::string seeds;
  bool full = false;
  std::string suite_report;
  bool suite_verbose = false;
  suite->add_option("--seeds", seeds, "seed range A..B (inclusive)")->required();
  suite->add_flag("--full", full, "add the companion instance families per seed");
  suite->add_option("--report", suite_report, "write the JSON report here");
  suite->add_flag("-v,--verbose", suite_verbose, "list every record");
  add_tolerance_flags(suite);

  // checks
  auto* list = app.add_subcommand("checks", "list check groups");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*list) {
    for (size_t i = 0; i < wce_check_group_count(); ++i)
      std::cout << wce_check_group_name(i) << "\n";
    return 0;
  }

  if (*gen) {
    for (const auto& m : modes) {
      if (m == "measurable") cfg.modes |= WCE_MODE_MEASURABLE_U;
      if (m == "partial-isometry") cfg.modes |= WCE_MODE_PARTIAL_ISOMETRY;
      if (m == "zero-blocks") cfg.modes |= WCE_MODE_ZERO_BLOCKS;
      if (m == "constant") cfg.modes |= WCE_MODE_CONSTANT_U;
      if (m == "perturbed") cfg.modes |= WCE_MODE_PERTURBED_U;
    }
    cfg.with_point_map = no_phi ? 0 : 1;
    wce_instance* inst = nullptr;
    if (wce_instance_generate(&cfg, &inst) != WCE_OK) return report_error("gen");
    wce_status st;
    if (gen_out.empty()) {
      CString text;
      st = wce_instance_serialize(inst, &text.p);
      if (st == WCE_OK) std::cout << text.p;
    } else {
      st = wce_instance_save(inst, gen_out.c_str());
    }
    wce_instance_free(inst);
    return st == WCE_OK ? 0 : report_error("gen");
  }

  if (*verify) {
    std::vector<wce_instance*> insts;
    auto release = [&insts] {
      for (auto* p : insts) wce_instance_free(p);
    };
    for (const auto& f : files) {
      wce_instance* inst = nullptr;
      if (wce_instance_load(f.c_str(), &inst) != WCE_OK) {
        release();
        return report_error("verify");
      }
      insts.push_back(inst);
    }
    wce_report* report = nullptr;
    const wce_status st = wce_verify(insts.data(), insts.size(), checks.c_str(),
                                     &tol, &report);
    release();
    if (st != WCE_OK) return report_error("verify");
    const int code = finish(report, verify_report, verify_verbose);
    wce_report_free(report);
    return code;
  }

  if (*suite) {
    uint64_t first = 0, last = 0;
    if (!parse_seed_range(seeds, first, last)) {
      std::cerr << "wcelab: --seeds expects A..B with A <= B, got '" << seeds
                << "'\n";
      return kExitUsage;
    }
    wce_report* report = nullptr;
    if (wce_suite(first, last, full ? 1 : 0, &tol, &report) != WCE_OK)
      return report_error("suite");
    const int code = finish(report, suite_report, suite_verbose);
    wce_report_free(report);
    return code;
  }
  return kExitUsage;
}
