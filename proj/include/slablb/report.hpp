#pragma once

#include <string>
#include <utility>
#include <vector>

#include "slablb/json_io.hpp"

namespace slablb {

struct CheckResult {
  std::string check_id;
  Json params = Json::object();
  Json measured = Json::object();
  Json bound = Json::object();
  Json fitted_constants = Json::object();
  bool pass = false;
  std::string note;  // "vacuous case", "skipped", diagnostics

  Json to_json() const {
    return Json{{"check_id", check_id}, {"params", params},
                {"measured", measured}, {"bound", bound},
                {"fitted_constants", fitted_constants},
                {"pass", pass},        {"note", note}};
  }
};

// Accumulates per-check pass/fail with measured quantities; skipped checks
// are recorded explicitly so a report never silently drops one.
struct VerificationReport {
  std::vector<CheckResult> checks;

  void add(CheckResult c) { checks.push_back(std::move(c)); }

  void add_skipped(const std::string& id, const std::string& why) {
    CheckResult c;
    c.check_id = id;
    c.pass = false;
    c.note = "skipped: " + why;
    checks.push_back(std::move(c));
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks)
      if (!c.pass) ++n;
    return n;
  }

  Json to_json() const {
    Json arr = Json::array();
    for (const auto& c : checks) arr.push_back(c.to_json());
    return Json{{"checks", arr}, {"all_pass", all_pass()}};
  }
};

}  // namespace slablb
