#ifndef SPINORLAB_REPORT_HPP
#define SPINORLAB_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinorlab/common.hpp"

namespace spinorlab {

/// Runtime settings shared by the CLI and the verification suites. Equal
/// configs (seed included) must yield byte-identical reports.
struct RunConfig {
  std::uint64_t seed = 1;
  int restarts = 64;
  int max_iter = 500;
  double step0 = 0.5;
  double tol_exact = 1e-10;
  double tol_opt = 1e-6;
  Index dimension_cap = 4096;
  std::string output_format = "json";  // json | csv
  std::string output_path;             // empty: stdout

  void validate() const {
    if (restarts < 1 || max_iter < 1)
      throw InvalidWeight("RunConfig: counts must be positive");
    if (tol_exact <= 0 || tol_opt <= 0)
      throw InvalidWeight("RunConfig: tolerances must be positive");
    if (step0 <= 0) throw InvalidWeight("RunConfig: step0 must be positive");
    if (dimension_cap < 1)
      throw InvalidWeight("RunConfig: dimension cap must be positive");
    if (output_format != "json" && output_format != "csv")
      throw InvalidWeight("RunConfig: format must be json or csv");
  }
};

struct CheckResult {
  enum class Status { Pass, Fail, LowerBoundOnly };

  std::string id;
  std::vector<std::pair<std::string, std::string>> params;
  double computed = 0.0;
  std::optional<double> expected;
  double tolerance = 0.0;
  Status status = Status::Fail;
  std::string witness_ref;

  static CheckResult against(std::string id, double computed, double expected,
                             double tolerance) {
    CheckResult r;
    r.id = std::move(id);
    r.computed = computed;
    r.expected = expected;
    r.tolerance = tolerance;
    r.status = std::abs(computed - expected) <= tolerance ? Status::Pass
                                                          : Status::Fail;
    return r;
  }

  /// Certified lower bound; `threshold` records the gate the value had to
  /// clear and is reported as `expected` so failing rows stay diagnosable.
  static CheckResult bound(std::string id, double computed, bool ok,
                           double threshold = 0.0) {
    CheckResult r;
    r.id = std::move(id);
    r.computed = computed;
    r.expected = threshold;
    r.tolerance = 0.0;
    r.status = ok ? Status::LowerBoundOnly : Status::Fail;
    return r;
  }

  static CheckResult flag(std::string id, bool ok, double computed = 0.0,
                          double tolerance = 0.0) {
    CheckResult r;
    r.id = std::move(id);
    r.computed = computed;
    r.expected = 0.0;  // flags gate a residual against the tolerance
    r.tolerance = tolerance;
    r.status = ok ? Status::Pass : Status::Fail;
    return r;
  }

  static CheckResult boolean(std::string id, bool ok) {
    CheckResult r;
    r.id = std::move(id);
    r.computed = ok ? 1.0 : 0.0;
    r.expected = 1.0;
    r.tolerance = 0.0;
    r.status = ok ? Status::Pass : Status::Fail;
    return r;
  }

  /// Pass iff the computed value clears a strict threshold from above.
  static CheckResult gate(std::string id, double computed, double threshold) {
    CheckResult r;
    r.id = std::move(id);
    r.computed = computed;
    r.expected = threshold;
    r.tolerance = 0.0;
    r.status = computed > threshold ? Status::Pass : Status::Fail;
    return r;
  }

  CheckResult& with(std::string key, std::string value) {
    params.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  CheckResult& with(std::string key, double value);
  CheckResult& with(std::string key, long long value) {
    params.emplace_back(std::move(key), std::to_string(value));
    return *this;
  }

  bool passed() const { return status != Status::Fail; }
};

struct Report {
  RunConfig config;
  std::vector<CheckResult> results;
  std::string version = "spinorlab 0.1.0";

  bool all_passed() const {
    for (const auto& r : results)
      if (!r.passed()) return false;
    return true;
  }
};

/// Deterministic shortest-roundtrip float formatting used everywhere a value
/// reaches a report.
std::string format_double(double v);

std::string to_json(const Report& report);
std::string to_csv(const Report& report);

/// Serialize in report.config.output_format.
std::string serialize(const Report& report);

}  // namespace spinorlab

#endif
