#include "spinorlab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace spinorlab {

std::string format_double(double v) {
  char buf[64];
  // shortest representation that round-trips
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CheckResult& CheckResult::with(std::string key, double value) {
  params.emplace_back(std::move(key), format_double(value));
  return *this;
}

namespace {

const char* status_name(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::Pass:
      return "PASS";
    case CheckResult::Status::Fail:
      return "FAIL";
    default:
      return "LOWER_BOUND_ONLY";
  }
}

nlohmann::ordered_json config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  j["restarts"] = c.restarts;
  j["max_iter"] = c.max_iter;
  j["step0"] = format_double(c.step0);
  j["tol_exact"] = format_double(c.tol_exact);
  j["tol_opt"] = format_double(c.tol_opt);
  j["dimension_cap"] = c.dimension_cap;
  j["output_format"] = c.output_format;
  return j;
}

}  // namespace

std::string to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["config"] = config_json(report.config);
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : report.results) {
    nlohmann::ordered_json row;
    row["id"] = r.id;
    nlohmann::ordered_json params;
    for (const auto& [k, v] : r.params) params[k] = v;
    row["params"] = params;
    row["computed"] = format_double(r.computed);
    if (r.expected) row["expected"] = format_double(*r.expected);
    row["tolerance"] = format_double(r.tolerance);
    row["status"] = status_name(r.status);
    if (!r.witness_ref.empty()) row["witness_ref"] = r.witness_ref;
    j["results"].push_back(row);
  }
  j["versions"] = {{"spinorlab", report.version}};
  return j.dump(2) + "\n";
}

std::string to_csv(const Report& report) {
  std::set<std::string> keys;
  for (const auto& r : report.results)
    for (const auto& [k, v] : r.params) keys.insert(k);
  std::ostringstream out;
  out << "id,status,computed,expected,tolerance,witness_ref";
  for (const auto& k : keys) out << "," << k;
  out << "\n";
  for (const auto& r : report.results) {
    out << r.id << "," << status_name(r.status) << ","
        << format_double(r.computed) << ","
        << (r.expected ? format_double(*r.expected) : "") << ","
        << format_double(r.tolerance) << "," << r.witness_ref;
    std::map<std::string, std::string> pm(r.params.begin(), r.params.end());
    for (const auto& k : keys) {
      auto it = pm.find(k);
      out << "," << (it == pm.end() ? "" : it->second);
    }
    out << "\n";
  }
  return out.str();
}

std::string serialize(const Report& report) {
  return report.config.output_format == "csv" ? to_csv(report)
                                              : to_json(report);
}

}  // namespace spinorlab
