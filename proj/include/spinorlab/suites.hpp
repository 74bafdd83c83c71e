#ifndef SPINORLAB_SUITES_HPP
#define SPINORLAB_SUITES_HPP

#include <vector>

#include "spinorlab/report.hpp"

namespace spinorlab {

/// Named verification suites exposed through `spinorlab verify`.
/// Valid names: fock, clifford, tau, theorem7, projections, witnesses, all.
std::vector<CheckResult> run_suite(const std::string& name,
                                   const RunConfig& config);

std::vector<std::string> suite_names();

// Parameter tables for `spinorlab table`.
std::vector<CheckResult> table_tau_cb(int n_min, int n_max,
                                      const RunConfig& config);
std::vector<CheckResult> table_theorem7_grid(int n_min, int n_max,
                                             const std::vector<double>& ps,
                                             const std::vector<double>& ts,
                                             const RunConfig& config);
std::vector<CheckResult> table_rad1_sweep(int n, double p,
                                          const std::vector<double>& ts,
                                          const RunConfig& config);
std::vector<CheckResult> table_witness_rect_sweep(
    const std::vector<double>& ps, double t, const std::vector<double>& thetas,
    const RunConfig& config);

}  // namespace spinorlab

#endif
