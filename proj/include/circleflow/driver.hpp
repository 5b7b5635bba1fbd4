#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "circleflow/run_config.hpp"

namespace circleflow {

// Exit codes shared by all commands: 0 completed, 2 breakdown (distinguishable
// for scripting), 1 config/IO error. Command entry points never throw; they
// report to stderr and return 1 instead.

/// Execute one run and write diagnostics.csv, summary.json and (optionally)
/// snapshots.json into the config's output directory. backend=both runs both
/// integrators, adds diagnostics_lagrangian.csv and reports their
/// discrepancy in the summary.
int cmd_run(const RunConfig& cfg);

/// Self-convergence study over time steps or grid sizes (exactly one list,
/// at least 3 entries). Writes convergence.csv and convergence_summary.json.
/// Temporal mode integrates a reference at dt_min/4 and reports observed
/// orders; spatial mode compares against the largest grid at common points
/// and reports per-doubling error ratios.
int cmd_convergence(const RunConfig& cfg, const std::vector<double>& dts,
                    const std::vector<int>& ns);

/// Run both backends and report the per-record sup-norm discrepancy of u
/// (compare.csv, compare_summary.json; pass iff <= 1e-4).
int cmd_compare_backends(const RunConfig& cfg);

/// Machine-readable preset listing (JSON array) on the stream, including the
/// landau_lifschitz entry.
int cmd_catalog(std::ostream& out);

/// Shortest round-trip decimal formatting used for all CSV numbers.
std::string format_double(double v);

}  // namespace circleflow
