#pragma once

// CSV emission and the observed-series reader. Numbers are written in the shortest
// decimal form that reads back to the same double.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hivsde/calibration.hpp"
#include "hivsde/ensemble.hpp"
#include "hivsde/integrators.hpp"

namespace hivsde {

std::string format_double(double v);

/// Header t,S_u,S_a,I,C,A then one row per grid point.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Header bin_lo,bin_hi,density.
void write_histogram_csv(std::ostream& out, const Histogram& h);

/// Header t, then <X>_mean,<X>_q05,...,<X>_q95 for X in S_u,S_a,I,C,A.
void write_summary_csv(std::ostream& out, const EnsembleSummary& s);

/// Columns time,observed with a header row. Every record gets `target`.
ObservedSeries read_series_csv(std::istream& in, Target target = Target::kInfectedTotal);
ObservedSeries load_series_csv(const std::filesystem::path& path, Target target = Target::kInfectedTotal);

void write_series_csv(std::ostream& out, const ObservedSeries& series);

}  // namespace hivsde
