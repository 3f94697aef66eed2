#pragma once

// Delta-scan over the rotated family R_delta f of a circle map: every grid
// point inside the gap band (-ell, ell) is classified through the reduced
// line-map family with shifted breakpoints. Unresolved deltas are collected
// into intervals and can be refined to estimate a box-counting dimension.

#include <vector>

#include "pcn/circle.hpp"
#include "pcn/classify.hpp"

namespace pcn {

struct DeltaResult {
  Scalar delta;
  OrbitStatus status = OrbitStatus::undecided;
  int period = 0;       // largest minimal period over the lane's start points
  long iterations = 0;  // largest per-start charge
};

struct FlaggedInterval {
  Scalar lo, hi;  // consecutive unresolved grid points, endpoints included
};

struct BoxDimFit {
  double slope = 0.0;
  int scales_used = 0;
  bool degenerate = true;  // empty point set or fewer than two usable scales
};

struct ScanReport {
  Scalar c, ell;   // gap midpoint and clearance of the base reduction
  Scalar delta0;   // rotation used as the base for the negative side (-ell)
  Scalar spacing;  // 2 ell / (grid + 1)
  long grid = 0;
  int threads = 1;
  ClassifyBudget budget;
  std::vector<DeltaResult> results;  // ascending delta, one per grid point
  std::vector<FlaggedInterval> flagged;
  double flagged_fraction = 0.0;
};

// Grid points delta_i = -ell + 2 ell (i+1)/(grid+1), i = 0..grid-1. Results
// are independent of the thread count.
ScanReport scan(const CircleAffineMap& f, long grid,
                const ClassifyBudget& budget, int threads = 1);

// Least-squares slope of log N(s) against log(1/s), where N counts occupied
// boxes of size s.
BoxDimFit box_dimension(const std::vector<double>& points,
                        const std::vector<double>& scales);

struct RefineReport {
  ScanReport base;
  int levels = 0;
  std::vector<double> flagged_points;  // every unresolved delta after refining
  BoxDimFit fit;
};

// Repeatedly halves the spacing around unresolved deltas (midpoints of each
// flagged run plus a half-step margin on both ends) and re-classifies the
// new points, then fits the box dimension of what is still unresolved.
RefineReport refine_and_boxdim(const CircleAffineMap& f, long grid,
                               const ClassifyBudget& budget, int levels,
                               const std::vector<double>& scales,
                               int threads = 1);

}  // namespace pcn
