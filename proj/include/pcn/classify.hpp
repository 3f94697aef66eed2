#pragma once

#include <cstdint>
#include <vector>

#include "pcn/circle.hpp"
#include "pcn/piecewise.hpp"

namespace pcn {

// Budget for orbit classification. Detection runs on a double shadow orbit;
// a candidate cycle only counts once it has been re-verified in the map's own
// backend, so a loose tolerance can cost iterations but not correctness.
struct ClassifyBudget {
  long max_iterations = 100000;
  long transient_skip = 1024;
  double tol = -1.0;  // <= 0 means: use the global backend tolerance
  int period_cap = 4096;
};

enum class OrbitStatus { periodic, undecided };

const char* orbit_status_name(OrbitStatus s);

struct Classification {
  OrbitStatus status = OrbitStatus::undecided;
  int period = 0;
  std::vector<Scalar> cycle;  // smallest point first; empty when undecided
  long iterations_used = 0;
};

Classification classify(const PiecewiseContraction& f, const Scalar& x0,
                        const ClassifyBudget& budget);
Classification classify(const CircleAffineMap& f, const Scalar& x0,
                        const ClassifyBudget& budget);

// Picks up a shadow orbit whose first `pos` steps were already taken (the
// scanner advances whole batches of lanes before classifying each one).
// classify(f, x0, b) is exactly the transient loop plus this call.
Classification classify_resumed(const PiecewiseContraction& f, double x,
                                long pos, const ClassifyBudget& budget);

// Start points used by classify_map: one per cell of the invariant interval
// plus its endpoints (line), or one per arc plus the cut points (circle).
std::vector<Scalar> classify_starts(const PiecewiseContraction& f);
std::vector<Scalar> classify_starts(const CircleAffineMap& f);

struct MapClassification {
  std::vector<Scalar> starts;
  std::vector<Classification> results;  // aligned with starts
  int distinct_orbits = 0;
  bool all_periodic = false;
  long iterations_total = 0;
};

// Classifies from one start per invariant-interval cell plus the interval
// endpoints, then merges coinciding cycles.
MapClassification classify_map(const PiecewiseContraction& f,
                               const ClassifyBudget& budget);
MapClassification classify_map(const CircleAffineMap& f,
                               const ClassifyBudget& budget);

struct CensusRow {
  std::vector<Scalar> breakpoints;
  int orbit_count = 0;
  int max_period = 0;
  bool all_periodic = false;
  long iterations = 0;
};

struct CensusTable {
  std::uint64_t seed = 0;
  int instances = 0;
  std::vector<CensusRow> rows;
  double resolved_fraction = 0.0;  // share of instances with every start periodic
  int max_orbits = 0;
};

// Draws `instances` random breakpoint vectors inside the invariant interval
// of `ifs` and classifies each resulting map. Deterministic for a fixed seed.
CensusTable census(const Ifs& ifs, int instances, std::uint64_t seed,
                   const ClassifyBudget& budget);

}  // namespace pcn
