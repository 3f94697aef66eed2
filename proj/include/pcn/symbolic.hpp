#pragma once

// Symbolic layer: preimage layers of the breakpoint set, regular cells and
// their branch words, singular-connection search, and the growth/doubling
// diagnostics built on top of the cell counts.

#include <optional>

#include "pcn/piecewise.hpp"

namespace pcn {

// Layer j holds D^(j), the j-fold preimage of the breakpoint set, sorted and
// deduplicated. Membership while pulling back uses closed cells so that a
// preimage landing exactly on a breakpoint is kept; such a point witnesses a
// singular connection and shows up as a layer collision.
struct PreimageSet {
  int depth = 0;  // layers 0 .. depth-1 are present
  std::vector<std::vector<Scalar>> layers;

  std::vector<Scalar> q_all() const;  // union of layers, sorted, deduped
  bool layers_disjoint() const;
};

struct RegularCell {
  Scalar lo, hi;  // open interval (lo, hi); lo == hi only when the attractor
                  // is a single point
  ItineraryWord word;
};

struct SingularConnectionWitness {
  ItineraryWord word;
  int source_index = 0;  // 1-based breakpoint indices
  int target_index = 0;
  Scalar value;  // phi_word(a_source)
};

struct GrowthRow {
  int depth = 0;
  long count = 0;           // cell count at delta = 0
  long enlarged_count = 0;  // union over the delta grid; equals count when
                            // epsilon = 0
  double log_rate = 0.0;    // log(alpha_n)/n for the epsilon in force
};

struct GrowthTable {
  Scalar epsilon;
  int samples = 1;
  std::vector<GrowthRow> rows;
};

struct DoublingReport {
  int m = 0;
  double rho = 0.0;
  Scalar epsilon;
  int samples = 1;
  bool singular_guard_ok = false;
  int guard_depth = 0;
  bool tau_finite = false;  // false: fewer than two points in every sampled
                            // Q^(m), the separation is vacuously infinite
  Scalar tau;
  bool n0_found = false;
  long n0 = -1;
  long checked_from = 0, checked_to = -1;  // n-range of verified doublings
  bool holds = false;
  double growth_constant = 0.0;  // C = max_{0<=j<m} alpha_{n0+j} / rho^(n0+j),
                                 // so alpha_n <= C rho^n for all n >= n0
  std::vector<long> alpha;       // alpha_n for n = 1..n_max
  Scalar stable_band;  // largest grid |delta| keeping #Q^(m) constant
};

// Strict half-open preimages: x is kept only if it lies in the open/half-open
// cell of the branch that produced it.
std::vector<Scalar> preimage_points(const PiecewiseContraction& f,
                                    const std::vector<Scalar>& targets);

PreimageSet q_set(const PiecewiseContraction& f, int n);

bool is_regular(const PiecewiseContraction& f, const Scalar& x, int n);

std::vector<RegularCell> enumerate_itineraries(const PiecewiseContraction& f, int n);
// Same, but reusing precomputed layers (pre.depth >= n required).
std::vector<RegularCell> enumerate_itineraries(const PiecewiseContraction& f, int n,
                                               const PreimageSet& pre);

// Union of cell words over a uniform delta grid on [-epsilon, epsilon]; the
// grid always contains both endpoints and 0. Lexicographically sorted.
std::vector<ItineraryWord> enlarged_itineraries(const PiecewiseContraction& f,
                                                const Scalar& epsilon, int n,
                                                int samples);

// First witness in (length, word, source, target) order with word length up
// to `depth`, or nothing: a bounded-depth verdict, not absence overall.
std::optional<SingularConnectionWitness> find_singular_connection(
    const Ifs& ifs, const Breakpoints& breaks, int depth);

GrowthTable growth_table(const PiecewiseContraction& f, int n_max,
                         const Scalar& epsilon, int samples);

DoublingReport check_doubling(const PiecewiseContraction& f, const Scalar& epsilon,
                              double rho, int n_max, int samples, int guard_depth);

}  // namespace pcn
