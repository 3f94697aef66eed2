#pragma once

// Cover certificates: center clouds phi_word(0) of the enlarged itineraries,
// the interval-cover measure bound, and separation-based finiteness verdicts.

#include "pcn/symbolic.hpp"

namespace pcn {

struct WordCenter {
  ItineraryWord word;
  Scalar center;  // phi_word(0)
};

struct CoverCertificate {
  int depth = 0;
  Scalar epsilon;
  int samples = 1;
  std::vector<WordCenter> centers;  // one entry per word; centers may repeat
  Scalar radius;                    // (1 + 2r) * lambda^depth
  double dimension = 0.0;
  Scalar bound;       // (k-1) * 2^d * (1+2r)^d * #words * lambda^(depth*d)
  bool exact_bound = false;  // bound held as an exact rational
  Scalar lambda, radius_phi;
  int k = 0;
};

struct SeparationResult {
  Scalar tau;               // min over depths 1..n and breakpoints of
                            // |a_i + delta - center|
  bool delta_in_band = false;  // |delta| < epsilon; tau only certifies inside
                               // the band the centers were enlarged over
};

enum class FinitenessStatus { certified_finite, inconclusive };

struct FinitenessVerdict {
  Scalar delta, epsilon, tau;
  long n_star = -1;  // first depth with 2 * r * lambda^n < tau
  FinitenessStatus status = FinitenessStatus::inconclusive;
  bool delta_in_band = false;
  bool singular_guard_ok = false;  // no singular connection to guard_depth
  int guard_depth = 0;
  int n_max = 0;
  int samples = 1;
};

std::vector<WordCenter> omega_centers(const PiecewiseContraction& f,
                                      const Scalar& epsilon, int n, int samples);

CoverCertificate cover_certificate(const PiecewiseContraction& f,
                                   const Scalar& epsilon, double dimension, int n,
                                   int samples);

SeparationResult separation(const PiecewiseContraction& f, const Scalar& delta,
                            const Scalar& epsilon, int n, int samples);

FinitenessVerdict finiteness_certificate(const PiecewiseContraction& f,
                                         const Scalar& delta, const Scalar& epsilon,
                                         int n_max, int samples, int guard_depth);

}  // namespace pcn
