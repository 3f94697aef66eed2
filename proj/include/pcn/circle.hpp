#pragma once

// Piecewise lambda-affine circle maps x -> {lambda x + b_i} on [0,1), the gap
// of the image, and the reduction replacing the rotated family f_delta by a
// shifted-breakpoint family of line maps.

#include "pcn/piecewise.hpp"

namespace pcn {

class CircleAffineMap {
 public:
  // cuts = interior breakpoints a_1 < ... < a_{k-1} in (0,1); may be empty.
  // intercepts = b_1..b_k, one per arc of the induced partition of [0,1).
  CircleAffineMap(Scalar lambda, std::vector<Scalar> cuts,
                  std::vector<Scalar> intercepts);

  const Scalar& lambda() const { return lambda_; }
  const std::vector<Scalar>& cuts() const { return cuts_; }
  const std::vector<Scalar>& intercepts() const { return intercepts_; }
  int arcs() const { return static_cast<int>(intercepts_.size()); }
  Backend backend() const { return lambda_.backend(); }

  int branch_index(const Scalar& x) const;  // 1-based; x taken mod 1
  Scalar step(const Scalar& x) const;       // {lambda x + b_i}

  CircleAffineMap rotated(const Scalar& delta) const;  // R_delta after f

 private:
  Scalar lambda_;
  std::vector<Scalar> cuts_;
  std::vector<Scalar> intercepts_;
};

// x mod 1 into [0, 1).
Scalar frac_part(const Scalar& x);

struct GapInfo {
  Scalar c;    // midpoint of the largest complementary arc of the image
  Scalar ell;  // circle distance from c to the image closure
  // Closure of f([0,1)) as disjoint sorted segments [lo, hi] inside [0,1].
  std::vector<std::pair<Scalar, Scalar>> image;
};

GapInfo gap(const CircleAffineMap& f);

struct Reduction {
  GapInfo gap;
  PiecewiseContraction line_map;  // affine extension G of R_{-c} f R_c
  Scalar shift_factor;            // 1 / (1 - lambda)
  // f rotated by delta is asymptotically periodic iff the line map with
  // breakpoints shifted by -delta * shift_factor is; orbits correspond
  // under x -> x + delta * shift_factor.
};

Reduction reduce(const CircleAffineMap& f);

}  // namespace pcn
