#pragma once

// Piecewise-affine interval contractions: an injective family of affine
// contractions plus increasing breakpoints. Branch i is active on
// [a_{i-1}, a_i) with the outer cells extending to -inf / +inf, so the
// cells are left-closed and right-open.

#include <utility>
#include <vector>

#include "pcn/affine.hpp"

namespace pcn {

class Ifs {
 public:
  explicit Ifs(std::vector<AffineContraction> branches);

  int size() const { return static_cast<int>(branches_.size()); }
  const AffineContraction& branch(int i) const;  // 1-based
  Backend backend() const { return branches_.front().backend(); }

  // max_i |slope_i|, and the absorption radius built from the branch fixed
  // points: r = (1 + lam) / (1 - lam) * max_i |fixed_point_i|.
  const Scalar& lambda() const { return lambda_; }
  const Scalar& radius() const { return radius_; }
  // Every orbit eventually enters [-2r, 2r] and stays.
  std::pair<Scalar, Scalar> attractor() const;

 private:
  std::vector<AffineContraction> branches_;
  Scalar lambda_, radius_;
};

class Breakpoints {
 public:
  explicit Breakpoints(std::vector<Scalar> points);

  int size() const { return static_cast<int>(points_.size()); }
  const Scalar& at(int i) const;  // 0-based
  const std::vector<Scalar>& points() const { return points_; }
  Backend backend() const { return points_.front().backend(); }

  Breakpoints shifted(const Scalar& delta) const;

 private:
  std::vector<Scalar> points_;
};

struct ItineraryWord {
  std::vector<int> symbols;  // 1-based branch indices, first applied first

  int length() const { return static_cast<int>(symbols.size()); }
  friend bool operator==(const ItineraryWord&, const ItineraryWord&) = default;
  friend auto operator<=>(const ItineraryWord&, const ItineraryWord&) = default;
};

struct OrbitPoint {
  Scalar value;  // position after the step
  int branch;    // branch applied to reach it
};

class PiecewiseContraction {
 public:
  PiecewiseContraction(Ifs ifs, Breakpoints breaks);

  const Ifs& ifs() const { return ifs_; }
  const Breakpoints& breaks() const { return breaks_; }
  int branches() const { return ifs_.size(); }
  Backend backend() const { return ifs_.backend(); }

  // 1-based index of the branch owning x (left-closed cells).
  int branch_index(const Scalar& x) const;
  std::pair<Scalar, int> step(const Scalar& x) const;
  std::vector<OrbitPoint> orbit(const Scalar& x0, int n) const;
  ItineraryWord itinerary(const Scalar& x0, int n) const;

  PiecewiseContraction shifted(const Scalar& delta) const;

 private:
  Ifs ifs_;
  Breakpoints breaks_;
};

// phi_word = branch(w_n) . ... . branch(w_1); w_1 acts first.
AffineContraction compose(const Ifs& ifs, const ItineraryWord& word);

}  // namespace pcn
