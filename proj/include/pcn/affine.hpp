#pragma once

// One-dimensional affine contractions x -> slope*x + intercept, |slope| < 1.

#include "pcn/scalar.hpp"

namespace pcn {

class AffineContraction {
 public:
  AffineContraction(Scalar slope, Scalar intercept)
      : slope_(std::move(slope)), intercept_(std::move(intercept)) {
    if (slope_.backend() != intercept_.backend())
      throw std::logic_error("affine map mixes backends");
    if (!(slope_.abs() < Scalar::one(slope_.backend())))
      throw ValidationError("affine map needs |slope| < 1, got " + slope_.str());
  }

  const Scalar& slope() const { return slope_; }
  const Scalar& intercept() const { return intercept_; }
  Backend backend() const { return slope_.backend(); }

  Scalar operator()(const Scalar& x) const { return slope_ * x + intercept_; }

  // Composition this . inner: apply inner first.
  AffineContraction after(const AffineContraction& inner) const {
    return AffineContraction(slope_ * inner.slope_,
                             slope_ * inner.intercept_ + intercept_);
  }

  // Unique fixed point intercept / (1 - slope).
  Scalar fixed_point() const {
    return intercept_ / (Scalar::one(backend()) - slope_);
  }

 private:
  Scalar slope_, intercept_;
};

}  // namespace pcn
