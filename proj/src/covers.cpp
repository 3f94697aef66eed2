#include "pcn/covers.hpp"

#include <cmath>

namespace pcn {

std::vector<WordCenter> omega_centers(const PiecewiseContraction& f,
                                      const Scalar& epsilon, int n, int samples) {
  if (n < 1) throw ValidationError("depth must be >= 1");
  std::vector<WordCenter> out;
  Scalar zero = Scalar::zero(f.backend());
  for (auto& w : enlarged_itineraries(f, epsilon, n, samples)) {
    Scalar c = compose(f.ifs(), w)(zero);
    out.push_back({std::move(w), std::move(c)});
  }
  return out;  // already sorted by word
}

CoverCertificate cover_certificate(const PiecewiseContraction& f,
                                   const Scalar& epsilon, double dimension, int n,
                                   int samples) {
  if (!(dimension > 0)) throw ValidationError("dimension must be > 0");
  if (n < 1) throw ValidationError("depth must be >= 1");

  Backend b = f.backend();
  CoverCertificate cert;
  cert.depth = n;
  cert.epsilon = epsilon;
  cert.samples = samples;
  cert.dimension = dimension;
  cert.k = f.branches();
  cert.lambda = f.ifs().lambda();
  cert.radius_phi = f.ifs().radius();
  cert.centers = omega_centers(f, epsilon, n, samples);

  Scalar one = Scalar::one(b);
  Scalar two = Scalar::from_long(2, b);
  Scalar width = one + two * cert.radius_phi;  // 1 + 2r
  cert.radius = width * cert.lambda.pow_int(n);

  long words = static_cast<long>(cert.centers.size());
  long d_int = static_cast<long>(dimension);
  bool integer_d = dimension == static_cast<double>(d_int) && d_int >= 1;
  if (integer_d && b == Backend::exact) {
    Scalar bound = Scalar::from_long(cert.k - 1, b) * two.pow_int(d_int) *
                   width.pow_int(d_int) * Scalar::from_long(words, b) *
                   cert.lambda.pow_int(static_cast<long>(n) * d_int);
    cert.bound = bound;
    cert.exact_bound = true;
  } else {
    double bound = static_cast<double>(cert.k - 1) * std::pow(2.0, dimension) *
                   std::pow(width.to_double(), dimension) *
                   static_cast<double>(words) *
                   std::pow(cert.lambda.to_double(),
                            static_cast<double>(n) * dimension);
    cert.bound = Scalar::real(bound);
    cert.exact_bound = false;
  }
  return cert;
}

SeparationResult separation(const PiecewiseContraction& f, const Scalar& delta,
                            const Scalar& epsilon, int n, int samples) {
  if (n < 1) throw ValidationError("depth must be >= 1");
  SeparationResult res;
  res.delta_in_band = delta.abs() < epsilon;

  bool have = false;
  Scalar best = Scalar::zero(f.backend());
  for (int m = 1; m <= n; ++m) {
    for (const auto& wc : omega_centers(f, epsilon, m, samples)) {
      for (int i = 0; i < f.breaks().size(); ++i) {
        Scalar d = (f.breaks().at(i) + delta - wc.center).abs();
        if (!have || d < best) {
          best = d;
          have = true;
        }
      }
    }
  }
  res.tau = best;
  return res;
}

FinitenessVerdict finiteness_certificate(const PiecewiseContraction& f,
                                         const Scalar& delta, const Scalar& epsilon,
                                         int n_max, int samples, int guard_depth) {
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  if (guard_depth < 1) throw ValidationError("guard depth must be >= 1");

  Backend b = f.backend();
  FinitenessVerdict v;
  v.delta = delta;
  v.epsilon = epsilon;
  v.n_max = n_max;
  v.samples = samples;
  v.guard_depth = guard_depth;

  SeparationResult sep = separation(f, delta, epsilon, n_max, samples);
  v.tau = sep.tau;
  v.delta_in_band = sep.delta_in_band;
  v.singular_guard_ok =
      !find_singular_connection(f.ifs(), f.breaks(), guard_depth).has_value();

  bool tau_positive = b == Backend::exact ? v.tau.sgn() > 0
                                          : v.tau.to_double() > tolerance();
  if (tau_positive) {
    Scalar two_r = Scalar::from_long(2, b) * f.ifs().radius();
    Scalar pw = Scalar::one(b);
    for (int n = 1; n <= n_max; ++n) {
      pw = pw * f.ifs().lambda();
      if (two_r * pw < v.tau) {
        v.n_star = n;
        v.status = FinitenessStatus::certified_finite;
        break;
      }
    }
  }
  return v;
}

}  // namespace pcn
