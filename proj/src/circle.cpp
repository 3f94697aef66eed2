#include "pcn/circle.hpp"

#include <algorithm>
#include <cmath>

namespace pcn {

namespace {

Scalar floor_scalar(const Scalar& x) {
  if (x.is_exact()) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.rat().get_num().get_mpz_t(),
               x.rat().get_den().get_mpz_t());
    return Scalar::exact(mpq_class(q));
  }
  return Scalar::real(std::floor(x.to_double()));
}

}  // namespace

Scalar frac_part(const Scalar& x) {
  Scalar f = x - floor_scalar(x);
  if (!f.is_exact()) {
    double d = f.to_double();
    if (d >= 1.0) d -= 1.0;  // rounding can land exactly on 1
    if (d < 0.0) d += 1.0;
    return Scalar::real(d);
  }
  return f;
}

CircleAffineMap::CircleAffineMap(Scalar lambda, std::vector<Scalar> cuts,
                                 std::vector<Scalar> intercepts)
    : lambda_(std::move(lambda)),
      cuts_(std::move(cuts)),
      intercepts_(std::move(intercepts)) {
  Backend b = lambda_.backend();
  if (!(lambda_.abs() < Scalar::one(b)))
    throw ValidationError("circle map needs |lambda| < 1");
  if (intercepts_.empty()) throw ValidationError("need at least one intercept");
  if (intercepts_.size() != cuts_.size() + 1)
    throw ValidationError("intercept count must be cut count plus one");
  Scalar zero = Scalar::zero(b), one = Scalar::one(b);
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (cuts_[i].backend() != b || intercepts_[i].backend() != b)
      throw std::logic_error("circle map mixes backends");
    if (!(zero < cuts_[i]) || cuts_[i].eq(zero) || !(cuts_[i] < one) ||
        cuts_[i].eq(one))
      throw ValidationError("interior breakpoints must lie strictly in (0,1)");
    if (i + 1 < cuts_.size() &&
        (!(cuts_[i] < cuts_[i + 1]) || cuts_[i].eq(cuts_[i + 1])))
      throw ValidationError("breakpoints must be strictly increasing");
  }
  if (intercepts_.back().backend() != b)
    throw std::logic_error("circle map mixes backends");
}

int CircleAffineMap::branch_index(const Scalar& x) const {
  Scalar y = frac_part(x);
  int idx = 1;
  for (std::size_t j = 0; j < cuts_.size(); ++j)
    if (!(y < cuts_[j])) idx = static_cast<int>(j) + 2;
  return idx;
}

Scalar CircleAffineMap::step(const Scalar& x) const {
  Scalar y = frac_part(x);
  int i = branch_index(y);
  return frac_part(lambda_ * y + intercepts_[static_cast<std::size_t>(i - 1)]);
}

CircleAffineMap CircleAffineMap::rotated(const Scalar& delta) const {
  std::vector<Scalar> b2;
  b2.reserve(intercepts_.size());
  for (const auto& b : intercepts_) b2.push_back(b + delta);
  return CircleAffineMap(lambda_, cuts_, std::move(b2));
}

GapInfo gap(const CircleAffineMap& f) {
  Backend bk = f.backend();
  if (f.lambda().sgn() == 0)
    throw ValidationError("lambda = 0 has no gap dynamics (image is finite)");
  Scalar zero = Scalar::zero(bk), one = Scalar::one(bk);

  // Closure of each arc's image, unrolled into segments of [0,1].
  std::vector<std::pair<Scalar, Scalar>> segs;
  for (int i = 1; i <= f.arcs(); ++i) {
    Scalar lo = i == 1 ? zero : f.cuts()[static_cast<std::size_t>(i - 2)];
    Scalar hi = i == f.arcs() ? one : f.cuts()[static_cast<std::size_t>(i - 1)];
    Scalar u = f.lambda() * lo + f.intercepts()[static_cast<std::size_t>(i - 1)];
    Scalar v = f.lambda() * hi + f.intercepts()[static_cast<std::size_t>(i - 1)];
    Scalar lo_img = u < v ? u : v;
    Scalar len = (v - u).abs();
    Scalar s = frac_part(lo_img);
    Scalar e = s + len;
    if (e > one && !e.eq(one)) {
      segs.emplace_back(s, one);
      segs.emplace_back(zero, e - one);
    } else {
      segs.emplace_back(s, e);
    }
  }
  std::sort(segs.begin(), segs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Scalar, Scalar>> merged;
  for (auto& s : segs) {
    if (!merged.empty() &&
        (s.first < merged.back().second || s.first.eq(merged.back().second))) {
      if (merged.back().second < s.second) merged.back().second = s.second;
    } else {
      merged.push_back(std::move(s));
    }
  }

  // Complementary arcs, including the wrap-around one.
  GapInfo gi;
  gi.image = merged;
  bool have = false;
  Scalar best_len = zero, best_mid = zero;
  auto consider = [&](const Scalar& glo, const Scalar& glen) {
    if (glen.sgn() <= 0 || glen.eq(zero)) return;
    Scalar mid = frac_part(glo + glen / Scalar::from_long(2, bk));
    bool better = false;
    if (!have)
      better = true;
    else if (glen.eq(best_len))
      better = mid < best_mid;
    else
      better = best_len < glen;
    if (better) {
      best_len = glen;
      best_mid = mid;
      have = true;
    }
  };
  for (std::size_t i = 0; i + 1 < merged.size(); ++i)
    consider(merged[i].second, merged[i + 1].first - merged[i].second);
  if (!merged.empty())
    consider(merged.back().second,
             merged.front().first + one - merged.back().second);
  if (!have) throw std::logic_error("contracting image left no gap");

  gi.c = best_mid;
  gi.ell = best_len / Scalar::from_long(2, bk);
  return gi;
}

Reduction reduce(const CircleAffineMap& f) {
  Backend bk = f.backend();
  if (f.lambda().sgn() == 0)
    throw ValidationError("lambda = 0: nothing to reduce (orbits are eventually periodic trivially)");
  GapInfo gi = gap(f);
  if (gi.ell.sgn() <= 0) throw ValidationError("gap has zero clearance");

  Scalar zero = Scalar::zero(bk), one = Scalar::one(bk);
  Scalar two = Scalar::from_long(2, bk);
  const Scalar& lam = f.lambda();
  const Scalar& c = gi.c;

  struct Piece {
    Scalar lo, hi, intercept;
  };
  std::vector<Piece> pieces;

  for (int i = 1; i <= f.arcs(); ++i) {
    Scalar alo = i == 1 ? zero : f.cuts()[static_cast<std::size_t>(i - 2)];
    Scalar ahi = i == f.arcs() ? one : f.cuts()[static_cast<std::size_t>(i - 1)];
    const Scalar& b = f.intercepts()[static_cast<std::size_t>(i - 1)];
    // x-intervals where {x+c} falls inside [alo, ahi): the unwrapped copy
    // (wrap = 0) and the shifted copy (wrap = 1), clipped to [0,1).
    for (int wrap = 0; wrap <= 1; ++wrap) {
      Scalar w = Scalar::from_long(wrap, bk);
      Scalar p = alo - c + w;
      Scalar q = ahi - c + w;
      if (p < zero) p = zero;
      if (one < q) q = one;
      if (!(p < q) || p.eq(q)) continue;
      Scalar base = lam * (c - w) + b - c;
      Scalar mid = (p + q) / two;
      Scalar val = lam * mid + base;
      Scalar w2 = floor_scalar(val);
      Piece pc{p, q, base - w2};
      Scalar v = lam * mid + pc.intercept;
      if (v.sgn() <= 0 || !(v < one))
        throw std::logic_error("reduced value escaped the unit interval");
      pieces.push_back(std::move(pc));
    }
  }

  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  if (pieces.empty() || !pieces.front().lo.eq(zero) || !pieces.back().hi.eq(one))
    throw std::logic_error("reduced pieces fail to cover [0,1)");
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
    if (!pieces[i].hi.eq(pieces[i + 1].lo))
      throw std::logic_error("reduced pieces fail to tile [0,1)");

  // Neighboring pieces can share the same affine formula (the fold undoes a
  // cut); merge them so the line map carries no spurious breakpoints.
  std::vector<Piece> dis;
  for (auto& pc : pieces) {
    if (!dis.empty() && dis.back().intercept.eq(pc.intercept))
      dis.back().hi = pc.hi;
    else
      dis.push_back(std::move(pc));
  }
  if (dis.size() == 1) {
    // Globally affine fold: split artificially so the line-map type (which
    // wants at least two branches) can represent it.
    Piece right = dis[0];
    Scalar half = (dis[0].lo + dis[0].hi) / two;
    dis[0].hi = half;
    right.lo = half;
    dis.push_back(right);
  }

  std::vector<AffineContraction> branches;
  std::vector<Scalar> breaks;
  for (std::size_t i = 0; i < dis.size(); ++i) {
    branches.emplace_back(lam, dis[i].intercept);
    if (i > 0) breaks.push_back(dis[i].lo);
  }

  Reduction red{std::move(gi),
                PiecewiseContraction(Ifs(std::move(branches)),
                                     Breakpoints(std::move(breaks))),
                one / (one - lam)};
  return red;
}

}  // namespace pcn
