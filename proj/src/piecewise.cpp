#include "pcn/piecewise.hpp"

namespace pcn {

Ifs::Ifs(std::vector<AffineContraction> branches)
    : branches_(std::move(branches)),
      lambda_(Scalar::exact(0)),
      radius_(Scalar::exact(0)) {
  if (branches_.size() < 2)
    throw ValidationError("need at least two branches");
  Backend b = branches_.front().backend();
  Scalar zero = Scalar::zero(b);
  Scalar lam = zero;
  Scalar zmax = zero;
  for (const auto& phi : branches_) {
    if (phi.backend() != b) throw std::logic_error("branches mix backends");
    if (phi.slope().sgn() == 0)
      throw ValidationError("zero slope breaks injectivity");
    if (lam < phi.slope().abs()) lam = phi.slope().abs();
    Scalar z = phi.fixed_point().abs();
    if (zmax < z) zmax = z;
  }
  lambda_ = lam;
  Scalar one = Scalar::one(b);
  radius_ = (one + lam) / (one - lam) * zmax;
}

const AffineContraction& Ifs::branch(int i) const {
  if (i < 1 || i > size()) throw std::logic_error("branch index out of range");
  return branches_[static_cast<std::size_t>(i - 1)];
}

std::pair<Scalar, Scalar> Ifs::attractor() const {
  Scalar two = Scalar::from_long(2, backend());
  return {-(two * radius_), two * radius_};
}

Breakpoints::Breakpoints(std::vector<Scalar> points) : points_(std::move(points)) {
  if (points_.empty()) throw ValidationError("need at least one breakpoint");
  Backend b = points_.front().backend();
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    if (points_[i + 1].backend() != b)
      throw std::logic_error("breakpoints mix backends");
    if (!(points_[i] < points_[i + 1]) || points_[i].eq(points_[i + 1]))
      throw ValidationError("breakpoints must be strictly increasing");
  }
}

const Scalar& Breakpoints::at(int i) const {
  if (i < 0 || i >= size()) throw std::logic_error("breakpoint index out of range");
  return points_[static_cast<std::size_t>(i)];
}

Breakpoints Breakpoints::shifted(const Scalar& delta) const {
  std::vector<Scalar> p;
  p.reserve(points_.size());
  for (const auto& a : points_) p.push_back(a + delta);
  return Breakpoints(std::move(p));
}

PiecewiseContraction::PiecewiseContraction(Ifs ifs, Breakpoints breaks)
    : ifs_(std::move(ifs)), breaks_(std::move(breaks)) {
  if (breaks_.size() != ifs_.size() - 1)
    throw ValidationError("breakpoint count must be branch count minus one");
  if (breaks_.backend() != ifs_.backend())
    throw std::logic_error("breakpoints and branches mix backends");
}

int PiecewiseContraction::branch_index(const Scalar& x) const {
  int idx = 1;
  for (int j = 0; j < breaks_.size(); ++j)
    if (!(x < breaks_.at(j))) idx = j + 2;
  return idx;
}

std::pair<Scalar, int> PiecewiseContraction::step(const Scalar& x) const {
  int b = branch_index(x);
  return {ifs_.branch(b)(x), b};
}

std::vector<OrbitPoint> PiecewiseContraction::orbit(const Scalar& x0, int n) const {
  std::vector<OrbitPoint> out;
  out.reserve(static_cast<std::size_t>(n < 0 ? 0 : n));
  Scalar x = x0;
  for (int j = 0; j < n; ++j) {
    auto [y, b] = step(x);
    out.push_back({y, b});
    x = y;
  }
  return out;
}

ItineraryWord PiecewiseContraction::itinerary(const Scalar& x0, int n) const {
  ItineraryWord w;
  w.symbols.reserve(static_cast<std::size_t>(n < 0 ? 0 : n));
  Scalar x = x0;
  for (int j = 0; j < n; ++j) {
    auto [y, b] = step(x);
    w.symbols.push_back(b);
    x = y;
  }
  return w;
}

PiecewiseContraction PiecewiseContraction::shifted(const Scalar& delta) const {
  return PiecewiseContraction(ifs_, breaks_.shifted(delta));
}

AffineContraction compose(const Ifs& ifs, const ItineraryWord& word) {
  if (word.symbols.empty())
    throw ValidationError("cannot compose the empty word");
  for (int s : word.symbols)
    if (s < 1 || s > ifs.size())
      throw ValidationError("word symbol out of range");
  AffineContraction acc = ifs.branch(word.symbols.front());
  for (std::size_t j = 1; j < word.symbols.size(); ++j)
    acc = ifs.branch(word.symbols[j]).after(acc);
  return acc;
}

}  // namespace pcn
