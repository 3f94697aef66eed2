#include "pcn/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pcn {

namespace {

void sort_dedup(std::vector<Scalar>& v) {
  std::sort(v.begin(), v.end());
  std::vector<Scalar> out;
  out.reserve(v.size());
  for (auto& x : v)
    if (out.empty() || !out.back().eq(x)) out.push_back(std::move(x));
  v = std::move(out);
}

bool in_breakpoint_set(const PiecewiseContraction& f, const Scalar& x) {
  for (int j = 0; j < f.breaks().size(); ++j)
    if (x.eq(f.breaks().at(j))) return true;
  return false;
}

// Closure of branch i's cell: [a_{i-1}, a_i] with the outer cells unbounded.
bool in_closed_cell(const PiecewiseContraction& f, int i, const Scalar& x) {
  const auto& br = f.breaks();
  if (i > 1) {
    const Scalar& lo = br.at(i - 2);
    if (x < lo && !x.eq(lo)) return false;
  }
  if (i < f.branches()) {
    const Scalar& hi = br.at(i - 1);
    if (x > hi && !x.eq(hi)) return false;
  }
  return true;
}

std::vector<Scalar> preimages_closed(const PiecewiseContraction& f,
                                     const std::vector<Scalar>& targets) {
  std::vector<Scalar> out;
  for (const auto& t : targets) {
    for (int i = 1; i <= f.branches(); ++i) {
      const auto& phi = f.ifs().branch(i);
      Scalar x = (t - phi.intercept()) / phi.slope();
      if (in_closed_cell(f, i, x)) out.push_back(std::move(x));
    }
  }
  sort_dedup(out);
  return out;
}

// Uniform grid on [-eps, eps] that always contains both endpoints and 0.
std::vector<Scalar> delta_grid(const Scalar& eps, int samples, Backend b) {
  std::vector<Scalar> g;
  if (eps.sgn() == 0) {
    g.push_back(Scalar::zero(b));
    return g;
  }
  g.push_back(-eps);
  g.push_back(Scalar::zero(b));
  g.push_back(eps);
  if (samples > 2) {
    Scalar den = Scalar::from_long(samples - 1, b);
    Scalar two = Scalar::from_long(2, b);
    for (int i = 1; i + 1 < samples; ++i)
      g.push_back(-eps + two * eps * Scalar::from_long(i, b) / den);
  }
  sort_dedup(g);
  return g;
}

}  // namespace

std::vector<Scalar> PreimageSet::q_all() const {
  std::vector<Scalar> all;
  for (const auto& layer : layers)
    all.insert(all.end(), layer.begin(), layer.end());
  sort_dedup(all);
  return all;
}

bool PreimageSet::layers_disjoint() const {
  for (std::size_t i = 0; i < layers.size(); ++i)
    for (std::size_t j = i + 1; j < layers.size(); ++j)
      for (const auto& x : layers[i])
        for (const auto& y : layers[j])
          if (x.eq(y)) return false;
  return true;
}

std::vector<Scalar> preimage_points(const PiecewiseContraction& f,
                                    const std::vector<Scalar>& targets) {
  std::vector<Scalar> out;
  for (const auto& t : targets) {
    for (int i = 1; i <= f.branches(); ++i) {
      const auto& phi = f.ifs().branch(i);
      Scalar x = (t - phi.intercept()) / phi.slope();
      if (f.branch_index(x) == i) out.push_back(std::move(x));
    }
  }
  sort_dedup(out);
  return out;
}

PreimageSet q_set(const PiecewiseContraction& f, int n) {
  if (n < 1) throw ValidationError("depth must be >= 1");
  PreimageSet ps;
  ps.depth = n;
  ps.layers.push_back(f.breaks().points());
  for (int j = 1; j < n; ++j)
    ps.layers.push_back(preimages_closed(f, ps.layers.back()));
  return ps;
}

bool is_regular(const PiecewiseContraction& f, const Scalar& x, int n) {
  if (n < 1) throw ValidationError("depth must be >= 1");
  Scalar y = x;
  for (int j = 0; j < n; ++j) {
    if (in_breakpoint_set(f, y)) return false;
    y = f.step(y).first;
  }
  return true;
}

std::vector<RegularCell> enumerate_itineraries(const PiecewiseContraction& f, int n) {
  return enumerate_itineraries(f, n, q_set(f, n));
}

std::vector<RegularCell> enumerate_itineraries(const PiecewiseContraction& f, int n,
                                               const PreimageSet& pre) {
  if (n < 1) throw ValidationError("depth must be >= 1");
  if (pre.depth < n) throw std::logic_error("preimage set shallower than requested depth");
  auto [klo, khi] = f.ifs().attractor();
  std::vector<RegularCell> cells;

  if (khi.eq(klo)) {
    // Degenerate attractor: a single point. It is its own cell when regular.
    if (is_regular(f, klo, n))
      cells.push_back({klo, khi, f.itinerary(klo, n)});
    return cells;
  }

  std::vector<Scalar> cuts;
  for (int j = 0; j < n; ++j)
    for (const auto& p : pre.layers[static_cast<std::size_t>(j)])
      if (klo < p && p < khi && !p.eq(klo) && !p.eq(khi)) cuts.push_back(p);
  sort_dedup(cuts);

  std::vector<Scalar> bounds;
  bounds.reserve(cuts.size() + 2);
  bounds.push_back(klo);
  for (auto& c : cuts) bounds.push_back(std::move(c));
  bounds.push_back(khi);

  Scalar two = Scalar::from_long(2, f.backend());
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const Scalar& lo = bounds[i];
    const Scalar& hi = bounds[i + 1];
    if (hi < lo || lo.eq(hi)) continue;
    Scalar mid = (lo + hi) / two;
    cells.push_back({lo, hi, f.itinerary(mid, n)});
  }
  return cells;
}

std::vector<ItineraryWord> enlarged_itineraries(const PiecewiseContraction& f,
                                                const Scalar& epsilon, int n,
                                                int samples) {
  if (samples < 1) throw ValidationError("samples must be >= 1");
  if (epsilon.sgn() < 0) throw ValidationError("epsilon must be >= 0");
  std::set<ItineraryWord> words;
  for (const auto& d : delta_grid(epsilon, samples, f.backend()))
    for (auto& cell : enumerate_itineraries(f.shifted(d), n))
      words.insert(std::move(cell.word));
  return {words.begin(), words.end()};
}

namespace {

// Depth-first search state for the singular-connection scan. Images of all
// breakpoints advance together; double arithmetic with a rigorous error
// envelope filters candidates, and exact arithmetic confirms survivors when
// the map is exact.
struct ConnectionSearch {
  const Ifs* ifs;
  const Breakpoints* breaks;
  int k;
  std::vector<double> slope_d, icpt_d, a_d;
  double err_envelope;  // |double image - true image| is below this, always
  bool exact;
  double tol;
  std::vector<int> word;
  std::optional<SingularConnectionWitness> hit;

  bool confirm(int i, int j) {
    ItineraryWord w{word};
    const Scalar& ai = breaks->at(i - 1);
    const Scalar& aj = breaks->at(j - 1);
    Scalar val = compose(*ifs, w)(ai);
    if (exact ? val == aj : val.eq(aj)) {
      hit = SingularConnectionWitness{std::move(w), i, j, std::move(val)};
      return true;
    }
    return false;
  }

  bool test_leaf(const std::vector<double>& img) {
    for (int i = 1; i < k; ++i) {
      for (int j = 1; j < k; ++j) {
        double d = img[static_cast<std::size_t>(i - 1)] - a_d[static_cast<std::size_t>(j - 1)];
        if (d < 0) d = -d;
        if (exact) {
          if (d <= err_envelope && confirm(i, j)) return true;
        } else {
          if (d <= tol && confirm(i, j)) return true;
        }
      }
    }
    return false;
  }

  bool dfs(int depth_left, const std::vector<double>& img) {
    if (depth_left == 0) return test_leaf(img);
    std::vector<double> next(img.size());
    for (int s = 1; s <= k; ++s) {
      const double sl = slope_d[static_cast<std::size_t>(s - 1)];
      const double ic = icpt_d[static_cast<std::size_t>(s - 1)];
      for (std::size_t t = 0; t < img.size(); ++t) next[t] = sl * img[t] + ic;
      word.push_back(s);
      if (dfs(depth_left - 1, next)) return true;
      word.pop_back();
    }
    return false;
  }
};

}  // namespace

std::optional<SingularConnectionWitness> find_singular_connection(
    const Ifs& ifs, const Breakpoints& breaks, int depth) {
  if (depth < 1) throw ValidationError("depth must be >= 1");
  if (breaks.size() != ifs.size() - 1)
    throw ValidationError("breakpoint count must be branch count minus one");

  ConnectionSearch cs;
  cs.ifs = &ifs;
  cs.breaks = &breaks;
  cs.k = ifs.size();
  cs.exact = ifs.backend() == Backend::exact;
  cs.tol = tolerance();
  double max_abs = 1.0;
  for (int i = 1; i <= cs.k; ++i) {
    cs.slope_d.push_back(ifs.branch(i).slope().to_double());
    cs.icpt_d.push_back(ifs.branch(i).intercept().to_double());
    max_abs = std::max(max_abs, std::fabs(cs.icpt_d.back()));
  }
  for (int j = 0; j < breaks.size(); ++j) {
    cs.a_d.push_back(breaks.at(j).to_double());
    max_abs = std::max(max_abs, std::fabs(cs.a_d.back()));
  }
  double lam = std::min(ifs.lambda().to_double() + 1e-12, 1.0 - 1e-9);
  // Values stay below max(|a_i|, |b_i|/(1-lam)); one step adds at most
  // 4*eps*M of rounding, contracted by lam afterwards.
  double M = max_abs / (1.0 - lam) + 1.0;
  double eps = 0x1p-52;
  cs.err_envelope = 8.0 * (M * eps + 4.0 * eps * M / (1.0 - lam));

  std::vector<double> img0(cs.a_d.begin(), cs.a_d.end());
  for (int level = 1; level <= depth; ++level) {
    cs.word.clear();
    if (cs.dfs(level, img0)) return cs.hit;
  }
  return std::nullopt;
}

namespace {

std::vector<long> cell_counts_by_depth(const PiecewiseContraction& f, int n_max,
                                       std::set<ItineraryWord>* word_sets) {
  PreimageSet pre = q_set(f, n_max);
  std::vector<long> counts;
  counts.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    auto cells = enumerate_itineraries(f, n, pre);
    counts.push_back(static_cast<long>(cells.size()));
    if (word_sets)
      for (auto& c : cells) word_sets[n - 1].insert(std::move(c.word));
  }
  return counts;
}

}  // namespace

GrowthTable growth_table(const PiecewiseContraction& f, int n_max,
                         const Scalar& epsilon, int samples) {
  if (n_max < 2) throw ValidationError("n_max must be >= 2");
  if (samples < 1) throw ValidationError("samples must be >= 1");
  if (epsilon.sgn() < 0) throw ValidationError("epsilon must be >= 0");

  GrowthTable gt;
  gt.epsilon = epsilon;
  gt.samples = samples;

  std::vector<long> base = cell_counts_by_depth(f, n_max, nullptr);
  std::vector<long> enlarged = base;
  if (epsilon.sgn() > 0) {
    std::vector<std::set<ItineraryWord>> sets(static_cast<std::size_t>(n_max));
    for (const auto& d : delta_grid(epsilon, samples, f.backend()))
      cell_counts_by_depth(f.shifted(d), n_max, sets.data());
    for (int n = 1; n <= n_max; ++n)
      enlarged[static_cast<std::size_t>(n - 1)] =
          static_cast<long>(sets[static_cast<std::size_t>(n - 1)].size());
  }

  for (int n = 1; n <= n_max; ++n) {
    GrowthRow row;
    row.depth = n;
    row.count = base[static_cast<std::size_t>(n - 1)];
    row.enlarged_count = enlarged[static_cast<std::size_t>(n - 1)];
    long alpha = epsilon.sgn() > 0 ? row.enlarged_count : row.count;
    row.log_rate = alpha > 0 ? std::log(static_cast<double>(alpha)) / n : 0.0;
    gt.rows.push_back(row);
  }
  return gt;
}

DoublingReport check_doubling(const PiecewiseContraction& f, const Scalar& epsilon,
                              double rho, int n_max, int samples, int guard_depth) {
  if (!(rho > 1.0)) throw ValidationError("rho must be > 1");
  if (n_max < 2) throw ValidationError("n_max must be >= 2");
  if (samples < 1) throw ValidationError("samples must be >= 1");
  if (epsilon.sgn() < 0) throw ValidationError("epsilon must be >= 0");
  if (guard_depth < 1) throw ValidationError("guard depth must be >= 1");

  Backend b = f.backend();
  DoublingReport rep;
  rep.rho = rho;
  rep.epsilon = epsilon;
  rep.samples = samples;
  rep.guard_depth = guard_depth;
  rep.tau = Scalar::zero(b);
  rep.stable_band = Scalar::zero(b);

  rep.singular_guard_ok = !find_singular_connection(f.ifs(), f.breaks(), guard_depth);
  if (!rep.singular_guard_ok) return rep;

  // Smallest m with rho^m >= 2 (equals ceil(log 2 / log rho)).
  int m = 0;
  for (double p = 1.0; p < 2.0 - 1e-12; p *= rho) ++m;
  rep.m = m;

  auto grid = delta_grid(epsilon, samples, b);
  int pre_depth = std::max(m, n_max);

  bool have_tau = false;
  Scalar tau = Scalar::zero(b);
  std::vector<long> qm_counts(grid.size(), 0);
  std::vector<std::set<ItineraryWord>> sets(static_cast<std::size_t>(n_max));
  std::vector<long> base;

  // Only preimage points inside the invariant interval matter: orbits are
  // absorbed into it, so gaps between stray outside points never separate
  // anything and would only deflate tau.
  auto [klo, khi] = f.ifs().attractor();

  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    PiecewiseContraction fd = f.shifted(grid[gi]);
    PreimageSet pre = q_set(fd, pre_depth);
    std::vector<Scalar> qm;
    for (int j = 0; j < m; ++j)
      for (const auto& p : pre.layers[static_cast<std::size_t>(j)])
        if (!(p < klo) && !(khi < p)) qm.push_back(p);
    sort_dedup(qm);
    qm_counts[gi] = static_cast<long>(qm.size());
    for (std::size_t t = 0; t + 1 < qm.size(); ++t) {
      Scalar gap = qm[t + 1] - qm[t];
      if (!have_tau || gap < tau) {
        tau = gap;
        have_tau = true;
      }
    }
    for (int n = 1; n <= n_max; ++n)
      for (auto& c : enumerate_itineraries(fd, n, pre))
        sets[static_cast<std::size_t>(n - 1)].insert(std::move(c.word));
    if (grid[gi].sgn() == 0)
      base = cell_counts_by_depth(fd, n_max, nullptr);
  }

  rep.tau_finite = have_tau;
  if (have_tau) rep.tau = tau;

  for (int n = 1; n <= n_max; ++n)
    rep.alpha.push_back(epsilon.sgn() > 0
                            ? static_cast<long>(sets[static_cast<std::size_t>(n - 1)].size())
                            : base[static_cast<std::size_t>(n - 1)]);

  // Empirical stability band: the widest grid |delta| over which #Q^(m)
  // matches its value at delta = 0.
  long count0 = 0;
  for (std::size_t gi = 0; gi < grid.size(); ++gi)
    if (grid[gi].sgn() == 0) count0 = qm_counts[gi];
  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return grid[x].abs() < grid[y].abs();
  });
  for (std::size_t oi : order) {
    if (qm_counts[oi] != count0) break;
    if (rep.stable_band < grid[oi].abs()) rep.stable_band = grid[oi].abs();
  }

  // First n0 with 4 * lambda^n0 * r < tau. Infinite tau: n0 = 0.
  const Scalar& lam = f.ifs().lambda();
  const Scalar& r = f.ifs().radius();
  Scalar four = Scalar::from_long(4, b);
  long n0_cap = std::max<long>(n_max, 64);
  if (!have_tau) {
    rep.n0_found = true;
    rep.n0 = 0;
  } else {
    Scalar pw = Scalar::one(b);
    for (long n = 0; n <= n0_cap; ++n) {
      if (four * pw * r < tau) {
        rep.n0_found = true;
        rep.n0 = n;
        break;
      }
      pw = pw * lam;
    }
  }

  if (!rep.n0_found) {
    rep.holds = false;  // n_max too small for the decay to beat tau
    return rep;
  }

  auto alpha_at = [&](long n) -> long {
    return n == 0 ? 1 : rep.alpha[static_cast<std::size_t>(n - 1)];
  };
  rep.checked_from = std::max<long>(rep.n0, 1);
  rep.checked_to = n_max - m;
  rep.holds = true;
  for (long n = rep.checked_from; n <= rep.checked_to; ++n)
    if (alpha_at(n + m) > 2 * alpha_at(n)) rep.holds = false;
  // C covers every residue class mod m at the base of the induction, so that
  // alpha_{n0+j+tm} <= 2^t alpha_{n0+j} <= C rho^{n0+j+tm} for all offsets j.
  double growth_c = 0.0;
  for (long j = 0; j < m && rep.n0 + j <= n_max; ++j)
    growth_c = std::max(growth_c,
                        std::pow(rho, -static_cast<double>(rep.n0 + j)) *
                            static_cast<double>(alpha_at(rep.n0 + j)));
  rep.growth_constant = growth_c;
  return rep;
}

}  // namespace pcn
