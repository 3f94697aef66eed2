#include "pcn/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pcn/kernels.hpp"

namespace pcn {

namespace {

double resolved_tol(const ClassifyBudget& b) {
  return b.tol > 0 ? b.tol : tolerance();
}

double detection_eps(double tol, double lam_d) {
  return tol / std::max(1.0 - std::fabs(lam_d), 1e-18);
}

// Windowed cycle detection on a double shadow orbit, starting after `pos`
// steps were already taken. The anchor layout and the probe lengths depend
// only on the trajectory, never on the remaining budget, so a run with a
// larger budget replays a smaller one step for step; raising the budget can
// only turn Undecided into Periodic.
template <class StepFn, class VerifyFn>
Classification drive_tail(double x, long pos, const ClassifyBudget& budget,
                          double eps, StepFn&& dstep, VerifyFn&& verify) {
  Classification out;
  const long maxit = std::max<long>(budget.max_iterations, 0);
  const int cap = std::max(budget.period_cap, 1);
  const long window = 8L * cap + 64;

  while (pos < maxit) {
    const double anchor = x;
    bool detected = false;
    for (long s = 0; s < window && pos < maxit; ++s) {
      x = dstep(x);
      ++pos;
      if (std::fabs(x - anchor) <= eps) {
        detected = true;
        break;
      }
    }
    if (!detected) continue;  // re-anchor at the current point

    const double z = x;
    double probe = z;
    int found = 0;
    for (int p = 1; p <= cap && pos < maxit; ++p) {
      probe = dstep(probe);
      ++pos;
      if (std::fabs(probe - z) <= eps) {
        found = p;
        break;
      }
    }
    if (found == 0) {
      if (pos >= maxit) break;  // ran dry mid-probe
      x = probe;                // abandon this candidate, move on
      continue;
    }
    out.iterations_used = pos;
    if (verify(z, found, out)) {
      out.status = OrbitStatus::periodic;
      return out;
    }
    // A failed verification means the shadow lied at this tolerance; more
    // stepping would replay the same lie, so stop here.
    out.status = OrbitStatus::undecided;
    out.period = 0;
    out.cycle.clear();
    return out;
  }
  out.status = OrbitStatus::undecided;
  out.iterations_used = pos;
  return out;
}

template <class StepFn, class VerifyFn>
Classification drive(double x0, const ClassifyBudget& budget, double eps,
                     StepFn&& dstep, VerifyFn&& verify) {
  const long maxit = std::max<long>(budget.max_iterations, 0);
  const long t0 = std::min(std::max<long>(budget.transient_skip, 0), maxit);
  double x = x0;
  for (long i = 0; i < t0; ++i) x = dstep(x);
  return drive_tail(x, t0, budget, eps, std::forward<StepFn>(dstep),
                    std::forward<VerifyFn>(verify));
}

void rotate_min_first(std::vector<Scalar>& cycle) {
  if (cycle.empty()) return;
  auto it = std::min_element(cycle.begin(), cycle.end(),
                             [](const Scalar& a, const Scalar& b) { return a < b; });
  std::rotate(cycle.begin(), it, cycle.end());
}

// Walks the true map from the affine fixed point of the shadow's branch word
// and accepts the first return. Exact backend: exact equality, so a reported
// cycle really closes. Floating backend: closure within eps_v.
bool verify_line(const PiecewiseContraction& f, double z, int p, double eps_v,
                 Classification& out) {
  const kernels::BranchTable t = kernels::to_table(f);
  ItineraryWord w;
  double y = z;
  for (int i = 0; i < p; ++i) {
    w.symbols.push_back(kernels::branch_one(t, 0.0, y));
    y = kernels::step_one(t, 0.0, y);
  }
  Scalar zstar = compose(f.ifs(), w).fixed_point();
  const bool exact = f.backend() == Backend::exact;

  std::vector<Scalar> cycle;
  Scalar cur = zstar;
  for (int q = 1; q <= p; ++q) {
    cycle.push_back(cur);
    cur = f.step(cur).first;
    const bool closed = exact ? cur == zstar : cur.near(zstar, eps_v);
    if (closed) {
      rotate_min_first(cycle);
      out.period = q;
      out.cycle = std::move(cycle);
      return true;
    }
  }
  return false;
}

bool verify_circle(const CircleAffineMap& f, double z, int p, double eps_v,
                   Classification& out) {
  const Backend bk = f.backend();
  const double lam_d = f.lambda().to_double();
  const int k = f.arcs();
  std::vector<double> cuts_d, b_d;
  for (const auto& c : f.cuts()) cuts_d.push_back(c.to_double());
  for (const auto& b : f.intercepts()) b_d.push_back(b.to_double());

  // Shadow word: branch and winding number of each step.
  std::vector<int> branch(static_cast<std::size_t>(p));
  std::vector<long> wind(static_cast<std::size_t>(p));
  double y = z;
  for (int i = 0; i < p; ++i) {
    int idx = 1;
    for (int j = 0; j + 1 < k; ++j)
      if (y >= cuts_d[static_cast<std::size_t>(j)]) idx = j + 2;
    double v = lam_d * y + b_d[static_cast<std::size_t>(idx - 1)];
    double m = std::floor(v);
    y = v - m;
    if (y >= 1.0) {
      y -= 1.0;
      m += 1.0;
    }
    branch[static_cast<std::size_t>(i)] = idx;
    wind[static_cast<std::size_t>(i)] = static_cast<long>(m);
  }

  // Lift the word to an affine map on the line and take its fixed point.
  Scalar S = Scalar::one(bk), B = Scalar::zero(bk);
  for (int i = 0; i < p; ++i) {
    const Scalar& b = f.intercepts()[static_cast<std::size_t>(branch[static_cast<std::size_t>(i)] - 1)];
    B = f.lambda() * B + (b - Scalar::from_long(wind[static_cast<std::size_t>(i)], bk));
    S = f.lambda() * S;
  }
  Scalar zstar = B / (Scalar::one(bk) - S);
  if (zstar.sgn() < 0 || !(zstar < Scalar::one(bk))) return false;

  const bool exact = bk == Backend::exact;
  std::vector<Scalar> cycle;
  Scalar cur = zstar;
  for (int q = 1; q <= p; ++q) {
    cycle.push_back(cur);
    cur = f.step(cur);
    const bool closed = exact ? cur == zstar : cur.near(zstar, eps_v);
    if (closed) {
      rotate_min_first(cycle);
      out.period = q;
      out.cycle = std::move(cycle);
      return true;
    }
  }
  return false;
}

}  // namespace

const char* orbit_status_name(OrbitStatus s) {
  return s == OrbitStatus::periodic ? "periodic" : "undecided";
}

std::vector<Scalar> classify_starts(const PiecewiseContraction& f) {
  const Backend bk = f.backend();
  const Scalar two = Scalar::from_long(2, bk);
  const Scalar hi = two * f.ifs().radius();
  const Scalar lo = -hi;

  std::vector<Scalar> pts;
  pts.push_back(lo);
  for (int i = 0; i < f.breaks().size(); ++i) {
    Scalar a = f.breaks().at(i);
    if (a < lo) a = lo;
    if (hi < a) a = hi;
    pts.push_back(a);
  }
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Scalar& a, const Scalar& b) { return a.eq(b); }),
            pts.end());

  std::vector<Scalar> starts;
  starts.push_back(lo);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    starts.push_back((pts[i] + pts[i + 1]) / two);
  if (!hi.eq(lo)) starts.push_back(hi);
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end(),
                           [](const Scalar& a, const Scalar& b) { return a.eq(b); }),
               starts.end());
  return starts;
}

std::vector<Scalar> classify_starts(const CircleAffineMap& f) {
  const Backend bk = f.backend();
  const Scalar two = Scalar::from_long(2, bk);
  std::vector<Scalar> pts;
  pts.push_back(Scalar::zero(bk));
  for (const auto& c : f.cuts()) pts.push_back(c);
  pts.push_back(Scalar::one(bk));

  std::vector<Scalar> starts;
  starts.push_back(Scalar::zero(bk));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    starts.push_back((pts[i] + pts[i + 1]) / two);
  return starts;
}

namespace {

// Two verified cycles are the same orbit when the periods match and the
// minimal points agree (exactly, or within a fattened tolerance band).
int merge_orbits(const std::vector<Classification>& res, Backend bk,
                 double lam_d) {
  std::vector<std::pair<int, Scalar>> keys;
  const double band = 64.0 * detection_eps(tolerance(), lam_d);
  for (const auto& c : res) {
    if (c.status != OrbitStatus::periodic) continue;
    bool dup = false;
    for (const auto& k : keys) {
      if (k.first != c.period) continue;
      const bool same = bk == Backend::exact ? k.second == c.cycle.front()
                                             : k.second.near(c.cycle.front(), band);
      if (same) {
        dup = true;
        break;
      }
    }
    if (!dup) keys.emplace_back(c.period, c.cycle.front());
  }
  return static_cast<int>(keys.size());
}

template <class Map, class ClassifyFn>
MapClassification classify_from_starts(const Map& f, std::vector<Scalar> starts,
                                       const ClassifyBudget& budget,
                                       double lam_d, ClassifyFn&& one) {
  MapClassification mc;
  mc.starts = std::move(starts);
  mc.all_periodic = true;
  for (const auto& s : mc.starts) {
    Classification c = one(f, s, budget);
    mc.iterations_total += c.iterations_used;
    if (c.status != OrbitStatus::periodic) mc.all_periodic = false;
    mc.results.push_back(std::move(c));
  }
  mc.distinct_orbits = merge_orbits(mc.results, mc.starts.front().backend(), lam_d);
  return mc;
}

}  // namespace

Classification classify(const PiecewiseContraction& f, const Scalar& x0,
                        const ClassifyBudget& budget) {
  const kernels::BranchTable t = kernels::to_table(f);
  const double lam_d = f.ifs().lambda().to_double();
  const double eps = detection_eps(resolved_tol(budget), lam_d);
  auto dstep = [&t](double x) { return kernels::step_one(t, 0.0, x); };
  auto verify = [&](double z, int p, Classification& out) {
    return verify_line(f, z, p, eps, out);
  };
  return drive(x0.to_double(), budget, eps, dstep, verify);
}

Classification classify_resumed(const PiecewiseContraction& f, double x,
                                long pos, const ClassifyBudget& budget) {
  const kernels::BranchTable t = kernels::to_table(f);
  const double lam_d = f.ifs().lambda().to_double();
  const double eps = detection_eps(resolved_tol(budget), lam_d);
  auto dstep = [&t](double x0) { return kernels::step_one(t, 0.0, x0); };
  auto verify = [&](double z, int p, Classification& out) {
    return verify_line(f, z, p, eps, out);
  };
  return drive_tail(x, pos, budget, eps, dstep, verify);
}

Classification classify(const CircleAffineMap& f, const Scalar& x0,
                        const ClassifyBudget& budget) {
  const double lam_d = f.lambda().to_double();
  const int k = f.arcs();
  std::vector<double> cuts_d, b_d;
  for (const auto& c : f.cuts()) cuts_d.push_back(c.to_double());
  for (const auto& b : f.intercepts()) b_d.push_back(b.to_double());
  const double eps = detection_eps(resolved_tol(budget), lam_d);

  auto dstep = [&](double x) {
    int idx = 1;
    for (int j = 0; j + 1 < k; ++j)
      if (x >= cuts_d[static_cast<std::size_t>(j)]) idx = j + 2;
    double v = lam_d * x + b_d[static_cast<std::size_t>(idx - 1)];
    double y = v - std::floor(v);
    if (y >= 1.0) y -= 1.0;
    if (y < 0.0) y += 1.0;
    return y;
  };
  auto verify = [&](double z, int p, Classification& out) {
    return verify_circle(f, z, p, eps, out);
  };
  return drive(frac_part(x0).to_double(), budget, eps, dstep, verify);
}

MapClassification classify_map(const PiecewiseContraction& f,
                               const ClassifyBudget& budget) {
  return classify_from_starts(
      f, classify_starts(f), budget, f.ifs().lambda().to_double(),
      [](const PiecewiseContraction& m, const Scalar& s, const ClassifyBudget& b) {
        return classify(m, s, b);
      });
}

MapClassification classify_map(const CircleAffineMap& f,
                               const ClassifyBudget& budget) {
  return classify_from_starts(
      f, classify_starts(f), budget, f.lambda().to_double(),
      [](const CircleAffineMap& m, const Scalar& s, const ClassifyBudget& b) {
        return classify(m, s, b);
      });
}

CensusTable census(const Ifs& ifs, int instances, std::uint64_t seed,
                   const ClassifyBudget& budget) {
  if (instances <= 0) throw ValidationError("census needs a positive instance count");
  if (ifs.radius().sgn() == 0)
    throw ValidationError("census: invariant interval is a point, nowhere to place breakpoints");

  const Backend bk = ifs.backend();
  const int k = ifs.size();
  const double r2 = 2.0 * ifs.radius().to_double();
  const double width = 2.0 * r2;
  const double min_gap = 1e-9 * width;

  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  CensusTable table;
  table.seed = seed;
  table.instances = instances;

  for (int inst = 0; inst < instances; ++inst) {
    std::vector<double> a(static_cast<std::size_t>(k - 1));
    for (;;) {
      for (auto& v : a) v = -r2 + width * uniform();
      std::sort(a.begin(), a.end());
      bool ok = true;
      for (std::size_t j = 0; j + 1 < a.size(); ++j)
        if (a[j + 1] - a[j] < min_gap) ok = false;
      if (ok) break;
    }
    std::vector<Scalar> as;
    as.reserve(a.size());
    for (double v : a)
      as.push_back(bk == Backend::exact ? Scalar::exact(mpq_class(v)) : Scalar::real(v));

    PiecewiseContraction f(ifs, Breakpoints(as));
    MapClassification mc = classify_map(f, budget);

    CensusRow row;
    row.breakpoints = std::move(as);
    row.orbit_count = mc.distinct_orbits;
    row.all_periodic = mc.all_periodic;
    row.iterations = mc.iterations_total;
    for (const auto& c : mc.results)
      if (c.status == OrbitStatus::periodic) row.max_period = std::max(row.max_period, c.period);
    table.max_orbits = std::max(table.max_orbits, row.orbit_count);
    if (row.all_periodic) table.resolved_fraction += 1.0;
    table.rows.push_back(std::move(row));
  }
  table.resolved_fraction /= static_cast<double>(instances);
  return table;
}

}  // namespace pcn
