#include "pcn/scan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <thread>

#include "pcn/kernels.hpp"

namespace pcn {

namespace {

// Both sides of the band run through a reduction whose validity covers the
// requested offset: deltas in [0, ell) use reduce(f) directly, negative ones
// are reached from the -ell rotation, where t = delta + ell lies in (0, ell).
struct Bases {
  Reduction pos, neg;
  Scalar ell;
};

Bases make_bases(const CircleAffineMap& f) {
  Reduction pos = reduce(f);
  Scalar ell = pos.gap.ell;
  Reduction neg = reduce(f.rotated(-ell));
  return Bases{std::move(pos), std::move(neg), std::move(ell)};
}

// Classifies one delta through the appropriate base. The shadow transient is
// advanced for all starts in one batch; per-start detection then resumes at
// the exact same position a plain classify() would reach.
DeltaResult classify_delta(const Bases& bases, const Scalar& delta,
                           const ClassifyBudget& budget) {
  const bool negative = delta.sgn() < 0;
  const Reduction& base = negative ? bases.neg : bases.pos;
  const Scalar t = negative ? delta + bases.ell : delta;
  const Scalar lane_shift = -t * base.shift_factor;

  PiecewiseContraction lane = base.line_map.shifted(lane_shift);
  std::vector<Scalar> starts = classify_starts(lane);

  const kernels::BranchTable table = kernels::to_table(lane);
  std::vector<double> xs, shifts(starts.size(), 0.0);
  xs.reserve(starts.size());
  for (const auto& s : starts) xs.push_back(s.to_double());

  const long maxit = std::max<long>(budget.max_iterations, 0);
  const long t0 = std::min(std::max<long>(budget.transient_skip, 0), maxit);
  kernels::step_batch(table, shifts, xs,
                      static_cast<int>(std::min<long>(t0, 1 << 30)));

  DeltaResult out;
  out.delta = delta;
  out.status = OrbitStatus::periodic;
  for (std::size_t j = 0; j < starts.size(); ++j) {
    Classification c = classify_resumed(lane, xs[j], t0, budget);
    if (c.status != OrbitStatus::periodic) out.status = OrbitStatus::undecided;
    out.period = std::max(out.period, c.period);
    out.iterations = std::max(out.iterations, c.iterations_used);
  }
  return out;
}

std::vector<FlaggedInterval> collect_flagged(const std::vector<DeltaResult>& rs) {
  std::vector<FlaggedInterval> out;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].status != OrbitStatus::undecided) continue;
    std::size_t j = i;
    while (j + 1 < rs.size() && rs[j + 1].status == OrbitStatus::undecided) ++j;
    out.push_back(FlaggedInterval{rs[i].delta, rs[j].delta});
    i = j;
  }
  return out;
}

void run_chunked(long n, int threads, const std::function<void(long, long)>& work) {
  if (threads <= 1 || n < 2) {
    work(0, n);
    return;
  }
  const int used = static_cast<int>(std::min<long>(threads, n));
  std::vector<std::thread> pool;
  const long chunk = (n + used - 1) / used;
  for (int t = 0; t < used; ++t) {
    const long lo = t * chunk;
    const long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&work, lo, hi] { work(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

ScanReport scan(const CircleAffineMap& f, long grid,
                const ClassifyBudget& budget, int threads) {
  if (grid < 1) throw ValidationError("scan needs at least one grid point");
  const Backend bk = f.backend();
  Bases bases = make_bases(f);

  ScanReport rep;
  rep.c = bases.pos.gap.c;
  rep.ell = bases.ell;
  rep.delta0 = -bases.ell;
  rep.grid = grid;
  rep.threads = std::max(1, threads);
  rep.budget = budget;
  const Scalar two = Scalar::from_long(2, bk);
  rep.spacing = two * bases.ell / Scalar::from_long(grid + 1, bk);

  rep.results.resize(static_cast<std::size_t>(grid));
  run_chunked(grid, rep.threads, [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      Scalar delta = -bases.ell + rep.spacing * Scalar::from_long(i + 1, bk);
      rep.results[static_cast<std::size_t>(i)] =
          classify_delta(bases, delta, budget);
    }
  });

  rep.flagged = collect_flagged(rep.results);
  long undecided = 0;
  for (const auto& r : rep.results)
    if (r.status == OrbitStatus::undecided) ++undecided;
  rep.flagged_fraction = static_cast<double>(undecided) / static_cast<double>(grid);
  return rep;
}

BoxDimFit box_dimension(const std::vector<double>& points,
                        const std::vector<double>& scales) {
  BoxDimFit fit;
  if (points.empty()) return fit;

  std::vector<std::pair<double, double>> samples;  // (log 1/s, log N)
  std::vector<double> ss = scales;
  std::sort(ss.begin(), ss.end());
  ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
  for (double s : ss) {
    if (!(s > 0.0) || !std::isfinite(s)) continue;
    std::set<long long> boxes;
    for (double p : points)
      boxes.insert(static_cast<long long>(std::floor(p / s)));
    samples.emplace_back(std::log(1.0 / s),
                         std::log(static_cast<double>(boxes.size())));
  }
  fit.scales_used = static_cast<int>(samples.size());
  if (samples.size() < 2) return fit;

  double mx = 0, my = 0;
  for (auto& [x, y] : samples) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(samples.size());
  my /= static_cast<double>(samples.size());
  double sxx = 0, sxy = 0;
  for (auto& [x, y] : samples) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx <= 0) return fit;
  fit.slope = sxy / sxx;
  fit.degenerate = false;
  return fit;
}

RefineReport refine_and_boxdim(const CircleAffineMap& f, long grid,
                               const ClassifyBudget& budget, int levels,
                               const std::vector<double>& scales, int threads) {
  RefineReport out;
  out.base = scan(f, grid, budget, threads);
  out.levels = std::max(0, levels);
  const Backend bk = f.backend();
  const double ell_d = out.base.ell.to_double();

  std::vector<double> pts;
  for (const auto& r : out.base.results)
    if (r.status == OrbitStatus::undecided) pts.push_back(r.delta.to_double());

  Bases bases = make_bases(f);
  double h = out.base.spacing.to_double();
  for (int level = 0; level < out.levels && !pts.empty(); ++level) {
    std::vector<double> cand;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const bool run_start = i == 0 || pts[i] - pts[i - 1] > 1.5 * h;
      const bool run_end = i + 1 == pts.size() || pts[i + 1] - pts[i] > 1.5 * h;
      if (run_start) cand.push_back(pts[i] - 0.5 * h);
      if (!run_end) cand.push_back(0.5 * (pts[i] + pts[i + 1]));
      if (run_end) cand.push_back(pts[i] + 0.5 * h);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    cand.erase(std::remove_if(cand.begin(), cand.end(),
                              [&](double p) { return !(p > -ell_d && p < ell_d); }),
               cand.end());

    std::vector<char> keep(cand.size(), 0);
    run_chunked(static_cast<long>(cand.size()), std::max(1, threads),
                [&](long lo, long hi) {
                  for (long i = lo; i < hi; ++i) {
                    const double p = cand[static_cast<std::size_t>(i)];
                    Scalar delta = bk == Backend::exact
                                       ? Scalar::exact(mpq_class(p))
                                       : Scalar::real(p);
                    DeltaResult r = classify_delta(bases, delta, budget);
                    keep[static_cast<std::size_t>(i)] =
                        r.status == OrbitStatus::undecided;
                  }
                });
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (keep[i]) pts.push_back(cand[i]);
    std::sort(pts.begin(), pts.end());
    h *= 0.5;
  }

  out.flagged_points = pts;
  out.fit = box_dimension(pts, scales);
  return out;
}

}  // namespace pcn
