// Command-line front end. All map and command parameters come from a flat
// key = value config file; the command name picks the operation. Exit codes:
// 0 ok, 1 bad input, 2 certificate inconclusive, 3 internal failure.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pcn/config.hpp"
#include "pcn/covers.hpp"
#include "pcn/reports.hpp"
#include "pcn/scan.hpp"

namespace {

using namespace pcn;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file: " + path);
  f << text;
}

ClassifyBudget budget_from(const Config& cfg) {
  ClassifyBudget b;
  b.max_iterations = cfg.integer_or("budget.max_iterations", b.max_iterations);
  b.transient_skip = cfg.integer_or("budget.transient_skip", b.transient_skip);
  b.tol = cfg.number_or("budget.tol", b.tol);
  b.period_cap = static_cast<int>(cfg.integer_or("budget.period_cap", b.period_cap));
  return b;
}

const PiecewiseContraction& need_line(const LoadedMap& m, const char* cmd) {
  if (!m.line)
    throw ValidationError(std::string(cmd) + " needs a line map (map.slopes / map.intercepts / map.breakpoints)");
  return *m.line;
}

const CircleAffineMap& need_circle(const LoadedMap& m, const char* cmd) {
  if (!m.circle)
    throw ValidationError(std::string(cmd) + " needs a circle map (map.lambda / map.intercepts)");
  return *m.circle;
}

// A zero slope collapses every orbit onto finitely many points, so nothing
// can fail to be asymptotically periodic.
bool trivial_circle(const CircleAffineMap& f, const std::string& out_path) {
  if (f.lambda().sgn() != 0) return false;
  write_output(out_path, "exceptional set empty\n");
  return true;
}

int run_command(const std::string& cmd, const Config& cfg, Backend bk,
                const std::string& out_path, int threads) {
  const ClassifyBudget budget = budget_from(cfg);

  if (cmd == "classify") {
    LoadedMap m = load_map(cfg, bk);
    reports::json j;
    if (cfg.has("classify.x0")) {
      Scalar x0 = cfg.scalar("classify.x0", bk);
      Classification c = m.is_circle() ? classify(*m.circle, x0, budget)
                                       : classify(*m.line, x0, budget);
      j = reports::classification_json(c);
    } else {
      MapClassification mc = m.is_circle() ? classify_map(*m.circle, budget)
                                           : classify_map(*m.line, budget);
      j = reports::map_classification_json(mc);
    }
    write_output(out_path, j.dump(2) + "\n");
    return 0;
  }

  if (cmd == "itineraries") {
    LoadedMap m = load_map(cfg, bk);
    const auto& f = need_line(m, "itineraries");
    int depth = static_cast<int>(cfg.integer("itineraries.depth"));
    auto cells = enumerate_itineraries(f, depth);
    write_output(out_path, reports::cells_json(cells, depth).dump(2) + "\n");
    return 0;
  }

  if (cmd == "growth") {
    LoadedMap m = load_map(cfg, bk);
    const auto& f = need_line(m, "growth");
    int n_max = static_cast<int>(cfg.integer("growth.n_max"));
    Scalar eps = cfg.scalar_or("growth.epsilon", Scalar::zero(bk));
    int samples = static_cast<int>(cfg.integer_or("growth.samples", 3));
    GrowthTable t = growth_table(f, n_max, eps, samples);
    write_output(out_path, reports::growth_csv(t));
    return 0;
  }

  if (cmd == "singular") {
    LoadedMap m = load_map(cfg, bk);
    const auto& f = need_line(m, "singular");
    int depth = static_cast<int>(cfg.integer("singular.depth"));
    auto w = find_singular_connection(f.ifs(), f.breaks(), depth);
    write_output(out_path, reports::witness_json(w, depth).dump(2) + "\n");
    return 0;
  }

  if (cmd == "cover") {
    LoadedMap m = load_map(cfg, bk);
    const auto& f = need_line(m, "cover");
    Scalar eps = cfg.scalar_or("cover.epsilon", Scalar::zero(bk));
    double d = cfg.number("cover.d");
    int n = static_cast<int>(cfg.integer("cover.n"));
    int samples = static_cast<int>(cfg.integer_or("cover.samples", 3));
    CoverCertificate cert = cover_certificate(f, eps, d, n, samples);
    write_output(out_path, reports::cover_json(cert).dump(2) + "\n");
    return 0;
  }

  if (cmd == "certify") {
    LoadedMap m = load_map(cfg, bk);
    const auto& f = need_line(m, "certify");
    Scalar delta = cfg.scalar("certify.delta", bk);
    Scalar eps = cfg.scalar("certify.epsilon", bk);
    int n_max = static_cast<int>(cfg.integer_or("certify.n_max", 64));
    int samples = static_cast<int>(cfg.integer_or("certify.samples", 3));
    int guard = static_cast<int>(cfg.integer_or("certify.guard_depth", 8));
    FinitenessVerdict v = finiteness_certificate(f, delta, eps, n_max, samples, guard);
    write_output(out_path, reports::verdict_json(v).dump(2) + "\n");
    return v.status == FinitenessStatus::certified_finite ? 0 : 2;
  }

  if (cmd == "scan") {
    LoadedMap m = load_map(cfg, bk);
    const auto& f = need_circle(m, "scan");
    if (trivial_circle(f, out_path)) return 0;
    long grid = cfg.integer("scan.grid");
    int levels = static_cast<int>(cfg.integer_or("scan.refine_levels", 0));

    if (levels > 0) {
      std::vector<double> scales = cfg.number_list_or("scan.scales", {});
      if (scales.empty()) {
        const double h = gap(f).ell.to_double() * 2.0 / static_cast<double>(grid + 1);
        for (int i = 0; i < 5; ++i) scales.push_back(h * static_cast<double>(1 << i));
      }
      RefineReport rr = refine_and_boxdim(f, grid, budget, levels, scales, threads);
      write_output(out_path, reports::scan_csv(rr.base));
      if (!out_path.empty()) {
        auto side = reports::scan_sidecar_json(rr.base, &rr.fit, &rr.flagged_points);
        write_output(out_path + ".json", side.dump(2) + "\n");
      }
      return 0;
    }

    ScanReport rep = scan(f, grid, budget, threads);
    write_output(out_path, reports::scan_csv(rep));
    if (!out_path.empty()) {
      auto side = reports::scan_sidecar_json(rep, nullptr, nullptr);
      write_output(out_path + ".json", side.dump(2) + "\n");
    }
    return 0;
  }

  if (cmd == "reduce") {
    LoadedMap m = load_map(cfg, bk);
    const auto& f = need_circle(m, "reduce");
    if (trivial_circle(f, out_path)) return 0;
    Reduction red = reduce(f);
    write_output(out_path, reports::reduction_json(red).dump(2) + "\n");
    return 0;
  }

  throw std::logic_error("unhandled command: " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"piecewise lambda-affine contraction toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, backend_flag;
  int threads = 0;
  unsigned long long seed = 0;  // reserved for sampling commands
  app.add_option("--config", config_path, "run configuration file")
      ->envname("PCN_CONFIG");
  app.add_option("--out", out_path, "output file (default: stdout)")
      ->envname("PCN_OUT");
  app.add_option("--backend", backend_flag, "exact | float")
      ->envname("PCN_BACKEND");
  app.add_option("--threads", threads, "worker threads for scans")
      ->envname("PCN_THREADS");
  app.add_option("--seed", seed, "seed for randomized commands")
      ->envname("PCN_SEED");

  for (const auto& [name, help] :
       std::initializer_list<std::pair<const char*, const char*>>{
           {"classify", "classify an orbit (classify.x0) or the whole map"},
           {"itineraries", "regular cells and branch words at a depth"},
           {"growth", "cell counts per depth as CSV"},
           {"singular", "search for a singular connection"},
           {"cover", "cover certificate and measure bound"},
           {"certify", "separation certificate for one delta"},
           {"scan", "delta scan of the rotated family as CSV"},
           {"reduce", "gap reduction of a circle map"}})
    app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (config_path.empty())
      throw pcn::ValidationError("a --config file is required");
    pcn::Config cfg = pcn::Config::from_file(config_path);

    pcn::Backend bk = pcn::parse_backend(
        !backend_flag.empty() ? backend_flag : cfg.str_or("backend", "exact"));
    if (cfg.has("tolerance")) pcn::set_tolerance(cfg.number("tolerance"));
    if (threads <= 0) threads = static_cast<int>(cfg.integer_or("threads", 1));
    if (out_path.empty()) out_path = cfg.str_or("out", "");
    (void)seed;

    const std::string cmd = app.get_subcommands().front()->get_name();
    return run_command(cmd, cfg, bk, out_path, threads);
  } catch (const pcn::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
