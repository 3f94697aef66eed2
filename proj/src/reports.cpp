#include "pcn/reports.hpp"

#include <cstdio>
#include <sstream>

namespace pcn::reports {

namespace {

json word_json(const ItineraryWord& w) {
  json a = json::array();
  for (int s : w.symbols) a.push_back(s);
  return a;
}

json scalar_list_json(const std::vector<Scalar>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(x.str());
  return a;
}

std::string fmt_double(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

}  // namespace

json classification_json(const Classification& c) {
  json j;
  j["status"] = orbit_status_name(c.status);
  j["period"] = c.period;
  j["cycle"] = scalar_list_json(c.cycle);
  j["iterations"] = c.iterations_used;
  return j;
}

json map_classification_json(const MapClassification& mc) {
  json j;
  j["starts"] = scalar_list_json(mc.starts);
  json rs = json::array();
  for (const auto& c : mc.results) rs.push_back(classification_json(c));
  j["results"] = rs;
  j["distinct_orbits"] = mc.distinct_orbits;
  j["all_periodic"] = mc.all_periodic;
  j["iterations_total"] = mc.iterations_total;
  return j;
}

json cells_json(const std::vector<RegularCell>& cells, int depth) {
  json j;
  j["depth"] = depth;
  json arr = json::array();
  for (const auto& c : cells) {
    json e;
    e["lo"] = c.lo.str();
    e["hi"] = c.hi.str();
    e["word"] = word_json(c.word);
    arr.push_back(e);
  }
  j["cells"] = arr;
  j["count"] = cells.size();
  return j;
}

json witness_json(const std::optional<SingularConnectionWitness>& w, int depth) {
  json j;
  j["searched_depth"] = depth;
  j["found"] = w.has_value();
  if (w) {
    j["word"] = word_json(w->word);
    j["source_index"] = w->source_index;
    j["target_index"] = w->target_index;
    j["value"] = w->value.str();
  }
  return j;
}

json cover_json(const CoverCertificate& cert) {
  json j;
  j["depth"] = cert.depth;
  j["epsilon"] = cert.epsilon.str();
  j["samples"] = cert.samples;
  j["word_count"] = cert.centers.size();
  j["radius"] = cert.radius.str();
  j["dimension"] = cert.dimension;
  j["bound"] = cert.bound.str();
  j["exact_bound"] = cert.exact_bound;
  j["lambda"] = cert.lambda.str();
  j["radius_phi"] = cert.radius_phi.str();
  j["branches"] = cert.k;
  json cs = json::array();
  for (const auto& wc : cert.centers) {
    json e;
    e["word"] = word_json(wc.word);
    e["center"] = wc.center.str();
    cs.push_back(e);
  }
  j["centers"] = cs;
  return j;
}

json verdict_json(const FinitenessVerdict& v) {
  json j;
  j["delta"] = v.delta.str();
  j["epsilon"] = v.epsilon.str();
  j["tau"] = v.tau.str();
  j["n_star"] = v.n_star;
  j["status"] = v.status == FinitenessStatus::certified_finite
                    ? "certified_finite"
                    : "inconclusive";
  j["delta_in_band"] = v.delta_in_band;
  j["singular_guard_ok"] = v.singular_guard_ok;
  j["guard_depth"] = v.guard_depth;
  j["n_max"] = v.n_max;
  j["samples"] = v.samples;
  return j;
}

json reduction_json(const Reduction& red) {
  json j;
  j["gap_midpoint"] = red.gap.c.str();
  j["gap_clearance"] = red.gap.ell.str();
  json img = json::array();
  for (const auto& [lo, hi] : red.gap.image) {
    json e;
    e["lo"] = lo.str();
    e["hi"] = hi.str();
    img.push_back(e);
  }
  j["image"] = img;
  const auto& f = red.line_map;
  json slopes = json::array(), icpts = json::array();
  for (int i = 1; i <= f.branches(); ++i) {
    slopes.push_back(f.ifs().branch(i).slope().str());
    icpts.push_back(f.ifs().branch(i).intercept().str());
  }
  j["line_slopes"] = slopes;
  j["line_intercepts"] = icpts;
  j["line_breakpoints"] = scalar_list_json(f.breaks().points());
  j["shift_factor"] = red.shift_factor.str();
  return j;
}

json census_json(const CensusTable& t) {
  json j;
  j["seed"] = t.seed;
  j["instances"] = t.instances;
  j["resolved_fraction"] = t.resolved_fraction;
  j["max_orbits"] = t.max_orbits;
  json rows = json::array();
  for (const auto& r : t.rows) {
    json e;
    e["breakpoints"] = scalar_list_json(r.breakpoints);
    e["orbits"] = r.orbit_count;
    e["max_period"] = r.max_period;
    e["all_periodic"] = r.all_periodic;
    e["iterations"] = r.iterations;
    rows.push_back(e);
  }
  j["rows"] = rows;
  return j;
}

json doubling_json(const DoublingReport& r) {
  json j;
  j["m"] = r.m;
  j["rho"] = r.rho;
  j["epsilon"] = r.epsilon.str();
  j["samples"] = r.samples;
  j["singular_guard_ok"] = r.singular_guard_ok;
  j["guard_depth"] = r.guard_depth;
  j["tau_finite"] = r.tau_finite;
  j["tau"] = r.tau.str();
  j["n0_found"] = r.n0_found;
  j["n0"] = r.n0;
  j["checked_from"] = r.checked_from;
  j["checked_to"] = r.checked_to;
  j["holds"] = r.holds;
  j["growth_constant"] = r.growth_constant;
  json a = json::array();
  for (long v : r.alpha) a.push_back(v);
  j["alpha"] = a;
  j["stable_band"] = r.stable_band.str();
  return j;
}

std::string growth_csv(const GrowthTable& t) {
  std::ostringstream out;
  out << "depth,count,enlarged_count,log_rate\n";
  for (const auto& row : t.rows)
    out << row.depth << ',' << row.count << ',' << row.enlarged_count << ','
        << fmt_double(row.log_rate) << '\n';
  return out.str();
}

std::string scan_csv(const ScanReport& rep) {
  std::ostringstream out;
  out << "delta,status,period,iterations\n";
  for (const auto& r : rep.results)
    out << r.delta.str() << ','
        << (r.status == OrbitStatus::periodic ? "periodic" : "unresolved") << ','
        << r.period << ',' << r.iterations << '\n';
  return out.str();
}

json scan_sidecar_json(const ScanReport& rep, const BoxDimFit* fit,
                       const std::vector<double>* flagged_points) {
  json j;
  j["grid"] = rep.grid;
  j["gap_midpoint"] = rep.c.str();
  j["gap_clearance"] = rep.ell.str();
  j["negative_base"] = rep.delta0.str();
  j["spacing"] = rep.spacing.str();
  j["threads"] = rep.threads;
  json b;
  b["max_iterations"] = rep.budget.max_iterations;
  b["transient_skip"] = rep.budget.transient_skip;
  b["tol"] = rep.budget.tol;
  b["period_cap"] = rep.budget.period_cap;
  j["budget"] = b;
  j["flagged_fraction"] = rep.flagged_fraction;
  json fl = json::array();
  for (const auto& iv : rep.flagged) {
    json e;
    e["lo"] = iv.lo.str();
    e["hi"] = iv.hi.str();
    fl.push_back(e);
  }
  j["flagged"] = fl;
  if (fit != nullptr) {
    json f;
    f["slope"] = fit->slope;
    f["scales_used"] = fit->scales_used;
    f["degenerate"] = fit->degenerate;
    j["box_dimension"] = f;
  }
  if (flagged_points != nullptr) j["refined_flagged_count"] = flagged_points->size();
  return j;
}

}  // namespace pcn::reports
