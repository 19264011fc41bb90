#include "greenlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>

#include "greenlab/analysis.hpp"
#include "greenlab/auxfun.hpp"
#include "greenlab/io.hpp"
#include "greenlab/kernels.hpp"
#include "greenlab/mollifier.hpp"
#include "greenlab/moser.hpp"
#include "greenlab/operator.hpp"
#include "greenlab/riesz.hpp"

namespace greenlab {

namespace {

using json = nlohmann::json;

template <class T>
void take(const json& sec, const char* key, T& dst) {
  if (sec.contains(key)) dst = sec.at(key).get<T>();
}

Point to_point(const json& a) {
  Point p{0.0, 0.0, 0.0};
  if (!a.is_array() || a.size() > 3) throw std::invalid_argument("config: a point must be an array of up to 3 numbers");
  for (std::size_t k = 0; k < a.size(); ++k) p[k] = a[k].get<double>();
  return p;
}

double min_width(const Mesh& m) {
  double h = m.h[0];
  for (int k = 1; k < m.dim; ++k) h = std::min(h, m.h[k]);
  return h;
}

Point box_centre(const Mesh& m) {
  Point z{0.0, 0.0, 0.0};
  for (int k = 0; k < m.dim; ++k) z[k] = m.origin[k] + 0.5 * m.extent[k];
  return z;
}

std::vector<Point> sources_or_centre(const Mesh& m, const RunConfig& c) {
  return c.sources.empty() ? std::vector<Point>{box_centre(m)} : c.sources;
}

// smooth random field: signed Gaussians on the unit box coordinates
DiscreteField smooth_random(const Mesh& m, std::uint64_t seed, int count, bool nonnegative) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<std::array<double, 5>> g(static_cast<std::size_t>(count));
  for (auto& e : g) e = {u01(rng), u01(rng), u01(rng), 0.08 + 0.2 * u01(rng), nonnegative ? u01(rng) : 2.0 * u01(rng) - 1.0};
  DiscreteField f(m.size(), 0.0);
  for (std::size_t p = 0; p < m.size(); ++p) {
    Point x = m.coord(p);
    for (int k = 0; k < m.dim; ++k) x[k] = (x[k] - m.origin[k]) / m.extent[k];
    double s = 0.0;
    for (const auto& e : g) {
      double r2 = 0.0;
      for (int k = 0; k < m.dim; ++k) r2 += (x[k] - e[k]) * (x[k] - e[k]);
      s += e[4] * std::exp(-r2 / (2.0 * e[3] * e[3]));
    }
    f[p] = s;
  }
  return f;
}

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions o;
  o.tol = c.tol;
  if (c.method == "auto") o.method = SolverMethod::AUTO;
  else if (c.method == "pcg") o.method = SolverMethod::PCG;
  else if (c.method == "direct") o.method = SolverMethod::DIRECT;
  else throw std::invalid_argument("config: solver.method must be auto, pcg or direct");
  return o;
}

json metadata(const std::string& command, const RunConfig& c, const Mesh& m) {
  json j;
  j["command"] = command;
  j["seed"] = c.seed;
  j["grid"] = {{"dim", m.dim},
               {"intervals", std::vector<int>(c.intervals.begin(), c.intervals.end())},
               {"nodes", m.size()},
               {"extent", c.extent},
               {"admissible", m.count(NodeClass::ADMISSIBLE)},
               {"holes", m.count(NodeClass::HOLE)}};
  j["tolerances"] = {{"solver", c.tol}, {"kernel_solver", kernel_solver_options().tol}};
  j["config"] = config_to_json(c);
  return j;
}

json metadata(const std::string& command, const RunConfig& c) {
  json j;
  j["command"] = command;
  j["seed"] = c.seed;
  j["config"] = config_to_json(c);
  return j;
}

std::string out_path(const RunConfig& c, const std::string& name) { return c.out_dir + "/" + name; }

void emit(const RunConfig& c, const std::string& name, const json& j) {
  write_json(out_path(c, name), j);
  std::cout << dump_json(j);
}

struct Problem {
  Mesh mesh;
  WeightedOperator op;
};

Problem build_problem(const RunConfig& c) {
  Problem p;
  p.mesh = config_mesh(c);
  p.op = assemble(p.mesh, config_coeff(p.mesh, c));
  return p;
}

double rho_of(const Mesh& m, const RunConfig& c) { return c.rho_h * min_width(m); }

double field_max(const DiscreteField& v) { return *std::max_element(v.begin(), v.end()); }
double field_min(const DiscreteField& v) { return *std::min_element(v.begin(), v.end()); }

// ---- subcommands ----

int cmd_verify_aux(const RunConfig& c, std::size_t pairs, std::size_t samples, std::size_t s_values, std::size_t points) {
  const std::size_t grid_t = std::min<std::size_t>(2000, samples);
  TruncSweep ts = default_trunc_sweep(pairs, grid_t, c.seed);
  ts.random_per_pair = samples - grid_t;
  SmoothedSweep ss = default_smoothed_sweep(s_values, grid_t, c.seed + 1);
  ss.random_per_s = samples - grid_t;
  std::vector<double> tg(points);
  for (std::size_t i = 0; i < points; ++i) tg[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  std::vector<double> sg;
  const double lo = 2.0 / 3.0 - kDelta;
  for (int i = 1; i <= 20; ++i) sg.push_back(lo + (1.0 - lo) * i / 20.0);

  std::vector<AuxReport> all = certify_trunc(ts);
  for (auto& r : certify_smoothed(ss)) all.push_back(r);
  for (auto& r : certify_appendix(tg, sg)) all.push_back(r);

  json j = metadata("verify-aux", c);
  j["sweep"] = {{"pairs", pairs}, {"t_samples", samples}, {"s_values", s_values}, {"appendix_points", points}};
  j["all_pass"] = all_pass(all);
  j["report_count"] = all.size();
  json full = j;
  full["reports"] = reports_to_json(all);
  write_json(out_path(c, "verify_aux_reports.json"), full);
  write_text(out_path(c, "verify_aux_table.txt"), reports_table(all));
  j["failed"] = json::array();
  for (const auto& r : all)
    if (!r.informational && !r.pass) j["failed"].push_back(r.id);
  emit(c, "verify_aux.json", j);
  return 0;
}

int cmd_solve(const RunConfig& c, bool export_system) {
  Problem pb = build_problem(c);
  const DiscreteField f = config_source(pb.mesh, c);
  SolveInfo info;
  const DiscreteField u = solve(pb.op, f, solver_options(c), &info);
  json j = metadata("solve", c, pb.mesh);
  j["max_u"] = field_max(u);
  j["min_u"] = field_min(u);
  j["residual"] = info.residual;
  j["iterations"] = info.iterations;
  j["method"] = info.method;
  j["energy_defect"] = info.energy_defect;
  j["energy_scale"] = info.energy_scale;
  j["energy_norm"] = energy_norm(pb.op, u);
  j["b_energy_norm"] = b_energy_norm(pb.op, u);
  write_field_csv(out_path(c, "solution.csv"), pb.mesh, {{"u", &u}, {"f", &f}});
  if (export_system) write_coo(out_path(c, "system_coo.csv"), pb.op.system);
  emit(c, "solve.json", j);
  return 0;
}

json kernel_summary(const Mesh& m, const KernelField& k) {
  json j;
  j["z"] = {k.z[0], k.z[1], k.z[2]};
  j["rho"] = k.rho;
  j["max"] = field_max(k.values);
  j["min"] = field_min(k.values);
  j["residual"] = k.info.residual;
  j["iterations"] = k.info.iterations;
  const double mx = std::max(std::abs(field_max(k.values)), std::abs(field_min(k.values)));
  if (k.kind == KernelKind::GREEN) {
    j["min_over_max"] = mx > 0.0 ? field_min(k.values) / mx : 0.0;
    j["nonnegative"] = field_min(k.values) >= -1e-12 * mx;
  }
  try {
    const DecayModel model = (m.dim == 2 && k.kind == KernelKind::GREEN) ? DecayModel::LOG : DecayModel::POWER;
    j["decay"] = decay_to_json(fit_decay(m, k, {}, model));
  } catch (const std::invalid_argument& e) {
    j["decay"] = {{"error", e.what()}};
  }
  return j;
}

int cmd_green(const RunConfig& c) {
  Problem pb = build_problem(c);
  json j = metadata("green", c, pb.mesh);
  j["kernels"] = json::array();
  const auto src = sources_or_centre(pb.mesh, c);
  for (std::size_t i = 0; i < src.size(); ++i) {
    const KernelField k = green_column(pb.op, src[i], rho_of(pb.mesh, c));
    write_field_csv(out_path(c, "green_" + std::to_string(i) + ".csv"), pb.mesh, {{"G", &k.values}});
    j["kernels"].push_back(kernel_summary(pb.mesh, k));
  }
  emit(c, "green.json", j);
  return 0;
}

int cmd_gradkernel(const RunConfig& c, int axis) {
  Problem pb = build_problem(c);
  if (axis < 0 || axis >= pb.mesh.dim) throw std::invalid_argument("gradkernel: axis out of range");
  json j = metadata("gradkernel", c, pb.mesh);
  j["axis"] = axis;
  j["kernels"] = json::array();
  const auto src = sources_or_centre(pb.mesh, c);
  for (std::size_t i = 0; i < src.size(); ++i) {
    const KernelField k = gradient_kernel(pb.op, src[i], rho_of(pb.mesh, c), axis);
    write_field_csv(out_path(c, "gradkernel_" + std::to_string(i) + ".csv"), pb.mesh, {{"H", &k.values}});
    j["kernels"].push_back(kernel_summary(pb.mesh, k));
  }
  emit(c, "gradkernel.json", j);
  return 0;
}

int cmd_represent(const RunConfig& c, bool gradient, int axis, int samples) {
  Problem pb = build_problem(c);
  const double rho = rho_of(pb.mesh, c);
  const auto sources = admissible_sources(pb.op, rho);
  json j = metadata("represent", c, pb.mesh);
  j["rho"] = rho;
  j["columns"] = sources.size();
  j["gradient"] = gradient;
  const KernelBatch batch = kernel_batch(pb.op, gradient ? KernelKind::GRAD : KernelKind::GREEN, sources, rho, axis, c.jobs);
  json errs = json::array();
  double worst = 0.0;
  DiscreteField last_rep, last_ref;
  for (int s = 0; s < samples; ++s) {
    const DiscreteField f = smooth_random(pb.mesh, c.seed + static_cast<std::uint64_t>(s), 8, false);
    const DiscreteField u = solve(pb.op, f, kernel_solver_options());
    double err = 0.0, scale = 0.0;
    DiscreteField rep, ref(pb.mesh.size(), 0.0);
    if (!gradient) {
      rep = represent(pb.op, batch, f);
      ref = u;
      for (std::size_t p : sources) err = std::max(err, std::abs(rep[p] - u[p]));
      for (double v : u) scale = std::max(scale, std::abs(v));
    } else {
      rep = represent_gradient(pb.op, batch, f);
      const auto g = nodal_gradient(pb.mesh, u);
      for (std::size_t p : sources) {
        ref[p] = g[p][static_cast<std::size_t>(axis)];
        err = std::max(err, std::abs(rep[p] - ref[p]));
        scale = std::max(scale, std::abs(ref[p]));
      }
    }
    const double rel = scale > 0.0 ? err / scale : err;
    errs.push_back(rel);
    worst = std::max(worst, rel);
    last_rep = std::move(rep);
    last_ref = std::move(ref);
  }
  j["relative_errors"] = errs;
  j["worst_relative_error"] = worst;
  if (!last_rep.empty()) write_field_csv(out_path(c, "represent.csv"), pb.mesh, {{"represented", &last_rep}, {"reference", &last_ref}});
  emit(c, "represent.json", j);
  return 0;
}

int cmd_decay(const RunConfig& c, int axis) {
  Problem pb = build_problem(c);
  const Point z = sources_or_centre(pb.mesh, c).front();
  const double rho = rho_of(pb.mesh, c);
  json j = metadata("decay", c, pb.mesh);
  const KernelField g = green_column(pb.op, z, rho);
  const KernelField h = gradient_kernel(pb.op, z, rho, axis);
  const DecayFit fg = fit_decay(pb.mesh, g, {}, DecayModel::POWER);
  const DecayFit fh = fit_decay(pb.mesh, h, {}, DecayModel::POWER);
  j["green_power"] = decay_to_json(fg);
  j["grad_power"] = decay_to_json(fh);
  if (pb.mesh.dim == 2) j["green_log"] = decay_to_json(fit_decay(pb.mesh, g, {}, DecayModel::LOG));
  auto rows = [](const DecayFit& f) {
    std::vector<std::vector<double>> r;
    for (std::size_t i = 0; i < f.radii.size(); ++i) r.push_back({f.radii[i], f.maxima[i]});
    return r;
  };
  write_csv(out_path(c, "decay_green.csv"), {"radius", "annulus_max"}, rows(fg));
  write_csv(out_path(c, "decay_grad.csv"), {"radius", "annulus_max"}, rows(fh));
  emit(c, "decay.json", j);
  return 0;
}

int cmd_riesz(const RunConfig& c, double order, double p) {
  const Mesh m = config_mesh(c);
  const DiscreteField f = config_source(m, c);
  const RieszSpec spec{order};
  const DiscreteField v = riesz_potential(m, f, spec);
  json j = metadata("riesz", c, m);
  j["order"] = order;
  j["p"] = p;
  j["q"] = hls_exponent(p, spec, m.dim);
  j["hls_ratio"] = hls_ratio(m, f, p, spec);
  j["value_at_centre"] = v[m.nearest_node(box_centre(m))];
  write_field_csv(out_path(c, "riesz.csv"), m, {{"I", &v}, {"f", &f}});
  emit(c, "riesz.json", j);
  return 0;
}

int cmd_moser(const RunConfig& c, std::size_t members) {
  Problem pb = build_problem(c);
  const DiscreteField f = config_source(pb.mesh, c);
  const DiscreteField u = solve(pb.op, f, solver_options(c));
  const IterationSchedule sched = schedule(c.gamma, c.r, c.rbar);
  DiscreteField a(f.size());
  for (std::size_t p = 0; p < f.size(); ++p) a[p] = std::max(std::abs(f[p]), 1e-300);
  const auto fam = sobolev_family(pb.mesh, members, c.seed);
  const SobolevEstimate se = empirical_sobolev_constant(pb.mesh, fam, c.r, c.t);
  ScalarField binv(pb.mesh.size(), 0.0);
  for (std::size_t p = 0; p < binv.size(); ++p) binv[p] = pb.op.coeff.envelope_b[p];
  const double inv_b = check_integrability(binv, c.t / (2.0 - c.t), pb.mesh, Integrand::RECIPROCAL_POWER);
  SupBoundInputs in;
  in.vol = pb.mesh.domain_volume();
  in.a_norm = lp_norm(pb.mesh, a, c.rbar / (c.rbar - 2.0));
  in.u_gamma_norm = lp_norm(pb.mesh, u, c.gamma);
  in.C_sob = weighted_sobolev_constant(se.constant, inv_b);
  LiftChain chain;
  const double bound = sup_bound_any(sched, in, &chain);
  SupBoundInputs safe = in;
  safe.C_sob *= 10.0;
  const double bound_safe = sup_bound_any(sched, safe);
  const SupCheck chk = check_sup(u, bound);
  const SupCheck chk_safe = check_sup(u, bound_safe);
  json j = metadata("moser-bound", c, pb.mesh);
  j["schedule"] = schedule_to_json(sched);
  j["sobolev_constant_empirical"] = se.constant;
  j["inverse_b_norm"] = inv_b;
  j["C_weighted"] = in.C_sob;
  j["a_norm"] = in.a_norm;
  j["u_gamma_norm"] = in.u_gamma_norm;
  j["bound"] = bound;
  j["bound_safety_10x"] = bound_safe;
  j["discrete_sup"] = chk.sup;
  j["holds"] = chk.holds;
  j["holds_safety_10x"] = chk_safe.holds;
  j["margin"] = std::isfinite(chk.margin) ? json(chk.margin) : json("inf");
  if (sched.lifting_needed())
    j["lift_chain"] = {{"M", chain.M}, {"c_gamma", chain.c_gamma}, {"k1", chain.k1}, {"m_gamma", chain.m_gamma},
                       {"lifted_gamma", chain.lifted_gamma}, {"lifted_norm", chain.lifted_norm}};
  else
    j["constants"] = {{"C1", constant_C1(in)}, {"c1", constant_c1(sched, in)}, {"c2", constant_c2(sched)}};
  j["exterior_exponent"] = exterior_exponent(c.gamma, c.r, c.rbar);
  emit(c, "moser_bound.json", j);
  return 0;
}

int cmd_sobolev(const RunConfig& c, std::size_t members) {
  const Mesh m = config_mesh(c);
  const auto fam = sobolev_family(m, members, c.seed);
  const SobolevEstimate se = empirical_sobolev_constant(m, fam, c.r, c.t);
  json j = metadata("sobolev-check", c, m);
  j["r"] = c.r;
  j["t"] = c.t;
  j["members"] = fam.size();
  j["used"] = se.used;
  j["constant"] = se.constant;
  j["best_member"] = se.best_member;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < se.running_max.size(); ++i) rows.push_back({static_cast<double>(i), se.running_max[i]});
  write_csv(out_path(c, "sobolev_running_max.csv"), {"member", "running_max"}, rows);
  emit(c, "sobolev_check.json", j);
  return 0;
}

int cmd_holder(const RunConfig& c, double tau, std::size_t budget) {
  Problem pb = build_problem(c);
  const DiscreteField u = solve(pb.op, config_source(pb.mesh, c), solver_options(c));
  const HolderEstimate h = holder_seminorm(pb.mesh, u, tau, budget, c.seed);
  json j = metadata("holder", c, pb.mesh);
  j["tau"] = tau;
  j["seminorm"] = h.seminorm;
  j["pairs"] = h.pairs;
  j["pair_sample"] = h.pair_sample;
  j["worst_pair"] = {h.worst_pair[0], h.worst_pair[1]};
  std::vector<std::vector<double>> rows;
  for (const auto& b : h.histogram) rows.push_back({b[0], b[1], b[2]});
  write_csv(out_path(c, "holder_histogram.csv"), {"distance_lo", "pairs", "max_quotient"}, rows);
  emit(c, "holder.json", j);
  return 0;
}

int cmd_weights(const RunConfig& c, bool pathological, int beta, int kmax, std::vector<int> dims, double gamma, double p) {
  if (pathological) {
    const LogWeightDescriptor d = pathological_bbar(beta, kmax);
    json j = metadata("weights", c);
    j["pathological"] = true;
    j["tables"] = json::array();
    std::vector<std::vector<double>> rows;
    for (int N : dims) {
      const A2Table t = verify_a2_violation(d, N);
      j["tables"].push_back(a2_table_to_json(d, t));
      for (const auto& r : t.rows) rows.push_back({static_cast<double>(N), static_cast<double>(r.k), static_cast<double>(r.ratio_lower_bound)});
    }
    write_csv(out_path(c, "weights_pathological.csv"), {"N", "k", "ratio_lower_bound"}, rows);
    emit(c, "weights.json", j);
    return 0;
  }
  const Mesh m = config_mesh(c);
  const ScalarField w = distance_weight(m, gamma);
  json j = metadata("weights", c, m);
  j["pathological"] = false;
  j["gamma"] = gamma;
  j["p"] = p;
  j["norm"] = check_integrability(w, p, m, Integrand::POWER);
  j["reciprocal_norm"] = check_integrability(w, p, m, Integrand::RECIPROCAL_POWER);
  write_field_csv(out_path(c, "weights.csv"), m, {{"w", &w}});
  emit(c, "weights.json", j);
  return 0;
}

int cmd_params(const RunConfig& c) {
  const ParameterSelection ps = pick_parameters(c.N, c.zeta);
  json j = metadata("params", c);
  j["parameters"] = parameters_to_json(ps);
  const Rational zeta(c.zeta);
  const ExponentLedger l = exponent_ledger(c.N, Rational(4) * zeta, zeta, Rational(1.0 / ps.r));
  j["exponent_ledger"] = ledger_to_json(l);
  j["exponent_ledger"]["all_identities_hold"] = l.all_identities_hold();
  emit(c, "params.json", j);
  return 0;
}

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig c;
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  if (j.contains("domain")) {
    const auto& d = j.at("domain");
    take(d, "dim", c.dim);
    if (d.contains("intervals")) {
      const auto& iv = d.at("intervals");
      c.intervals = iv.is_array() ? iv.get<std::vector<int>>() : std::vector<int>(static_cast<std::size_t>(c.dim), iv.get<int>());
    } else {
      c.intervals.assign(static_cast<std::size_t>(c.dim), c.intervals.front());
    }
    if (d.contains("extent")) c.extent = d.at("extent").get<std::vector<double>>();
    else c.extent.assign(static_cast<std::size_t>(c.dim), 1.0);
    take(d, "origin", c.origin);
  }
  if (j.contains("coeff")) c.coeff = j.at("coeff");
  if (j.contains("admissible")) c.admissible = j.at("admissible");
  if (j.contains("source")) c.source = j.at("source");
  if (j.contains("solver")) {
    take(j.at("solver"), "tol", c.tol);
    take(j.at("solver"), "method", c.method);
  }
  if (j.contains("kernels")) {
    const auto& k = j.at("kernels");
    if (k.contains("sources"))
      for (const auto& s : k.at("sources")) c.sources.push_back(to_point(s));
    take(k, "rho_h", c.rho_h);
    take(k, "rho_sweep_h", c.rho_sweep_h);
  }
  if (j.contains("params")) {
    const auto& p = j.at("params");
    take(p, "N", c.N);
    take(p, "zeta", c.zeta);
    take(p, "gamma", c.gamma);
    take(p, "r", c.r);
    take(p, "rbar", c.rbar);
    take(p, "t", c.t);
  }
  take(j, "output", c.out_dir);
  take(j, "seed", c.seed);
  take(j, "jobs", c.jobs);
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["domain"] = {{"dim", c.dim}, {"intervals", c.intervals}, {"extent", c.extent}};
  if (!c.origin.empty()) j["domain"]["origin"] = c.origin;
  j["coeff"] = c.coeff;
  j["admissible"] = c.admissible;
  j["source"] = c.source;
  j["solver"] = {{"tol", c.tol}, {"method", c.method}};
  json src = json::array();
  for (const auto& p : c.sources) src.push_back({p[0], p[1], p[2]});
  j["kernels"] = {{"sources", src}, {"rho_h", c.rho_h}, {"rho_sweep_h", c.rho_sweep_h}};
  j["params"] = {{"N", c.N}, {"zeta", c.zeta}, {"gamma", c.gamma}, {"r", c.r}, {"rbar", c.rbar}, {"t", c.t}};
  j["seed"] = c.seed;
  return j;
}

void validate_config(const RunConfig& c) {
  if (c.dim != 2 && c.dim != 3) throw std::invalid_argument("config: domain.dim must be 2 or 3");
  if (static_cast<int>(c.intervals.size()) != c.dim || static_cast<int>(c.extent.size()) != c.dim)
    throw std::invalid_argument("config: domain.intervals and domain.extent need one entry per axis");
  for (int n : c.intervals)
    if (n < 4) throw std::invalid_argument("config: domain.intervals must be >= 4");
  if (!(c.tol > 0.0)) throw std::invalid_argument("config: solver.tol must be positive");
  if (!(c.rho_h > 0.0)) throw std::invalid_argument("config: kernels.rho_h must be positive");
  if (c.jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
  solver_options(c);
}

Mesh config_mesh(const RunConfig& c) {
  validate_config(c);
  std::vector<int> n;
  for (int iv : c.intervals) n.push_back(iv + 1);
  const Mesh box = build_mesh(c.dim, n, c.extent, c.origin);
  const auto& a = c.admissible;
  const std::string preset = a.value("preset", std::string("FULL_BOUNDARY"));
  AdmissiblePreset ap;
  switch (preset_kind_from_string(preset)) {
    case AdmissiblePreset::Kind::FULL_BOUNDARY: ap = AdmissiblePreset::full_boundary(); break;
    case AdmissiblePreset::Kind::CUBE_FACE_COMPLEMENT: ap = AdmissiblePreset::cube_face_complement(); break;
    case AdmissiblePreset::Kind::ANNULUS_INNER:
      ap = AdmissiblePreset::annulus_inner(a.contains("center") ? to_point(a.at("center")) : box_centre(box), a.value("s", 0.05));
      break;
    case AdmissiblePreset::Kind::CUSTOM_PREDICATE: {
      // admissible where x_axis <= threshold
      const int axis = a.value("axis", 0);
      const double thr = a.value("threshold", 0.5);
      ap = AdmissiblePreset::custom([axis, thr](const Point& x) { return x[static_cast<std::size_t>(axis)] <= thr; });
      break;
    }
  }
  return mark_admissible(box, ap);
}

CoefficientField config_coeff(const Mesh& m, const RunConfig& c) {
  const auto& s = c.coeff;
  const std::string kind = s.value("kind", std::string("constant"));
  if (kind == "constant") return constant_field(m, s.value("value", 1.0));
  if (kind == "diagonal" || kind == "distance") {
    const std::string key = kind == "diagonal" ? "values" : "gammas";
    if (!s.contains(key)) throw std::invalid_argument("config: coeff." + key + " missing");
    const auto v = s.at(key).get<std::vector<double>>();
    if (static_cast<int>(v.size()) != m.dim) throw std::invalid_argument("config: coeff." + key + " needs one entry per axis");
    if (kind == "distance") {
      const auto scales = s.value("scales", std::vector<double>(v.size(), 1.0));
      if (scales.size() != v.size()) throw std::invalid_argument("config: coeff.scales needs one entry per axis");
      return distance_field(m, v, scales);
    }
    std::vector<ScalarField> axes;
    for (int k = 0; k < m.dim; ++k) axes.push_back(ScalarField(m.size(), v[static_cast<std::size_t>(k)]));
    return diagonal_field(m, axes);
  }
  if (kind == "full") {
    const auto mat = s.at("matrix").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(mat.size()) != m.dim) throw std::invalid_argument("config: coeff.matrix must be dim x dim");
    std::vector<double> e;
    e.reserve(m.size() * static_cast<std::size_t>(m.dim * m.dim));
    for (std::size_t p = 0; p < m.size(); ++p)
      for (const auto& row : mat) {
        if (static_cast<int>(row.size()) != m.dim) throw std::invalid_argument("config: coeff.matrix must be dim x dim");
        e.insert(e.end(), row.begin(), row.end());
      }
    return full_field(m, e);
  }
  if (kind == "random_diagonal") {
    const double lo = s.value("min", 0.5), hi = s.value("max", 2.0);
    if (!(lo > 0.0 && hi >= lo)) throw std::invalid_argument("config: coeff random_diagonal needs 0 < min <= max");
    std::vector<ScalarField> axes;
    for (int k = 0; k < m.dim; ++k) {
      const DiscreteField g = smooth_random(m, s.value("seed", c.seed) * 31 + static_cast<std::uint64_t>(k), 5, false);
      const double gmax = std::max(std::abs(field_max(g)), std::abs(field_min(g)));
      ScalarField b(m.size());
      for (std::size_t p = 0; p < m.size(); ++p) b[p] = lo + (hi - lo) * 0.5 * (1.0 + g[p] / gmax);
      axes.push_back(b);
    }
    return diagonal_field(m, axes);
  }
  throw std::invalid_argument("config: unknown coeff.kind '" + kind + "'");
}

DiscreteField config_source(const Mesh& m, const RunConfig& c) {
  const auto& s = c.source;
  const std::string kind = s.value("kind", std::string("constant"));
  if (kind == "constant") return DiscreteField(m.size(), s.value("value", 1.0));
  if (kind == "bump") {
    const Point z = s.contains("center") ? to_point(s.at("center")) : box_centre(m);
    const double R = s.value("radius", 0.1), amp = s.value("amplitude", 1.0);
    DiscreteField f(m.size(), 0.0);
    for (std::size_t p = 0; p < m.size(); ++p) {
      const Point x = m.coord(p);
      double r2 = 0.0;
      for (int k = 0; k < m.dim; ++k) r2 += (x[k] - z[k]) * (x[k] - z[k]);
      const double q = 1.0 - r2 / (R * R);
      f[p] = q > 0.0 ? amp * q * q : 0.0;
    }
    return f;
  }
  if (kind == "random") return smooth_random(m, s.value("seed", c.seed), s.value("count", 8), s.value("nonnegative", false));
  if (kind == "ball_indicator") {
    const Point z = s.contains("center") ? to_point(s.at("center")) : box_centre(m);
    const double R = s.value("radius", 1.0);
    DiscreteField f(m.size(), 0.0);
    for (std::size_t p = 0; p < m.size(); ++p) {
      const Point x = m.coord(p);
      double r2 = 0.0;
      for (int k = 0; k < m.dim; ++k) r2 += (x[k] - z[k]) * (x[k] - z[k]);
      f[p] = r2 <= R * R ? 1.0 : 0.0;
    }
    return f;
  }
  throw std::invalid_argument("config: unknown source.kind '" + kind + "'");
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"greenlab: weighted elliptic kernels, potentials and bound certificates"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  int jobs = 0, dim = 0, intervals = 0;
  double tol = 0.0, rho_h = 0.0;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (GREEN_OUT_DIR overrides)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--jobs", jobs, "worker threads for kernel batches");
  app.add_option("--dim", dim, "spatial dimension");
  app.add_option("--intervals", intervals, "grid intervals per axis");
  app.add_option("--tol", tol, "solver relative residual tolerance");
  app.add_option("--rho-h", rho_h, "mollifier radius in mesh widths (< 1: lumped delta)");
  app.fallthrough();

  auto* verify = app.add_subcommand("verify-aux", "certify the auxiliary-function inequalities");
  std::size_t pairs = 200, samples = 10000, s_values = 50, points = 100000;
  verify->add_option("--pairs", pairs, "(s, l) pairs");
  verify->add_option("--samples", samples, "t samples per pair or per s");
  verify->add_option("--s-values", s_values, "s values for the smoothed family");
  verify->add_option("--points", points, "t points for the polynomial identities");

  auto* solve_cmd = app.add_subcommand("solve", "solve the weighted problem for the configured source");
  bool export_system = false;
  solve_cmd->add_flag("--export-system", export_system, "write the free system as row,col,value");

  auto* green = app.add_subcommand("green", "Green columns for the configured sources");
  auto* grad = app.add_subcommand("gradkernel", "gradient kernels for the configured sources");
  int axis = 0;
  grad->add_option("--axis", axis, "derivative axis");

  auto* rep = app.add_subcommand("represent", "compare kernel representation against direct solves");
  bool rep_gradient = false;
  int rep_samples = 10, rep_axis = 0;
  rep->add_flag("--gradient", rep_gradient, "use gradient kernels");
  rep->add_option("--axis", rep_axis, "derivative axis");
  rep->add_option("--samples", rep_samples, "random right-hand sides");

  auto* decay = app.add_subcommand("decay", "fit decay exponents of Green and gradient kernels");
  int decay_axis = 0;
  decay->add_option("--axis", decay_axis, "derivative axis");

  auto* riesz = app.add_subcommand("riesz", "Riesz potential of the configured source");
  double order = 1.0, p_exp = 4.0 / 3.0;
  riesz->add_option("--order", order, "potential order in (0, N)");
  riesz->add_option("--p", p_exp, "source exponent for the HLS ratio");

  auto* moser = app.add_subcommand("moser-bound", "iteration schedule and sup bound against the discrete solution");
  std::size_t members = 60;
  double m_gamma = 0.0, m_r = 0.0, m_rbar = 0.0, m_t = 0.0;
  moser->add_option("--gamma", m_gamma, "integrability exponent");
  moser->add_option("--r", m_r, "Sobolev exponent r");
  moser->add_option("--rbar", m_rbar, "exponent rbar in (2, r)");
  moser->add_option("--t", m_t, "gradient exponent t in (1, 2)");
  moser->add_option("--members", members, "Sobolev test family size");

  auto* sob = app.add_subcommand("sobolev-check", "empirical Sobolev constant over the test family");
  double s_r = 0.0, s_t = 0.0;
  sob->add_option("--r", s_r, "exponent r");
  sob->add_option("--t", s_t, "exponent t");
  sob->add_option("--members", members, "family size");

  auto* hold = app.add_subcommand("holder", "Holder seminorm of the solution");
  double tau = 0.5;
  std::size_t budget = 200000;
  hold->add_option("--tau", tau, "Holder exponent");
  hold->add_option("--budget", budget, "random pair budget");

  auto* weights = app.add_subcommand("weights", "distance weights or the pathological log-domain weight");
  bool pathological = false;
  int beta = 2, kmax = 10;
  std::vector<int> wdims{2, 3};
  double wgamma = 0.25, wp = 1.0;
  weights->add_flag("--pathological", pathological, "exact table for the log-domain weight");
  weights->add_option("--beta", beta, "integer beta >= 2");
  weights->add_option("--kmax", kmax, "last index (5..16)");
  weights->add_option("--N", wdims, "dimensions for the table");
  weights->add_option("--gamma", wgamma, "distance exponent");
  weights->add_option("--p", wp, "integrability exponent");

  auto* params = app.add_subcommand("params", "parameter selection and exponent ledger");
  int pN = 0;
  double pzeta = 0.0;
  params->add_option("--N", pN, "dimension 2..8");
  params->add_option("--zeta", pzeta, "zeta in (0, 1/120)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig c;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      c = config_from_json(json::parse(in));
    }
    if (dim) {
      c.dim = dim;
      if (static_cast<int>(c.intervals.size()) != dim) c.intervals.assign(static_cast<std::size_t>(dim), c.intervals.front());
      if (static_cast<int>(c.extent.size()) != dim) c.extent.assign(static_cast<std::size_t>(dim), c.extent.front());
    }
    if (intervals) c.intervals.assign(static_cast<std::size_t>(c.dim), intervals);
    if (tol > 0.0) c.tol = tol;
    if (rho_h > 0.0) c.rho_h = rho_h;
    if (app.count("--seed")) c.seed = seed;
    if (jobs) c.jobs = jobs;
    if (!out_dir.empty()) c.out_dir = out_dir;
    if (const char* env = std::getenv("GREEN_OUT_DIR"); env && *env) c.out_dir = env;
    if (m_gamma > 0.0) c.gamma = m_gamma;
    if (m_r > 0.0) c.r = m_r;
    if (m_rbar > 0.0) c.rbar = m_rbar;
    if (m_t > 0.0) c.t = m_t;
    if (s_r > 0.0) c.r = s_r;
    if (s_t > 0.0) c.t = s_t;
    if (pN) c.N = pN;
    if (pzeta > 0.0) c.zeta = pzeta;
    validate_config(c);

    if (*verify) {
      if (pairs == 0 || s_values == 0 || points < 2 || samples < 1) throw std::invalid_argument("verify-aux: sweep sizes must be positive");
      return cmd_verify_aux(c, pairs, samples, s_values, points);
    }
    if (*solve_cmd) return cmd_solve(c, export_system);
    if (*green) return cmd_green(c);
    if (*grad) return cmd_gradkernel(c, axis);
    if (*rep) return cmd_represent(c, rep_gradient, rep_axis, rep_samples);
    if (*decay) return cmd_decay(c, decay_axis);
    if (*riesz) return cmd_riesz(c, order, p_exp);
    if (*moser) return cmd_moser(c, members);
    if (*sob) return cmd_sobolev(c, members);
    if (*hold) return cmd_holder(c, tau, budget);
    if (*weights) return cmd_weights(c, pathological, beta, kmax, wdims, wgamma, wp);
    if (*params) return cmd_params(c);
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << " (achieved residual " << e.residual << ")\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace greenlab
