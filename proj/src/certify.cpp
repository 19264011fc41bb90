#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "greenlab/auxfun.hpp"

namespace greenlab {

namespace {

// Tracks the worst sample of an inequality lhs <= rhs.
class SlackTracker {
 public:
  SlackTracker(std::string id, std::string sweep, double threshold = 1e-9) : threshold_(threshold) {
    r_.id = std::move(id);
    r_.sweep = std::move(sweep);
    r_.worst_relative = std::numeric_limits<double>::infinity();
    r_.worst_slack = std::numeric_limits<double>::infinity();
  }

  void le(double lhs, double rhs, std::initializer_list<double> loc, double scale = -1.0) {
    const double slack = rhs - lhs;
    if (scale < 0.0) scale = std::max(std::abs(lhs), std::abs(rhs));
    record(slack, scale, loc);
  }

  // |a - b| as a negative slack, scaled by `scale`
  void eq(double a, double b, std::initializer_list<double> loc, double scale = -1.0) {
    if (scale < 0.0) scale = std::max(std::abs(a), std::abs(b));
    record(-std::abs(a - b), scale, loc);
  }

  AuxReport finish(std::string note = {}) {
    if (r_.samples == 0) {
      r_.worst_relative = 0.0;
      r_.worst_slack = 0.0;
    }
    r_.pass = r_.worst_relative >= -threshold_ && std::isfinite(r_.worst_relative);
    r_.note = std::move(note);
    return r_;
  }

  AuxReport& report() { return r_; }

 private:
  void record(double slack, double scale, std::initializer_list<double> loc) {
    ++r_.samples;
    double rel;
    if (!std::isfinite(slack)) {
      rel = -std::numeric_limits<double>::infinity();
    } else {
      rel = scale > 0.0 ? slack / scale : (slack >= 0.0 ? 0.0 : -std::numeric_limits<double>::infinity());
    }
    if (rel < r_.worst_relative || r_.worst_location.empty()) {
      r_.worst_relative = rel;
      r_.worst_slack = slack;
      r_.scale = scale;
      r_.worst_location.assign(loc.begin(), loc.end());
    }
  }

  AuxReport r_;
  double threshold_;
};

double trunc_branch(const PowerTruncationParams& p, double a, int order, bool outer) {
  const double s = p.s;
  if (!outer) {
    switch (order) {
      case 0: return std::pow(a, s);
      case 1: return s * std::pow(a, s - 1.0);
      default: return s * (s - 1.0) * std::pow(a, s - 2.0);
    }
  }
  switch (order) {
    case 0: return p.eta_sl + p.a_sl * a + p.b_sl / a;
    case 1: return p.a_sl - p.b_sl / (a * a);
    default: return 2.0 * p.b_sl / (a * a * a);
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

// Central difference of f at t with step h.
double central(const std::function<double(double)>& f, double t, double h) { return (f(t + h) - f(t - h)) / (2.0 * h); }

}  // namespace

nlohmann::json report_to_json(const AuxReport& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["sweep"] = r.sweep;
  j["worst_slack"] = r.worst_slack;
  j["worst_relative"] = r.worst_relative;
  j["scale"] = r.scale;
  j["worst_location"] = r.worst_location;
  j["samples"] = r.samples;
  j["pass"] = r.pass;
  j["informational"] = r.informational;
  j["constants"] = r.constants;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::json reports_to_json(const std::vector<AuxReport>& reports) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : reports) a.push_back(report_to_json(r));
  return a;
}

std::string reports_table(const std::vector<AuxReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(36) << "id" << std::setw(8) << "pass" << std::setw(14) << "worst_rel" << std::setw(10)
     << "samples" << "location\n";
  for (const auto& r : reports) {
    os << std::left << std::setw(36) << r.id << std::setw(8) << (r.informational ? "info" : (r.pass ? "yes" : "NO"))
       << std::setw(14) << fmt(r.worst_relative) << std::setw(10) << r.samples;
    for (double v : r.worst_location) os << fmt(v) << ' ';
    os << '\n';
  }
  return os.str();
}

bool all_pass(const std::vector<AuxReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const AuxReport& r) { return r.informational || r.pass; });
}

std::vector<double> chebyshev_grid(std::size_t n, double a, double b) {
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = 0.5 * (a + b);
    return g;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
    g[n - 1 - i] = 0.5 * (a + b) + 0.5 * (b - a) * c;
  }
  return g;
}

TruncSweep default_trunc_sweep(std::size_t n_pairs, std::size_t n_t, std::uint64_t seed) {
  TruncSweep sw;
  sw.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> us(1.0, 4.0), ul(3.0, 20.0);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    double s = us(rng);
    if (s <= 1.0) s = std::nextafter(1.0, 2.0);
    sw.pairs.emplace_back(s, ul(rng));
  }
  sw.unit_grid = chebyshev_grid(n_t, -4.0, 4.0);
  return sw;
}

std::vector<AuxReport> certify_trunc(const TruncSweep& sw) {
  const std::string desc = std::to_string(sw.pairs.size()) + " (s,l) pairs x " + std::to_string(sw.unit_grid.size()) +
                           " Chebyshev t/l in [-4,4] + " + std::to_string(sw.random_per_pair) + " random t";
  SlackTracker lin("trunc_tF1_le_4sF", desc);
  SlackTracker grad("trunc_F1sq_le_s2G1", desc);
  SlackTracker powid("trunc_G_eq_sF_pow", "|t| <= 1 samples of every pair", 1e-10);
  SlackTracker mono("trunc_monotone_in_l", desc + ", k = l + U(0,10]");
  SlackTracker junc("trunc_junction_C1", "F, F', F'' at t = +-l");
  SlackTracker convex("trunc_F2_nonnegative", desc);
  SlackTracker parity("trunc_parity", desc, 0.0);

  std::mt19937_64 rng(sw.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), dk(0.0, 10.0);

  for (const auto& [s, l] : sw.pairs) {
    const PowerTruncationParams p(s, l);
    const double k = l + std::max(dk(rng), 1e-3);
    const PowerTruncationParams pk(s, k);

    std::vector<double> ts;
    ts.reserve(sw.unit_grid.size() + sw.random_per_pair);
    for (double u : sw.unit_grid) ts.push_back(u * l);
    for (std::size_t i = 0; i < sw.random_per_pair; ++i) ts.push_back(4.0 * l * unit(rng));

    for (double t : ts) {
      const double f = eval_trunc(p, t, 0);
      const double f1 = eval_trunc(p, t, 1);
      const double f2 = eval_trunc(p, t, 2);
      lin.le(std::abs(t * f1), 4.0 * s * f, {s, l, t});
      if (t != 0.0) grad.le(f1 * f1, s * s * eval_trunc_G(p, t, 1), {s, l, t});
      mono.le(f, eval_trunc(pk, t, 0), {s, l, t}, std::max(std::abs(f), 1.0));
      convex.le(0.0, f2, {s, l, t}, std::max(std::abs(f2), 1e-300));
      parity.eq(f, eval_trunc(p, -t, 0), {s, l, t});
      parity.eq(f1, -eval_trunc(p, -t, 1), {s, l, t});
      parity.eq(eval_trunc_G(p, t, 0), -eval_trunc_G(p, -t, 0), {s, l, t});
    }
    // equality on |t| <= 1
    for (double u : sw.unit_grid) {
      const double t = u / 4.0;
      const double f = eval_trunc(p, t, 0);
      powid.eq(std::abs(eval_trunc_G(p, t, 0)), s * std::pow(f, 2.0 - 1.0 / s), {s, l, t});
    }
    for (int order = 0; order <= 2; ++order) {
      const double in = trunc_branch(p, l, order, false);
      const double out = trunc_branch(p, l, order, true);
      junc.eq(in, out, {s, l, static_cast<double>(order)});
    }
  }

  std::vector<AuxReport> out;
  out.push_back(lin.finish());
  out.push_back(grad.finish());
  out.push_back(powid.finish());
  out.push_back(mono.finish());
  out.push_back(junc.finish());
  out.push_back(convex.finish());
  out.push_back(parity.finish());
  return out;
}

SmoothedSweep default_smoothed_sweep(std::size_t n_s, std::size_t n_t, std::uint64_t seed) {
  SmoothedSweep sw;
  sw.seed = seed;
  const double lo = 2.0 / 3.0 - kDelta;
  for (std::size_t i = 1; i <= n_s; ++i) sw.s_grid.push_back(lo + (1.0 - lo) * static_cast<double>(i) / static_cast<double>(n_s));
  sw.t_grid = chebyshev_grid(n_t, -3.0, 3.0);
  return sw;
}

double empirical_k_s(double s, std::size_t n_t) {
  const SmoothedPowerParams p(s);
  double k = s;  // |t| > 1 gives exactly s
  for (std::size_t i = 1; i < n_t; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n_t - 1);
    const double f = eval_smoothed(p, t, 0);
    if (f <= 0.0) continue;
    k = std::max(k, std::abs(eval_smoothed_G(p, t, 0)) / std::pow(f, 2.0 - 1.0 / s));
  }
  return k;
}

std::vector<AuxReport> certify_smoothed(const SmoothedSweep& sw) {
  const std::string desc = std::to_string(sw.s_grid.size()) + " s in (2/3-1e-4, 1] x " + std::to_string(sw.t_grid.size()) +
                           " Chebyshev t in [-3,3] + " + std::to_string(sw.random_per_s) + " random t";
  SlackTracker grad("smoothed_F1sq_le_c0_G1", desc);
  SlackTracker lin("smoothed_tF1_le_5F", desc);
  SlackTracker lower("smoothed_Fbar_le_F_pow", desc);
  SlackTracker upper("smoothed_F_pow_le_Fbar_k0", desc);
  SlackTracker gpow("smoothed_G_le_ks_F_pow", "|t| <= 1, k_s = empirical max");
  SlackTracker junc("smoothed_junction_C1", "F, F', F'' at t = +-1");
  SlackTracker hfloor("h_floor_window", desc + ", t in [0,1]");
  SlackTracker hwide("h_floor_wider_delta", "s in (2/3-0.05, 2/3-1e-4], t in [0,1]");

  std::mt19937_64 rng(sw.seed);
  std::uniform_real_distribution<double> unit(-3.0, 3.0);
  double c_needed = 0.0;
  double ks_max = 0.0;

  for (double s : sw.s_grid) {
    const SmoothedPowerParams p(s);
    std::vector<double> ts(sw.t_grid);
    for (std::size_t i = 0; i < sw.random_per_s; ++i) ts.push_back(unit(rng));
    const double ks = empirical_k_s(s, 4001);
    ks_max = std::max(ks_max, ks);
    for (double t : ts) {
      const double f = eval_smoothed(p, t, 0);
      const double f1 = eval_smoothed(p, t, 1);
      if (t != 0.0) {
        const double g1 = eval_smoothed_G(p, t, 1);
        grad.le(f1 * f1, kC0 * g1, {s, t});
        if (g1 > 0.0) c_needed = std::max(c_needed, f1 * f1 / g1);
      }
      lin.le(std::abs(t * f1), 5.0 * f, {s, t});
      const double root = std::pow(f, 1.0 / s);
      lower.le(eval_fbar(t), root, {s, t});
      upper.le(root, eval_fbar(t) + kK0, {s, t});
      if (std::abs(t) <= 1.0 && f > 0.0)
        gpow.le(std::abs(eval_smoothed_G(p, t, 0)), ks * std::pow(f, 2.0 - 1.0 / s), {s, t});
      if (t >= 0.0 && t <= 1.0) hfloor.le(1e-3, h_poly(1.0, s, t), {s, t});
    }
    // junction at |t| = 1: inner formulas against |t|^s
    const double inner[3] = {0.375 * (1.0 - 10.0 / 3.0 + 5.0), 0.375 * (2.5 + s - 5.0 - 10.0 * s / 3.0 + 2.5 + 5.0 * s),
                             0.375 * (3.75 + 4.0 * s + s * s - 2.5 - 20.0 * s / 3.0 - 10.0 * s * s / 3.0 - 1.25 + 5.0 * s * s)};
    const double outer[3] = {1.0, s, s * (s - 1.0)};
    for (int o = 0; o < 3; ++o) junc.eq(inner[o], outer[o], {s, static_cast<double>(o)}, std::max(1.0, std::abs(outer[o])));
  }
  for (int i = 0; i < 200; ++i) {
    const double s = 2.0 / 3.0 - 0.05 + (0.05 - kDelta) * (i + 1) / 200.0;
    for (int j = 0; j <= 2000; ++j) {
      const double t = j / 2000.0;
      hwide.le(1e-3, h_poly(1.0, s, t), {s, t});
    }
  }

  std::vector<AuxReport> out;
  auto g = grad.finish("c0 = 1e6 from alpha0 = 1 - 1e-6");
  g.constants["c0"] = kC0;
  g.constants["c_empirical_min"] = c_needed;
  out.push_back(g);
  out.push_back(lin.finish());
  auto lo = lower.finish();
  lo.constants["k0"] = kK0;
  out.push_back(lo);
  auto up = upper.finish();
  up.constants["k0"] = kK0;
  out.push_back(up);
  auto gp = gpow.finish();
  gp.informational = true;
  gp.constants["k_s_max"] = ks_max;
  out.push_back(gp);
  out.push_back(junc.finish());
  auto hf = hfloor.finish();
  hf.constants["delta"] = kDelta;
  out.push_back(hf);
  auto hw = hwide.finish("recorded only");
  hw.informational = true;
  out.push_back(hw);
  return out;
}

std::vector<AuxReport> certify_appendix(const std::vector<double>& t_grid, const std::vector<double>& s_grid) {
  const std::string tdesc = std::to_string(t_grid.size()) + " t in [0,1]";
  const std::string stdesc = tdesc + " x " + std::to_string(s_grid.size()) + " s";
  std::vector<AuxReport> out;
  const double th = 1e-10;

  {  // d/dt[t^(1/2)(t^2 - 10/3 t + 5)]
    SlackTracker tr("identity_sqrt_profile_derivative", tdesc, th);
    for (double t : t_grid) {
      if (t <= 0.0) continue;
      const double rt = std::sqrt(t);
      const double lhs = rt * (-10.0 / 3.0 + 2.0 * t) + (5.0 - 10.0 * t / 3.0 + t * t) / (2.0 * rt);
      const double rhs = (2.5 * t * t - 5.0 * t + 2.5) / rt;
      const double scale = (2.5 * t * t + 5.0 * t + 2.5) / rt;
      tr.eq(lhs, rhs, {t}, scale);
    }
    out.push_back(tr.finish());
  }
  {  // d/dt[5/(2 sqrt t) - 5 sqrt t + 5/2 t^(3/2)]
    SlackTracker tr("identity_sqrt_profile_second", tdesc, th);
    for (double t : t_grid) {
      if (t <= 0.0) continue;
      const double rt = std::sqrt(t);
      const double lhs = -5.0 / (4.0 * t * rt) - 5.0 / (2.0 * rt) + 15.0 * rt / 4.0;
      const double rhs = std::pow(t, -1.5) * (-1.25 - 2.5 * t + 3.75 * t * t);
      const double scale = std::pow(t, -1.5) * (1.25 + 2.5 * t + 3.75 * t * t);
      tr.eq(lhs, rhs, {t}, scale);
    }
    out.push_back(tr.finish());
  }
  {  // d/dt[t^(s+1/2)(t^2 - 10/3 t + 5)]
    SlackTracker tr("identity_smoothed_first", stdesc, th);
    for (double s : s_grid)
      for (double t : t_grid) {
        if (t <= 0.0) continue;
        const double a = std::pow(t, s + 0.5), b = std::pow(t, s - 0.5);
        const double lhs = a * (-10.0 / 3.0 + 2.0 * t) + (0.5 + s) * b * (5.0 - 10.0 * t / 3.0 + t * t);
        const double rhs = b * ((2.5 + s) * t * t - (5.0 + 10.0 * s / 3.0) * t + 2.5 + 5.0 * s);
        const double scale = b * ((2.5 + s) * t * t + (5.0 + 10.0 * s / 3.0) * t + 2.5 + 5.0 * s);
        tr.eq(lhs, rhs, {s, t}, scale);
      }
    out.push_back(tr.finish());
  }
  {  // second derivative: raw product-rule output against the collected bracket
    SlackTracker tr("identity_smoothed_second", stdesc, th);
    for (double s : s_grid)
      for (double t : t_grid) {
        if (t <= 0.0) continue;
        const double a = std::pow(t, s + 0.5), b = std::pow(t, s - 0.5);
        const double h = 0.5 + s;
        const double lhs = -5.0 * h * b - 10.0 / 3.0 * s * h * b + 2.5 * a + s * a + t * (2.5 * h * b + s * h * b) +
                           (2.5 * h * b + 5.0 * s * h * b) / t - (2.5 * a + 5.0 * s * a) / (t * t);
        const double c = std::pow(t, s - 1.5);
        const double rhs = c * ((3.75 + 4.0 * s + s * s) * t * t - (2.5 + 20.0 * s / 3.0 + 10.0 * s * s / 3.0) * t - 1.25 +
                                5.0 * s * s);
        const double scale = c * ((3.75 + 4.0 * s + s * s) * t * t + (2.5 + 20.0 * s / 3.0 + 10.0 * s * s / 3.0) * t +
                                  1.25 + 5.0 * s * s);
        tr.eq(lhs, rhs, {s, t}, scale);
      }
    out.push_back(tr.finish());
  }
  {  // d/dt[t^(2s) q(t) P(t)] against t^(2s-1) k(s, t)
    SlackTracker tr("identity_G_derivative", stdesc, th);
    for (double s : s_grid)
      for (double t : t_grid) {
        if (t <= 0.0) continue;
        const double a = std::pow(t, 2.0 * s), b = std::pow(t, 2.0 * s - 1.0);
        const double q = 5.0 - 10.0 * t / 3.0 + t * t;
        const double P = 2.5 + 5.0 * s - (5.0 + 10.0 * s / 3.0) * t + (2.5 + s) * t * t;
        const double lhs = a * (-5.0 - 10.0 * s / 3.0 + 2.0 * (2.5 + s) * t) * q + a * (-10.0 / 3.0 + 2.0 * t) * P +
                           2.0 * s * b * q * P;
        const double c4 = 10.0 + 9.0 * s + 2.0 * s * s, c3 = 40.0 + 140.0 * s / 3.0 + 40.0 * s * s / 3.0;
        const double c2 = 190.0 / 3.0 + 950.0 * s / 9.0 + 380.0 * s * s / 9.0;
        const double c1 = 100.0 / 3.0 + 100.0 * s + 200.0 * s * s / 3.0, c0 = 25.0 * s + 50.0 * s * s;
        const double rhs = b * ((((c4 * t - c3) * t + c2) * t - c1) * t + c0);
        const double scale = b * ((((c4 * t + c3) * t + c2) * t + c1) * t + c0);
        tr.eq(lhs, rhs, {s, t}, scale);
      }
    out.push_back(tr.finish());
  }
  const auto quartic = [](double t) { return 50.0 - 200.0 * t / 3.0 + 380.0 * t * t / 9.0 - 40.0 * t * t * t / 3.0 + 2.0 * t * t * t * t; };
  {  // sum-of-squares form of the s^2 coefficient
    SlackTracker tr("identity_quartic_sos", tdesc, th);
    double gmin = std::numeric_limits<double>::infinity(), argmin = 0.0;
    for (double t : t_grid) {
      const double u = t * t - 10.0 / 3.0 * t + 1.0;
      const double lhs = 2.0 * u * u + 16.0 * (t - 80.0 / 48.0) * (t - 80.0 / 48.0) - 16.0 * (25.0 / 9.0) + 48.0;
      const double rhs = quartic(t);
      const double scale = 50.0 + 200.0 * t / 3.0 + 380.0 * t * t / 9.0 + 40.0 * t * t * t / 3.0 + 2.0 * t * t * t * t;
      tr.eq(lhs, rhs, {t}, scale);
      if (rhs < gmin) {
        gmin = rhs;
        argmin = t;
      }
    }
    out.push_back(tr.finish());

    AuxReport rem;
    rem.id = "sos_remainder_quartic";
    rem.sweep = "48 - 16 (5/3)^2 against 3.55556";
    const double value = 48.0 - 16.0 * (25.0 / 9.0);
    rem.worst_slack = 1e-4 - std::abs(value - 3.55556);
    rem.worst_relative = rem.worst_slack;
    rem.samples = 1;
    rem.pass = rem.worst_slack >= 0.0;
    rem.constants["remainder"] = value;
    out.push_back(rem);

    AuxReport mn;
    mn.id = "quartic_grid_minimum";
    mn.sweep = tdesc;
    mn.samples = t_grid.size();
    mn.worst_location = {argmin};
    mn.constants["minimum"] = gmin;
    mn.constants["argmin"] = argmin;
    mn.worst_slack = std::min(gmin - 3.0, 1e-3 - std::abs(gmin - 128.0 / 9.0));
    mn.worst_relative = mn.worst_slack;
    mn.pass = gmin > 3.0 && std::abs(gmin - 128.0 / 9.0) <= 1e-3;
    out.push_back(mn);
  }
  {  // k(s, t) collected in t against collected in s
    SlackTracker tr("identity_k_collect_s", stdesc, th);
    for (double s : s_grid)
      for (double t : t_grid) {
        const double c4 = 10.0 + 9.0 * s + 2.0 * s * s, c3 = 40.0 + 140.0 * s / 3.0 + 40.0 * s * s / 3.0;
        const double c2 = 190.0 / 3.0 + 950.0 * s / 9.0 + 380.0 * s * s / 9.0;
        const double c1 = 100.0 / 3.0 + 100.0 * s + 200.0 * s * s / 3.0, c0 = 25.0 * s + 50.0 * s * s;
        const double lhs = c0 - c1 * t + c2 * t * t - c3 * t * t * t + c4 * t * t * t * t;
        const double k0 = -100.0 * t / 3.0 + 190.0 * t * t / 3.0 - 40.0 * t * t * t + 10.0 * t * t * t * t;
        const double k1 = 25.0 - 100.0 * t + 950.0 * t * t / 9.0 - 140.0 * t * t * t / 3.0 + 9.0 * t * t * t * t;
        const double rhs = k0 + s * s * quartic(t) + s * k1;
        const double scale = c0 + c1 * t + c2 * t * t + c3 * t * t * t + c4 * t * t * t * t;
        tr.eq(lhs, rhs, {s, t}, scale);
      }
    out.push_back(tr.finish());
  }
  {  // second sum-of-squares quartic
    SlackTracker tr("identity_quartic_sos_second", tdesc, th);
    for (double t : t_grid) {
      const double u = t * t - 30.0 / 11.0 * t + 2.0;
      const double v = t - (99.0 * 70.0) / (3.0 * 2174.0);
      const double lhs = 11.0 * u * u + 2174.0 / 99.0 * v * v + 6747.0 / 1087.0;
      const double rhs = 75.0 - 500.0 * t / 3.0 + 1330.0 * t * t / 9.0 - 60.0 * t * t * t + 11.0 * t * t * t * t;
      const double scale = 75.0 + 500.0 * t / 3.0 + 1330.0 * t * t / 9.0 + 60.0 * t * t * t + 11.0 * t * t * t * t;
      tr.eq(lhs, rhs, {t}, scale);
    }
    out.push_back(tr.finish());
  }
  {  // 5 q(t) - P(t) collected in t
    SlackTracker tr("identity_five_q_minus_p", stdesc, th);
    for (double s : s_grid)
      for (double t : t_grid) {
        const double lhs = 5.0 * (t * t - 10.0 / 3.0 * t + 5.0) - ((2.5 + s) * t * t - (5.0 + 10.0 * s / 3.0) * t + 2.5 + 5.0 * s);
        const double rhs = 22.5 - 5.0 * s + (-35.0 / 3.0 + 10.0 * s / 3.0) * t + (2.5 - s) * t * t;
        const double scale = 25.0 + 50.0 / 3.0 * t + 5.0 * t * t + (2.5 + s) * t * t + (5.0 + 10.0 * s / 3.0) * t + 2.5 + 5.0 * s;
        tr.eq(lhs, rhs, {s, t}, scale);
      }
    out.push_back(tr.finish());
  }
  {  // h(1, 2/3, t): collected, expanded and sum-of-squares forms
    SlackTracker tr("identity_h_two_thirds", tdesc + ", three forms", th);
    const double s = 2.0 / 3.0;
    double hmin = std::numeric_limits<double>::infinity(), argmin = 0.0;
    for (double t : t_grid) {
      const double expanded = 350.0 / 9.0 - 3500.0 * t / 27.0 + 12350.0 * t * t / 81.0 - 2080.0 * t * t * t / 27.0 +
                              152.0 * t * t * t * t / 9.0;
      const double u = t * t - 1040.0 / 456.0 * t + 1.25;
      const double v = t - 285.0 / 383.0;
      const double sos = 152.0 / 9.0 * u * u + 3830.0 / 171.0 * v * v - 3830.0 / 171.0 * (285.0 / 383.0) * (285.0 / 383.0) +
                         225.0 / 18.0;
      const double collected = h_poly(1.0, s, t);
      const double scale = 350.0 / 9.0 + 3500.0 * t / 27.0 + 12350.0 * t * t / 81.0 + 2080.0 * t * t * t / 27.0 +
                           152.0 * t * t * t * t / 9.0;
      tr.eq(collected, expanded, {t}, scale);
      tr.eq(sos, expanded, {t}, scale);
      if (expanded < hmin) {
        hmin = expanded;
        argmin = t;
      }
    }
    out.push_back(tr.finish());

    AuxReport rem;
    rem.id = "sos_remainder_h_two_thirds";
    rem.sweep = "-3830/171 (285/383)^2 + 225/18 against 0.0979112";
    const double value = -3830.0 / 171.0 * (285.0 / 383.0) * (285.0 / 383.0) + 225.0 / 18.0;
    rem.worst_slack = 1e-4 - std::abs(value - 0.0979112);
    rem.worst_relative = rem.worst_slack;
    rem.samples = 1;
    rem.pass = rem.worst_slack >= 0.0;
    rem.constants["remainder"] = value;
    out.push_back(rem);

    AuxReport mn;
    mn.id = "h_two_thirds_grid_minimum";
    mn.sweep = tdesc;
    mn.samples = t_grid.size();
    mn.worst_location = {argmin};
    mn.constants["minimum"] = hmin;
    mn.worst_slack = hmin - 1e-2;
    mn.worst_relative = mn.worst_slack;
    mn.pass = hmin > 1e-2;
    out.push_back(mn);
  }
  {  // h floor over the exponent window
    SlackTracker tr("h_floor", stdesc);
    double hmin = std::numeric_limits<double>::infinity();
    for (double s : s_grid)
      for (double t : t_grid) {
        const double h = h_poly(1.0, s, t);
        hmin = std::min(hmin, h);
        tr.le(1e-3, h, {s, t});
      }
    auto r = tr.finish();
    r.constants["minimum"] = hmin;
    out.push_back(r);
  }
  {  // h from the evaluators against the polynomial form
    SlackTracker tr("h_definition_consistency", stdesc + ", alpha in {alpha0, 1}", th);
    for (double s : s_grid)
      for (double t : t_grid) {
        if (t <= 0.0) continue;
        for (double alpha : {kAlpha0, 1.0}) {
          const double p1 = (2.5 + s) * t * t - (5.0 + 10.0 * s / 3.0) * t + 2.5 + 5.0 * s;
          const double q = t * t - 10.0 / 3.0 * t + 5.0;
          const double scale = alpha * p1 * p1 + q * ((3.75 + 4.0 * s + s * s) * t * t +
                                                      (2.5 + 20.0 * s / 3.0 + 10.0 * s * s / 3.0) * t + 1.25 + 5.0 * s * s);
          tr.eq(h_ratio(alpha, s, t), h_poly(alpha, s, t), {s, t, alpha}, scale);
        }
      }
    out.push_back(tr.finish());
  }
  {  // printed first-derivative brackets (5/2 + s) and (5/2 + 5s) against differences of F
    double err_a = 0.0, err_b = 0.0, err_second = 0.0;
    for (double s : s_grid) {
      const SmoothedPowerParams p(s);
      const auto F = [&](double t) { return eval_smoothed(p, t, 0); };
      const auto F1 = [&](double t) { return eval_smoothed(p, t, 1); };
      for (double t = 0.1; t <= 0.9 + 1e-12; t += 0.1) {
        const double fd = central(F, t, 1e-5);
        const double pre = 0.375 * std::pow(t, s - 0.5);
        const double form_a = pre * ((2.5 + s) * t * t - (5.0 + 10.0 * s / 3.0) * t + 2.5 + 5.0 * s);
        const double form_b = pre * ((2.5 + 5.0 * s) * t * t - (5.0 + 10.0 * s / 3.0) * t + 2.5 + 5.0 * s);
        err_a = std::max(err_a, std::abs(form_a - fd) / std::abs(fd));
        err_b = std::max(err_b, std::abs(form_b - fd) / std::abs(fd));
        const double fd2 = central(F1, t, 1e-5);
        err_second = std::max(err_second, std::abs(eval_smoothed(p, t, 2) - fd2) / std::max(std::abs(fd2), 1.0));
      }
    }
    AuxReport r;
    r.id = "printed_derivative_brackets";
    r.sweep = "central differences at t = 0.1..0.9 for every s";
    r.informational = true;
    r.pass = err_a < 1e-6 && err_second < 1e-6;
    r.constants["rel_err_bracket_5/2+s"] = err_a;
    r.constants["rel_err_bracket_5/2+5s"] = err_b;
    r.constants["rel_err_collected_second"] = err_second;
    r.note = err_a < 1e-6 && err_b > 1e-3 ? "bracket (5/2+s) matches; (5/2+5s) does not"
                                           : "bracket comparison inconclusive";
    out.push_back(r);
  }
  return out;
}

}  // namespace greenlab
