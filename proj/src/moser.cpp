#include "greenlab/moser.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "greenlab/auxfun.hpp"

namespace greenlab {

IterationSchedule schedule(double gamma, double r, double rbar, std::size_t terms) {
  if (!(rbar > 2.0)) throw std::invalid_argument("schedule: need rbar > 2");
  if (!(rbar < r)) throw std::invalid_argument("schedule: need rbar < r so that kappa > 1");
  if (!(gamma >= 1.0)) throw std::invalid_argument("schedule: need gamma >= 1");
  if (!(gamma > rbar) && !(gamma / rbar > 2.0 / 3.0 - kScheduleDelta))
    throw std::invalid_argument("schedule: condition gamma/rbar > 2/3 - delta (delta = 1e-4) fails");
  IterationSchedule s;
  s.gamma = gamma;
  s.r = r;
  s.rbar = rbar;
  s.kappa = r / rbar;
  double v = gamma / rbar;
  for (std::size_t m = 0; m < std::max<std::size_t>(terms, 1); ++m) {
    s.s.push_back(v);
    v *= s.kappa;
  }
  if (gamma <= rbar) {
    int m = 0;
    double sm = gamma / rbar;
    while (sm * s.kappa <= 1.0) {
      sm *= s.kappa;
      ++m;
    }
    s.m_gamma = m;
    while (s.s.size() < static_cast<std::size_t>(m) + 2) s.s.push_back(s.s.back() * s.kappa);
  }
  return s;
}

double geometric_s1(double kappa) {
  if (!(kappa > 1.0)) throw std::invalid_argument("geometric sums need kappa > 1");
  return 1.0 / (kappa - 1.0);
}

double geometric_s2(double kappa) {
  if (!(kappa > 1.0)) throw std::invalid_argument("geometric sums need kappa > 1");
  return kappa / ((kappa - 1.0) * (kappa - 1.0));
}

namespace {
void check_inputs(const SupBoundInputs& in) {
  if (!(in.C_sob > 0.0) || !(in.vol > 0.0) || !(in.a_norm >= 0.0) || !(in.u_gamma_norm >= 0.0))
    throw std::invalid_argument("sup bound inputs must be positive");
}
}  // namespace

double constant_C1(const SupBoundInputs& in) {
  check_inputs(in);
  return std::sqrt(18.0 * in.C_sob * in.C_sob * (in.vol + 2.0) * in.a_norm + 1.0);
}

double constant_c1(const IterationSchedule& s, const SupBoundInputs& in) {
  const double g = s.gamma, rb = s.rbar;
  return std::pow(g / rb, 4.0 * rb / g) * std::pow(constant_C1(in), rb / g);
}

double constant_c2(const IterationSchedule& s) { return std::pow(s.r / s.rbar, 4.0 * s.rbar / s.gamma); }

double weighted_sobolev_constant(double c_sob, double inv_b_norm) {
  if (!(c_sob > 0.0) || !(inv_b_norm > 0.0)) throw std::invalid_argument("weighted_sobolev_constant: positive inputs required");
  return c_sob * std::sqrt(inv_b_norm);
}

double sup_bound(const IterationSchedule& s, const SupBoundInputs& in) {
  if (s.lifting_needed()) throw std::invalid_argument("sup_bound: gamma <= rbar needs the lift chain first");
  check_inputs(in);
  const double log_b = geometric_s1(s.kappa) * std::log(constant_c1(s, in)) + geometric_s2(s.kappa) * std::log(constant_c2(s));
  return std::exp(log_b) * std::max(1.0, in.u_gamma_norm);
}

LiftChain lift_chain(const IterationSchedule& s, const SupBoundInputs& in, const std::vector<double>& k_s) {
  if (!s.lifting_needed()) throw std::invalid_argument("lift_chain: gamma > rbar needs no lifting");
  check_inputs(in);
  LiftChain c;
  c.m_gamma = s.m_gamma;
  for (int m = 0; m <= s.m_gamma; ++m) {
    const double k = static_cast<std::size_t>(m) < k_s.size() ? k_s[static_cast<std::size_t>(m)] : empirical_k_s(s.s[static_cast<std::size_t>(m)]);
    c.M = std::max(c.M, k);
  }
  c.c_gamma = 2.0 * in.C_sob * in.C_sob * kC0 * ((kC0 + 5.0) + c.M * (1.0 + in.vol) * in.a_norm);
  c.k1 = std::pow(c.c_gamma + (kK0 + 1.0) * (1.0 + in.vol) + 2.0, 2.0 / s.gamma);
  const int steps = s.m_gamma + 1;
  c.lifted_gamma = std::pow(s.kappa, steps) * s.gamma;
  c.lifted_norm = std::pow(c.k1, steps) * in.u_gamma_norm;
  for (int i = 1; i <= steps; ++i) c.lifted_norm += std::pow(c.k1, i);
  return c;
}

double sup_bound_any(const IterationSchedule& s, const SupBoundInputs& in, LiftChain* chain) {
  if (!s.lifting_needed()) return sup_bound(s, in);
  const LiftChain c = lift_chain(s, in);
  if (chain) *chain = c;
  SupBoundInputs lifted = in;
  lifted.u_gamma_norm = c.lifted_norm;
  return sup_bound(schedule(c.lifted_gamma, s.r, s.rbar), lifted);
}

double exterior_exponent(double gamma, double r, double rbar) {
  if (!(rbar < r)) throw std::invalid_argument("exterior_exponent: need rbar < r");
  return r * rbar / (gamma * (r - rbar));
}

double exterior_bound(double R, double gamma, double r, double rbar, double u_annulus_norm, double C) {
  if (!(R > 0.0)) throw std::invalid_argument("exterior_bound: R must be positive");
  if (!(gamma > rbar * (2.0 / 3.0 - 2.0 * kScheduleDelta)))
    throw std::invalid_argument("exterior_bound: gamma must exceed rbar (2/3 - 2 delta)");
  const double e = exterior_exponent(gamma, r, rbar);
  const double norm = gamma > rbar ? u_annulus_norm : u_annulus_norm + 1.0;
  return C * norm * std::pow(R, -e);
}

SupCheck check_sup(const DiscreteField& u, double bound) {
  if (!std::isfinite(bound)) throw std::invalid_argument("check_sup: bound must be finite");
  SupCheck c;
  for (double v : u) c.sup = std::max(c.sup, std::abs(v));
  c.holds = c.sup <= bound;
  c.margin = c.sup > 0.0 ? bound / c.sup : std::numeric_limits<double>::infinity();
  return c;
}

nlohmann::json schedule_to_json(const IterationSchedule& s) {
  nlohmann::json j;
  j["gamma"] = s.gamma;
  j["r"] = s.r;
  j["rbar"] = s.rbar;
  j["kappa"] = s.kappa;
  j["s"] = s.s;
  j["m_gamma"] = s.m_gamma;
  j["S1"] = geometric_s1(s.kappa);
  j["S2"] = geometric_s2(s.kappa);
  return j;
}

}  // namespace greenlab
