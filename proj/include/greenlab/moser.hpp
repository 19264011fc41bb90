#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "greenlab/types.hpp"

namespace greenlab {

inline constexpr double kScheduleDelta = 1e-4;

// s_m = kappa^m gamma / rbar with kappa = r / rbar
struct IterationSchedule {
  double gamma = 0.0;
  double r = 0.0;
  double rbar = 0.0;
  double kappa = 0.0;
  std::vector<double> s;
  int m_gamma = -1;  // max{m : s_m <= 1} when gamma <= rbar, else -1
  bool lifting_needed() const { return m_gamma >= 0; }
};

IterationSchedule schedule(double gamma, double r, double rbar, std::size_t terms = 16);

struct SupBoundInputs {
  double C_sob = 1.0;         // constant of the weighted Sobolev inequality
  double vol = 1.0;           // |Omega|
  double a_norm = 0.0;        // ||a|| in L^(rbar/(rbar-2))
  double u_gamma_norm = 0.0;  // ||u|| in L^gamma
};

// sum_{j>=1} kappa^-j and sum_{j>=1} j kappa^-j
double geometric_s1(double kappa);
double geometric_s2(double kappa);

double constant_C1(const SupBoundInputs& in);
double constant_c1(const IterationSchedule& s, const SupBoundInputs& in);
double constant_c2(const IterationSchedule& s);

// Sobolev constant in |||.|||_b form: C ||1/b||_{t/(2-t)}^{1/2}
double weighted_sobolev_constant(double c_sob, double inv_b_norm);

// c1^S1 c2^S2 max{1, ||u||_gamma}; requires gamma > rbar
double sup_bound(const IterationSchedule& s, const SupBoundInputs& in);

// Integrability lift for gamma <= rbar: L^gamma to L^(kappa^(m_gamma+1) gamma).
struct LiftChain {
  double M = 0.0;  // max k_s over s_0..s_{m_gamma}
  double c_gamma = 0.0;
  double k1 = 0.0;
  int m_gamma = 0;
  double lifted_gamma = 0.0;
  double lifted_norm = 0.0;  // k1^(m+1) ||w||_gamma + sum_{i=1}^{m+1} k1^i
};

// k_s from the certified sweep unless overridden
LiftChain lift_chain(const IterationSchedule& s, const SupBoundInputs& in, const std::vector<double>& k_s = {});

// sup_bound in either regime; gamma <= rbar goes through lift_chain first
double sup_bound_any(const IterationSchedule& s, const SupBoundInputs& in, LiftChain* chain = nullptr);

double exterior_exponent(double gamma, double r, double rbar);
// C ||u|| R^-e, or C (||u|| + 1) R^-e when gamma <= rbar
double exterior_bound(double R, double gamma, double r, double rbar, double u_annulus_norm, double C);

struct SupCheck {
  bool holds = true;
  double margin = 0.0;  // bound / max|u|; +inf when u == 0
  double sup = 0.0;
};

SupCheck check_sup(const DiscreteField& u, double bound);

nlohmann::json schedule_to_json(const IterationSchedule& s);

}  // namespace greenlab
