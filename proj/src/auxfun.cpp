#include "greenlab/auxfun.hpp"

#include <cmath>
#include <stdexcept>

namespace greenlab {

namespace {

void check_order(int order, int max_order) {
  if (order < 0 || order > max_order) throw std::invalid_argument("order out of range");
}

double sgn(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

// q(a) = a^2 - 10/3 a + 5 and the collected brackets of the first two derivatives
double q_poly(double a) { return a * a - 10.0 / 3.0 * a + 5.0; }
double p1_poly(double s, double a) { return (2.5 + s) * a * a - (5.0 + 10.0 * s / 3.0) * a + 2.5 + 5.0 * s; }
double r_poly(double s, double a) {
  return (3.75 + 4.0 * s + s * s) * a * a - (2.5 + 20.0 * s / 3.0 + 10.0 * s * s / 3.0) * a - 1.25 + 5.0 * s * s;
}
double k_poly(double s, double a) {
  const double c4 = 10.0 + 9.0 * s + 2.0 * s * s;
  const double c3 = 40.0 + 140.0 * s / 3.0 + 40.0 * s * s / 3.0;
  const double c2 = 190.0 / 3.0 + 950.0 * s / 9.0 + 380.0 * s * s / 9.0;
  const double c1 = 100.0 / 3.0 + 100.0 * s + 200.0 * s * s / 3.0;
  const double c0 = 25.0 * s + 50.0 * s * s;
  return (((c4 * a - c3) * a + c2) * a - c1) * a + c0;
}

}  // namespace

PowerTruncationParams::PowerTruncationParams(double s_, double l_) : s(s_), l(l_) {
  if (!(s > 1.0)) throw std::invalid_argument("power truncation needs s > 1");
  if (!(l >= 3.0)) throw std::invalid_argument("power truncation needs l >= 3");
  const double ls = std::pow(l, s);
  eta_sl = (1.0 - s * s) * ls;
  a_sl = 0.5 * s * (s + 1.0) * ls / l;
  b_sl = 0.5 * s * (s - 1.0) * ls * l;
}

SmoothedPowerParams::SmoothedPowerParams(double s_) : s(s_) {
  if (!(s > 0.5 && s <= 1.0)) throw std::invalid_argument("smoothed power needs s in (1/2, 1]");
}

double eval_trunc(const PowerTruncationParams& p, double t, int order) {
  check_order(order, 2);
  const double a = std::abs(t);
  const double s = p.s;
  if (a <= p.l) {
    switch (order) {
      case 0: return std::pow(a, s);
      case 1: return sgn(t) * s * std::pow(a, s - 1.0);
      default: return s * (s - 1.0) * std::pow(a, s - 2.0);
    }
  }
  switch (order) {
    case 0: return p.eta_sl + p.a_sl * a + p.b_sl / a;
    case 1: return sgn(t) * (p.a_sl - p.b_sl / (a * a));
    default: return 2.0 * p.b_sl / (a * a * a);
  }
}

double eval_trunc_G(const PowerTruncationParams& p, double t, int order) {
  check_order(order, 1);
  const double a = std::abs(t);
  const double s = p.s;
  if (a < p.l) {
    if (order == 0) return sgn(t) * s * std::pow(a, 2.0 * s - 1.0);
    return s * (2.0 * s - 1.0) * std::pow(a, 2.0 * s - 2.0);
  }
  const double f = eval_trunc(p, t, 0), f1 = eval_trunc(p, t, 1);
  if (order == 0) return f * f1;
  return f1 * f1 + f * eval_trunc(p, t, 2);
}

double eval_theta(double t, int order) {
  check_order(order, 2);
  const double a = std::abs(t);
  if (a > 1.0) return order == 0 ? 1.0 : 0.0;
  if (a == 0.0 && order > 0) throw std::domain_error("theta derivative is singular at t = 0");
  switch (order) {
    case 0: return 0.375 * std::sqrt(a) * q_poly(a);
    case 1: return sgn(t) * 0.375 / std::sqrt(a) * (2.5 * a * a - 5.0 * a + 2.5);
    default: return 0.375 * std::pow(a, -1.5) * (3.75 * a * a - 2.5 * a - 1.25);
  }
}

double eval_smoothed(const SmoothedPowerParams& p, double t, int order) {
  check_order(order, 2);
  const double a = std::abs(t);
  const double s = p.s;
  if (a > 1.0) {
    switch (order) {
      case 0: return std::pow(a, s);
      case 1: return sgn(t) * s * std::pow(a, s - 1.0);
      default: return s * (s - 1.0) * std::pow(a, s - 2.0);
    }
  }
  if (a == 0.0) {
    if (order == 2) throw std::domain_error("second derivative of the smoothed power is singular at t = 0");
    return 0.0;
  }
  switch (order) {
    case 0: return 0.375 * std::pow(a, s + 0.5) * q_poly(a);
    case 1: return sgn(t) * 0.375 * std::pow(a, s - 0.5) * p1_poly(s, a);
    default: return 0.375 * std::pow(a, s - 1.5) * r_poly(s, a);
  }
}

double eval_smoothed_G(const SmoothedPowerParams& p, double t, int order) {
  check_order(order, 1);
  const double a = std::abs(t);
  const double s = p.s;
  if (a > 1.0) {
    if (order == 0) return sgn(t) * s * std::pow(a, 2.0 * s - 1.0);
    return s * (2.0 * s - 1.0) * std::pow(a, 2.0 * s - 2.0);
  }
  if (order == 0) return sgn(t) * (9.0 / 64.0) * std::pow(a, 2.0 * s) * q_poly(a) * p1_poly(s, a);
  return (9.0 / 64.0) * std::pow(a, 2.0 * s - 1.0) * k_poly(s, a);
}

double eval_fbar(double t) { return std::abs(t) <= 1.0 ? 0.0 : std::abs(t); }

double eval_phi_beta(double beta, double t, int order) {
  check_order(order, 1);
  if (!(beta > 1.0 && beta < 2.0)) throw std::invalid_argument("phi_beta needs beta in (1, 2)");
  if (t <= 0.0) return 0.0;
  if (t < 1.0) return order == 0 ? std::pow(t, beta) : beta * std::pow(t, beta - 1.0);
  return order == 0 ? beta * (t - 1.0) + 1.0 : beta;
}

double h_poly(double alpha, double s, double t) {
  const double p1 = p1_poly(s, t);
  return alpha * p1 * p1 + q_poly(t) * r_poly(s, t);
}

double h_ratio(double alpha, double s, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("h_ratio needs t in (0, 1]");
  const SmoothedPowerParams p(s);
  const double f1 = eval_smoothed(p, t, 1);
  const double num = alpha * f1 * f1 + eval_smoothed(p, t, 0) * eval_smoothed(p, t, 2);
  return num / ((9.0 / 64.0) * std::pow(t, 2.0 * s - 1.0));
}

}  // namespace greenlab
