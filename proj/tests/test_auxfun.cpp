#include <doctest.h>

#include <cmath>

#include "greenlab/auxfun.hpp"

using namespace greenlab;
using doctest::Approx;

TEST_CASE("power truncation branches") {
  const PowerTruncationParams p(2.0, 3.0);
  CHECK(eval_trunc(p, 2.0, 0) == Approx(4.0));
  CHECK(eval_trunc(p, 3.0, 0) == Approx(9.0));
  CHECK(p.eta_sl + 3.0 * p.a_sl + p.b_sl / 3.0 == Approx(9.0));
  CHECK(p.eta_sl == Approx(-27.0));
  CHECK(p.a_sl == Approx(9.0));
  CHECK(p.b_sl == Approx(27.0));
  CHECK(eval_trunc(p, 6.0, 0) == Approx(31.5));
  CHECK(eval_trunc(p, 6.0, 1) == Approx(8.25));
  CHECK(eval_trunc(p, -6.0, 0) == Approx(31.5));
  CHECK(eval_trunc(p, -6.0, 1) == Approx(-8.25));
  // junction: value and slope continuous at |t| = l
  CHECK(eval_trunc(p, 3.0 - 1e-9, 1) == Approx(eval_trunc(p, 3.0 + 1e-9, 1)).epsilon(1e-7));
}

TEST_CASE("G = F F'") {
  const PowerTruncationParams p(2.0, 3.0);
  CHECK(eval_trunc_G(p, 1.0, 0) == Approx(2.0));
  CHECK(eval_trunc_G(p, 0.0, 0) == 0.0);
  CHECK(eval_trunc_G(p, 2.0, 1) == Approx(24.0));
  CHECK(eval_trunc_G(p, -1.0, 0) == Approx(-2.0));
}

TEST_CASE("smoothed power and cutoff profile") {
  CHECK(eval_smoothed(SmoothedPowerParams(1.0), 1.0, 0) == Approx(1.0));
  CHECK(eval_smoothed(SmoothedPowerParams(0.7), 1.0, 1) == Approx(0.7));
  CHECK(eval_smoothed(SmoothedPowerParams(0.7), 2.0, 0) == Approx(1.6245047927124710).epsilon(1e-12));
  CHECK(eval_theta(1.0, 0) == Approx(1.0));
  CHECK(eval_theta(1.0, 1) == Approx(0.0));
  CHECK(eval_theta(3.0, 0) == 1.0);
  CHECK(eval_smoothed(SmoothedPowerParams(0.8), 0.0, 0) == 0.0);
  // theta'(t) by finite differences
  const double t = 0.37, e = 1e-6;
  CHECK(eval_theta(t, 1) == Approx((eval_theta(t + e, 0) - eval_theta(t - e, 0)) / (2 * e)).epsilon(1e-7));
  CHECK(eval_fbar(0.5) == 0.0);
  CHECK(eval_fbar(-2.5) == 2.5);
}

TEST_CASE("phi_beta") {
  CHECK(eval_phi_beta(1.5, -1.0, 0) == 0.0);
  CHECK(eval_phi_beta(1.5, 0.25, 0) == Approx(0.125));
  CHECK(eval_phi_beta(1.5, 2.0, 0) == Approx(2.5));
}

TEST_CASE("pointwise inequalities at the worked points") {
  const PowerTruncationParams p(2.0, 3.0);
  const double lhs = std::abs(3.0 * eval_trunc(p, 3.0, 1));
  const double rhs = 4.0 * 2.0 * eval_trunc(p, 3.0, 0);
  CHECK(lhs == Approx(18.0));
  CHECK(rhs - lhs == Approx(54.0));
  CHECK(std::abs(eval_trunc_G(p, 0.5, 0)) == Approx(0.25));
  CHECK(2.0 * std::pow(eval_trunc(p, 0.5, 0), 1.5) == Approx(0.25));
  CHECK(eval_trunc(p, 4.0, 0) <= eval_trunc(PowerTruncationParams(2.0, 5.0), 4.0, 0));
  CHECK(eval_trunc(PowerTruncationParams(2.0, 5.0), 4.0, 0) == Approx(16.0));
  const SmoothedPowerParams q(0.67);
  const double d1 = eval_smoothed(q, 0.5, 1);
  CHECK(kC0 * eval_smoothed_G(q, 0.5, 1) - d1 * d1 > 0.0);
  CHECK(kK0 == Approx(std::pow(3.0 / 8.0 * (1.0 + 10.0 / 3.0 + 5.0), 2)));
}

TEST_CASE("h polynomial and evaluator agree") {
  for (double s : {2.0 / 3.0, 0.8, 1.0})
    for (double t : {0.1, 0.5, 0.9}) CHECK(h_poly(1.0, s, t) == Approx(h_ratio(1.0, s, t)).epsilon(1e-10));
}

TEST_CASE("certifiers pass on small sweeps") {
  const auto trunc = certify_trunc(default_trunc_sweep(10, 200, 3));
  CHECK(all_pass(trunc));
  CHECK(trunc.size() >= 6);
  const auto sm = certify_smoothed(default_smoothed_sweep(6, 200, 4));
  CHECK(all_pass(sm));
  std::vector<double> tg;
  for (int i = 0; i <= 1000; ++i) tg.push_back(i / 1000.0);
  const auto app = certify_appendix(tg, {2.0 / 3.0 - kDelta, 0.8, 1.0});
  CHECK(all_pass(app));
  bool found = false;
  for (const auto& r : app)
    if (r.id == "sos_remainder_quartic") {
      found = true;
      CHECK(r.constants.at("remainder") == Approx(3.55556).epsilon(1e-5));
    }
  CHECK(found);
  const auto j = reports_to_json(app);
  CHECK(j.size() == app.size());
  CHECK(!reports_table(app).empty());
}

TEST_CASE("a violated inequality is reported") {
  AuxReport r;
  r.pass = false;
  CHECK(!all_pass({r}));
  r.informational = true;
  CHECK(all_pass({r}));
}
