#include <doctest.h>

#include <cmath>

#include "greenlab/auxfun.hpp"
#include "greenlab/moser.hpp"

using namespace greenlab;
using doctest::Approx;

TEST_CASE("schedules") {
  const IterationSchedule s = schedule(6, 4, 3);
  CHECK(s.kappa == Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(s.s[0] == Approx(2.0));
  CHECK(s.s[1] == Approx(8.0 / 3.0));
  CHECK(s.s[2] == Approx(32.0 / 9.0));
  CHECK(!s.lifting_needed());
  for (std::size_t m = 0; m + 1 < s.s.size(); ++m) CHECK(std::abs(s.s[m + 1] / s.s[m] - s.kappa) <= 1e-14);
  const IterationSchedule l = schedule(2.5, 4, 3);
  CHECK(l.s[0] == Approx(5.0 / 6.0));
  CHECK(l.m_gamma == 0);
  CHECK(l.lifting_needed());
  CHECK_THROWS_WITH_AS(schedule(1, 4, 3), doctest::Contains("2/3 - delta"), std::invalid_argument);
  CHECK_THROWS_AS(schedule(6, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(schedule(6, 4, 2), std::invalid_argument);
}

TEST_CASE("geometric sums") {
  CHECK(geometric_s1(4.0 / 3.0) == Approx(3.0).epsilon(1e-14));
  CHECK(geometric_s2(4.0 / 3.0) == Approx(12.0).epsilon(1e-14));
  for (double k : {1.01, 1.2, 4.0 / 3.0, 2.0, 7.5}) {
    CHECK(std::abs(geometric_s1(k) * (k - 1) - 1) <= 1e-12);
    CHECK(std::abs(geometric_s2(k) * (k - 1) * (k - 1) / k - 1) <= 1e-12);
    double a = 0, b = 0;
    for (int j = 1; j < 20000; ++j) {
      a += std::pow(k, -j);
      b += j * std::pow(k, -j);
    }
    CHECK(geometric_s1(k) == Approx(a).epsilon(1e-9));
    CHECK(geometric_s2(k) == Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("constants and bound") {
  const IterationSchedule s = schedule(6, 4, 3);
  SupBoundInputs in{2.0, 1.0, 0.5, 0.3};
  CHECK(constant_C1(in) == Approx(std::sqrt(18 * 4.0 * 3.0 * 0.5 + 1)));
  CHECK(constant_c1(s, in) == Approx(std::pow(2.0, 2.0) * std::pow(constant_C1(in), 0.5)));
  CHECK(constant_c2(s) == Approx(std::pow(4.0 / 3.0, 2.0)));
  const double b = sup_bound(s, in);
  CHECK(b == Approx(std::pow(constant_c1(s, in), 3.0) * std::pow(constant_c2(s), 12.0)));
  SupBoundInputs big = in;
  big.u_gamma_norm = 5.0;
  CHECK(sup_bound(s, big) == Approx(5.0 * b));
  big.a_norm = 2.0;
  CHECK(sup_bound(s, big) >= 5.0 * b);
  CHECK_THROWS_AS(sup_bound(schedule(2.5, 4, 3), in), std::invalid_argument);
  CHECK(weighted_sobolev_constant(2.0, 4.0) == Approx(4.0));
}

TEST_CASE("bound tends to max{1, norm} as the constants tend to 1") {
  const IterationSchedule s = schedule(1e12, 4.0, 3.0);
  CHECK(constant_c2(s) == Approx(1.0).epsilon(1e-9));
  CHECK(constant_c1(s, {1.0, 1.0, 1.0, 0.5}) == Approx(1.0).epsilon(1e-9));
  CHECK(sup_bound(s, {1.0, 1.0, 1.0, 0.5}) == Approx(1.0).epsilon(1e-8));
  CHECK(sup_bound(s, {1.0, 1.0, 1.0, 7.0}) == Approx(7.0).epsilon(1e-8));
}

TEST_CASE("lift chain") {
  const IterationSchedule s = schedule(2.5, 4, 3);
  SupBoundInputs in{1.5, 1.0, 0.4, 0.2};
  LiftChain c;
  const double b = sup_bound_any(s, in, &c);
  CHECK(c.m_gamma == 0);
  CHECK(c.lifted_gamma == Approx(2.5 * 4.0 / 3.0));
  CHECK(c.lifted_norm == Approx(c.k1 * 0.2 + c.k1));
  CHECK(b > 0.0);
  CHECK(std::isfinite(b));
  const LiftChain d = lift_chain(s, in, {2.0});
  CHECK(d.M == 2.0);
  CHECK(d.c_gamma == Approx(2 * 1.5 * 1.5 * kC0 * ((kC0 + 5) + 2.0 * 2.0 * 0.4)));
  CHECK(d.k1 == Approx(std::pow(d.c_gamma + 13.25 * 2.0 + 2.0, 2.0 / 2.5)));
  CHECK_THROWS_AS(lift_chain(schedule(6, 4, 3), in), std::invalid_argument);
}

TEST_CASE("exterior bound") {
  CHECK(exterior_exponent(6, 4, 3) == Approx(2.0));
  const double a = exterior_bound(0.2, 6, 4, 3, 0.7, 3.0);
  CHECK(exterior_bound(0.4, 6, 4, 3, 0.7, 3.0) == Approx(a / 4.0));
  CHECK(exterior_bound(0.2, 2.5, 4, 3, 0.7, 3.0) == Approx(3.0 * 1.7 * std::pow(0.2, -exterior_exponent(2.5, 4, 3))));
  CHECK_THROWS_AS(exterior_bound(0.0, 6, 4, 3, 0.7, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(exterior_bound(0.2, 1.9, 4, 3, 0.7, 3.0), std::invalid_argument);
}

TEST_CASE("sup checks") {
  const SupCheck z = check_sup(std::vector<double>(10, 0.0), 1.0);
  CHECK(z.holds);
  CHECK(std::isinf(z.margin));
  const SupCheck f = check_sup({0.0, 0.0737, -0.01}, 0.01);
  CHECK(!f.holds);
  CHECK(f.margin == Approx(0.01 / 0.0737));
  CHECK(f.margin == Approx(0.136).epsilon(0.01));
  CHECK(check_sup({0.0737}, 1.0).holds);
  const auto j = schedule_to_json(schedule(6, 4, 3));
  CHECK(j.contains("kappa"));
}
