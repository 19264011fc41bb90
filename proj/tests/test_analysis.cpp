#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "greenlab/analysis.hpp"
#include "greenlab/operator.hpp"

using namespace greenlab;
using doctest::Approx;

namespace {
Mesh square(int intervals) {
  return mark_admissible(build_mesh(2, {intervals + 1, intervals + 1}, {1, 1}), AdmissiblePreset::full_boundary());
}
}  // namespace

TEST_CASE("t lower bounds are exact rationals") {
  CHECK(t_lower_bound(3) == Rational(11, 7));
  CHECK(t_lower_bound(2) == Rational(10, 7));
  CHECK(fraction_string(t_lower_bound(3)) == "11/7");
  CHECK(exponent_r(3, 1.8) == Approx(13.0 / 3.0));
  CHECK(1.8 * 3 / (3 - 1.8) == Approx(4.5));
}

TEST_CASE("pick_parameters invariants") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0 / 120.0);
  for (int N = 2; N <= 8; ++N)
    for (int i = 0; i < 50; ++i) {
      double z = u(rng);
      if (z == 0.0) z = 1e-6;
      const ParameterSelection p = pick_parameters(N, z);
      CHECK(parameter_violations(p).empty());
      CHECK(p.t > static_cast<double>(p.lower_bound));
      CHECK(p.t < 2.0);
      CHECK(p.rbar > 2.0);
      CHECK(p.rbar < p.r);
      CHECK(p.r < p.t_star);
      CHECK(1.0 / p.r == Approx((1.0 + p.epsilon) / 2.0 - 1.0 / N).epsilon(1e-12));
    }
  const ParameterSelection p = pick_parameters(3, 0.005);
  CHECK(p.t == Approx(1.9975));
  CHECK_THROWS_AS(pick_parameters(9, 0.005), std::invalid_argument);
  CHECK_THROWS_AS(pick_parameters(3, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(pick_parameters(3, 0.0), std::invalid_argument);
  ParameterSelection bad = p;
  bad.rbar = bad.r + 1;
  CHECK(!parameter_violations(bad).empty());
}

TEST_CASE("lp norms") {
  const Mesh m = square(32);
  CHECK(lp_norm(m, DiscreteField(m.size(), 1.0), 1.0) == Approx(1.0).epsilon(1e-13));
  CHECK(lp_norm(m, DiscreteField(m.size(), 2.0), 2.0) == Approx(2.0).epsilon(1e-13));
  CHECK(lp_norm(m, DiscreteField(m.size(), -2.0), 3.0) == Approx(2.0).epsilon(1e-13));
  CHECK_THROWS_AS(lp_norm(m, DiscreteField(m.size(), 1.0), 0.5), std::invalid_argument);
}

TEST_CASE("nodal gradient is exact on linear fields") {
  const Mesh m = square(16);
  DiscreteField u(m.size());
  for (std::size_t p = 0; p < m.size(); ++p) u[p] = 2 * m.coord(p)[0] - 3 * m.coord(p)[1];
  for (const auto& g : nodal_gradient(m, u)) {
    CHECK(g[0] == Approx(2.0));
    CHECK(g[1] == Approx(-3.0));
  }
  CHECK(weighted_gradient_norm(m, u, ScalarField(m.size(), 1.0)) == Approx(std::sqrt(13.0)));
}

TEST_CASE("sobolev ratio") {
  auto sine = [](const Mesh& m) {
    DiscreteField v(m.size());
    for (std::size_t p = 0; p < m.size(); ++p)
      v[p] = m.on_box_boundary(p) ? 0.0 : std::sin(std::numbers::pi * m.coord(p)[0]) * std::sin(std::numbers::pi * m.coord(p)[1]);
    return v;
  };
  const Mesh a = square(64), b = square(128);
  const auto ra = sobolev_ratio(a, sine(a), 4.0, 1.8);
  const auto rb = sobolev_ratio(b, sine(b), 4.0, 1.8);
  REQUIRE(ra.has_value());
  REQUIRE(rb.has_value());
  CHECK(std::abs(*ra - *rb) <= 0.05 * *rb);
  DiscreteField v = sine(a);
  for (double& x : v) x *= -7.5;
  CHECK(*sobolev_ratio(a, v, 4.0, 1.8) == Approx(*ra).epsilon(1e-13));
  CHECK(!sobolev_ratio(a, DiscreteField(a.size(), 0.0), 4.0, 1.8).has_value());
  CHECK_THROWS_AS(sobolev_ratio(a, DiscreteField(a.size(), 1.0), 4.0, 1.8), std::invalid_argument);
}

TEST_CASE("empirical Sobolev constant grows with the family") {
  const Mesh m = square(32);
  const auto fam = sobolev_family(m, 60, 5);
  CHECK(fam.size() >= 60);
  for (const auto& v : fam)
    for (std::size_t p = 0; p < m.size(); ++p)
      if (m.constrained(p)) CHECK(v[p] == 0.0);
  const SobolevEstimate e = empirical_sobolev_constant(m, fam, 4.0, 1.8);
  CHECK(e.used == fam.size());
  for (std::size_t i = 1; i < e.running_max.size(); ++i) CHECK(e.running_max[i] >= e.running_max[i - 1]);
  CHECK(e.constant == e.running_max.back());
  CHECK(e.constant > 0.0);
}

TEST_CASE("holder seminorm") {
  const Mesh m = square(32);
  const HolderEstimate c = holder_seminorm(m, DiscreteField(m.size(), 3.0), 0.5);
  CHECK(c.seminorm == 0.0);
  DiscreteField x(m.size());
  for (std::size_t p = 0; p < m.size(); ++p) x[p] = m.coord(p)[0];
  CHECK(holder_seminorm(m, x, 1.0).seminorm == Approx(1.0).epsilon(1e-12));
  DiscreteField q(m.size());
  for (std::size_t p = 0; p < m.size(); ++p) q[p] = std::sin(5 * m.coord(p)[0]) * m.coord(p)[1];
  const HolderEstimate h = holder_seminorm(m, q, 0.5);
  for (double& v : q) v *= 2.0;
  CHECK(holder_seminorm(m, q, 0.5).seminorm == Approx(2.0 * h.seminorm).epsilon(1e-14));
  CHECK(!h.histogram.empty());
  CHECK(h.pairs > 0);
  CHECK_THROWS_AS(holder_seminorm(m, q, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(holder_seminorm(m, q, 0.5, 100), std::invalid_argument);
}

TEST_CASE("holder seminorm of the degenerate solution is refinement stable") {
  double prev = 0.0;
  for (int n : {64, 128}) {
    const Mesh m = square(n);
    const WeightedOperator op = assemble(m, distance_field(m, {0.25, 0.0}));
    const double s = holder_seminorm(m, solve(op, DiscreteField(m.size(), 1.0)), 0.5).seminorm;
    if (prev > 0.0) CHECK(std::abs(s - prev) < 0.2 * prev);
    prev = s;
  }
}

TEST_CASE("exponent ledger") {
  const Rational theta(1, 10), zeta = theta / 4;
  const Rational inv_r = Rational(1) / Rational(13, 3);
  const ExponentLedger l = exponent_ledger(3, theta, zeta, inv_r);
  CHECK(l.all_identities_hold());
  CHECK(l.identities.size() == 8);
  CHECK(l.epsilon == Rational(2) * (inv_r + Rational(1, 3)) - 1);
  bool flagged = false;
  for (const auto& s : l.steps) {
    if (s.statement == "grad u in L^{1/N}") {
      flagged = true;
      CHECK(s.exponent_below_one);
      CHECK(s.displayed_exponent == Rational(1, 3));
    }
    CHECK(s.valid_index);
  }
  CHECK(flagged);
  CHECK(l.m0 >= 1);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> num(1, 249);
  for (int i = 0; i < 20; ++i) {
    const Rational th(num(rng), 1000);
    const ExponentLedger r = exponent_ledger(3, th, th / 4, inv_r);
    CHECK(r.identities[3].holds);
    CHECK(r.identities[3].lhs == Rational(2) / 3 - th / 12);
  }
  CHECK_THROWS_AS(exponent_ledger(3, zeta, theta, inv_r), std::invalid_argument);
  CHECK(ledger_to_json(l)["steps"].size() == l.steps.size());
}
