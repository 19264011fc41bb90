#include <doctest.h>

#include <cmath>
#include <numbers>

#include "greenlab/mollifier.hpp"

using namespace greenlab;
using doctest::Approx;

TEST_CASE("support and plateau") {
  for (int N : {2, 3}) {
    const double rho = 0.1;
    const MollifierSpec s = make_mollifier(N, rho);
    CHECK(eval_psi_rho(s, {rho, 0, 0}, rho) == 0.0);
    CHECK(eval_psi_rho(s, {0.08, 0.07, 0}, rho) == 0.0);
    CHECK(eval_psi_rho(s, {0, 0, 0}, rho) == s.alpha_N * std::pow(rho, -N));
    CHECK(eval_psi_rho(s, {0.03, 0.03, 0}, rho) == s.alpha_N * std::pow(rho, -N));
    for (int l = 0; l < N; ++l) {
      CHECK(eval_grad_psi_rho(s, {0.02, 0.01, 0}, rho, l) == 0.0);
      CHECK(eval_grad_psi_rho(s, {0.2, 0.0, 0}, rho, l) == 0.0);
    }
    CHECK(profile_nu(s, 0.5) == Approx(1.0).epsilon(1e-12));
    CHECK(profile_nu(s, 1.0) == 0.0);
    CHECK(bump_eta(s, 0.5) == 0.0);
    CHECK(bump_eta(s, 0.75) > 0.0);
  }
}

TEST_CASE("unit mass") {
  for (int N : {2, 3})
    for (double rho : {0.05, 0.1, 0.2}) CHECK(std::abs(integrate_psi(make_mollifier(N, rho), rho) - 1.0) < 1e-6);
  CHECK(unit_sphere_area(2) == Approx(2 * std::numbers::pi));
  CHECK(unit_sphere_area(3) == Approx(4 * std::numbers::pi));
}

TEST_CASE("gradient matches central differences at 0.7 rho") {
  const double rho = 0.1, e = 1e-7 * rho;
  for (int N : {2, 3}) {
    const MollifierSpec s = make_mollifier(N, rho);
    const Point x = N == 2 ? Point{0.7 * rho * 0.6, 0.7 * rho * 0.8, 0} : Point{0.7 * rho * 0.48, 0.7 * rho * 0.6, 0.7 * rho * 0.64};
    for (int l = 0; l < N; ++l) {
      Point a = x, b = x;
      a[l] += e;
      b[l] -= e;
      const double fd = (eval_psi_rho(s, a, rho) - eval_psi_rho(s, b, rho)) / (2 * e);
      CHECK(std::abs(eval_grad_psi_rho(s, x, rho, l) - fd) <= 1e-6 * std::abs(fd));
    }
  }
}

TEST_CASE("projected sources") {
  const Mesh m = mark_admissible(build_mesh(2, {65, 65}, {1, 1}), AdmissiblePreset::full_boundary());
  const double h = m.h[0];
  const Point z{0.5, 0.5, 0};
  double raw = 0.0;
  const DiscreteField f = project_source(m, z, 6 * h, &raw);
  CHECK(std::abs(raw - 1.0) < 0.05);
  double mass = 0.0;
  for (std::size_t p = 0; p < m.size(); ++p) {
    mass += f[p] * m.cell_volume(p);
    const Point x = m.coord(p);
    if (std::hypot(x[0] - z[0], x[1] - z[1]) >= 6 * h) CHECK(f[p] == 0.0);
  }
  CHECK(mass == Approx(1.0).epsilon(1e-13));

  const DiscreteField d = project_source(m, {0.51, 0.5, 0}, 0.5 * h);
  std::size_t nz = 0;
  for (std::size_t p = 0; p < m.size(); ++p)
    if (d[p] != 0.0) {
      ++nz;
      CHECK(d[p] * m.cell_volume(p) == Approx(1.0));
      CHECK(p == m.nearest_node({0.51, 0.5, 0}));
    }
  CHECK(nz == 1);
}

TEST_CASE("dipole moment") {
  const Mesh m = mark_admissible(build_mesh(2, {65, 65}, {1, 1}), AdmissiblePreset::full_boundary());
  const double h = m.h[0];
  const Point z{0.5, 0.5, 0};
  for (double rho : {8 * h, 0.5 * h})
    for (int l : {0, 1}) {
      double raw = 0.0;
      const DiscreteField v = project_dipole(m, z, rho, l, &raw);
      double mom = 0.0, mass = 0.0;
      for (std::size_t p = 0; p < m.size(); ++p) {
        mom += v[p] * (m.coord(p)[l] - z[l]) * m.cell_volume(p);
        mass += v[p] * m.cell_volume(p);
      }
      CHECK(std::abs(mom + 1.0) < 1e-3);
      CHECK(std::abs(mass) < 1e-10);
      if (rho > h) CHECK(std::abs(raw + 1.0) < 0.05);
    }
}

TEST_CASE("source preconditions") {
  const Mesh m = mark_admissible(build_mesh(2, {33, 33}, {1, 1}), AdmissiblePreset::full_boundary());
  CHECK_THROWS_AS(project_source(m, {0.5, 0.5, 0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(project_source(m, {0.05, 0.5, 0}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(project_source(m, {0.0, 0.5, 0}, 0.001), std::invalid_argument);
  const Mesh a = mark_admissible(build_mesh(2, {33, 33}, {1, 1}), AdmissiblePreset::annulus_inner({0.5, 0.5, 0}, 0.1));
  CHECK_THROWS_AS(project_source(a, {0.5, 0.75, 0}, 0.1), std::invalid_argument);
}
