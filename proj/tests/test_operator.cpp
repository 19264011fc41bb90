#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "greenlab/operator.hpp"

using namespace greenlab;
using doctest::Approx;

namespace {
Mesh square(int intervals, const AdmissiblePreset& p = AdmissiblePreset::full_boundary()) {
  return mark_admissible(build_mesh(2, {intervals + 1, intervals + 1}, {1, 1}), p);
}

DiscreteField random_field(const Mesh& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DiscreteField v(m.size(), 0.0);
  for (std::size_t p = 0; p < m.size(); ++p)
    if (!m.constrained(p)) v[p] = u(rng);
  return v;
}
}  // namespace

TEST_CASE("five point stencil on 5x5") {
  const Mesh m = square(4);
  const WeightedOperator op = assemble(m, constant_field(m, 1.0));
  CHECK(op.system.rows() == 9);
  CHECK(op.system.cols() == 9);
  const Eigen::MatrixXd K(op.system);
  for (int i = 0; i < 9; ++i) CHECK(K(i, i) == Approx(4.0));
  CHECK((K - K.transpose()).norm() == 0.0);
  const WeightedOperator op2 = assemble(m, constant_field(m, 2.0));
  CHECK((Eigen::MatrixXd(op2.system) - 2.0 * K).norm() == Approx(0.0));
}

TEST_CASE("conservation on interior rows") {
  const Mesh m = square(8);
  const WeightedOperator op = assemble(m, diagonal_field(m, {ScalarField(m.size(), 1.0), ScalarField(m.size(), 4.0)}));
  const Eigen::MatrixXd F(op.full_system);
  int checked = 0;
  for (int j = 2; j <= 6; ++j)
    for (int i = 2; i <= 6; ++i) {
      const auto p = static_cast<Eigen::Index>(m.index(i, j));
      CHECK(std::abs(F.row(p).sum()) < 1e-12 * F(p, p));
      ++checked;
    }
  CHECK(checked == 25);
}

TEST_CASE("poisson on the unit square") {
  const Mesh m = square(64);
  const WeightedOperator op = assemble(m, constant_field(m, 1.0));
  SolveInfo info;
  const DiscreteField u = solve(op, DiscreteField(m.size(), 1.0), {}, &info);
  // discrete five-point oracle from an independent sparse direct solve
  CHECK(*std::max_element(u.begin(), u.end()) == Approx(0.0736571854907922).epsilon(1e-8));
  CHECK(info.residual <= 1e-10);
  CHECK(info.energy_defect <= 1e-8 * info.energy_scale);
  const DiscreteField z = solve(op, DiscreteField(m.size(), 0.0));
  for (double v : z) CHECK(v == 0.0);
}

TEST_CASE("pcg and direct agree") {
  const Mesh m = square(32);
  const WeightedOperator op = assemble(m, distance_field(m, {0.25, 0.0}));
  const DiscreteField f = random_field(m, 5);
  const DiscreteField a = solve(op, f, {1e-12, 0, SolverMethod::PCG});
  const DiscreteField b = solve(op, f, {1e-12, 0, SolverMethod::DIRECT});
  double d = 0.0, s = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p) {
    d = std::max(d, std::abs(a[p] - b[p]));
    s = std::max(s, std::abs(b[p]));
  }
  CHECK(d <= 1e-9 * s);
}

TEST_CASE("non-convergence raises a solver error") {
  const Mesh m = square(32);
  const WeightedOperator op = assemble(m, constant_field(m, 1.0));
  SolverOptions o;
  o.method = SolverMethod::PCG;
  o.max_iterations = 2;
  CHECK_THROWS_AS(solve(op, DiscreteField(m.size(), 1.0), o), SolverError);
}

TEST_CASE("lumped delta gives a Green matrix column and the matrix is symmetric") {
  const Mesh m = square(8);
  const WeightedOperator op = assemble(m, diagonal_field(m, {ScalarField(m.size(), 1.0), ScalarField(m.size(), 4.0)}));
  const Eigen::MatrixXd Kinv = Eigen::MatrixXd(op.system).inverse();
  CHECK((Kinv - Kinv.transpose()).norm() <= 1e-10 * Kinv.norm());
  const std::size_t y = m.index(3, 5);
  DiscreteField f(m.size(), 0.0);
  f[y] = 1.0 / m.cell_volume(y);
  const DiscreteField u = solve(op, f, {1e-13, 0, SolverMethod::DIRECT});
  const long cy = op.free_index[y];
  for (std::size_t p = 0; p < m.size(); ++p) {
    if (op.free_index[p] < 0) CHECK(u[p] == 0.0);
    else CHECK(u[p] == Approx(Kinv(op.free_index[p], cy)).epsilon(1e-10));
  }
}

TEST_CASE("energy norms") {
  const Mesh m = square(16);
  const WeightedOperator op = assemble(m, diagonal_field(m, {ScalarField(m.size(), 1.0), ScalarField(m.size(), 4.0)}));
  CHECK(energy_norm(op, DiscreteField(m.size(), 0.0)) == 0.0);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DiscreteField u = random_field(m, s);
    CHECK(b_energy_norm(op, u) <= energy_norm(op, u) * (1 + 1e-12));
    CHECK(bilinear(op, u, u) == Approx(energy_norm(op, u) * energy_norm(op, u)));
  }
}

TEST_CASE("norm equivalence ratio") {
  const Mesh m = square(16);
  std::vector<DiscreteField> samples;
  for (std::uint64_t s = 0; s < 50; ++s) samples.push_back(random_field(m, 100 + s));
  const RatioRange c = norm_equivalence_ratio(assemble(m, constant_field(m, 1.0)), samples);
  CHECK(c.min == Approx(1.0));
  CHECK(c.max == Approx(1.0));
  const RatioRange d = norm_equivalence_ratio(
      assemble(m, distance_field(m, {0.25, 0.0}, {1.0, 4.0})), samples);
  CHECK(d.min == Approx(1.0));
  CHECK(d.max == Approx(1.0));
  CHECK(d.used == 50);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  std::vector<double> e;
  for (std::size_t p = 0; p < m.size(); ++p) {
    const double off = u(rng);
    e.insert(e.end(), {1.0 + std::abs(off), off, off, 1.5 + std::abs(off)});
  }
  const RatioRange f = norm_equivalence_ratio(assemble(m, full_field(m, e)), samples);
  CHECK(f.min >= 1.0);
  CHECK(std::isfinite(f.max));
  CHECK(f.max > 1.0);
}

TEST_CASE("apply matches the system on free nodes") {
  const Mesh m = square(8, AdmissiblePreset::cube_face_complement());
  const WeightedOperator op = assemble(m, constant_field(m, 1.0));
  CHECK(op.free_count() == m.count(NodeClass::INTERIOR) + m.count(NodeClass::FREE_BOUNDARY));
  const DiscreteField u = random_field(m, 3);
  const DiscreteField ku = op.apply(u);
  const Eigen::VectorXd x = op.system * op.restrict_to_free(u);
  for (std::size_t i = 0; i < op.free_count(); ++i) CHECK(ku[op.free_nodes[i]] == Approx(x[static_cast<Eigen::Index>(i)]));
}
