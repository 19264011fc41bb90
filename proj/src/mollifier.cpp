#include "greenlab/mollifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace greenlab {

namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

double raw_bump(double xi) {
  if (xi <= 0.5 || xi >= 1.0) return 0.0;
  return std::exp(-1.0 / ((xi - 0.5) * (1.0 - xi)));
}

// Fixed composite Gauss rule: smooth in the endpoints, so differences of
// profile values stay accurate.
template <class F>
double quad(F f, double a, double b) {
  if (b <= a) return 0.0;
  constexpr int panels = 16;
  const double w = (b - a) / panels;
  double s = 0.0;
  for (int i = 0; i < panels; ++i) s += gauss<double, 20>::integrate(f, a + i * w, a + (i + 1) * w);
  return s;
}

double min_width(const Mesh& m) {
  double h = m.h[0];
  for (int k = 1; k < m.dim; ++k) h = std::min(h, m.h[k]);
  return h;
}

double distance(const Mesh& m, const Point& a, const Point& b) {
  double s = 0.0;
  for (int k = 0; k < m.dim; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

void check_source(const Mesh& mesh, const Point& z, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("source: rho must be positive");
  for (int k = 0; k < mesh.dim; ++k)
    if (!std::isfinite(z[k])) throw std::invalid_argument("source: non-finite position");
  if (rho >= min_width(mesh) && mesh.boundary_distance(z) < rho)
    throw std::invalid_argument("source: ball B(z, rho) leaves the domain");
  const std::size_t near = mesh.nearest_node(z);
  if (mesh.constrained(near) || mesh.boundary_distance(z) < 0.0)
    throw std::invalid_argument("source: z lies on the constrained set");
}

}  // namespace

double unit_sphere_area(int dim) {
  const double n = dim;
  return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

MollifierSpec make_mollifier(int dim, double rho) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("make_mollifier: dim must be 1..3");
  if (!(rho > 0.0)) throw std::invalid_argument("make_mollifier: rho must be positive");
  MollifierSpec s;
  s.dim = dim;
  s.rho = rho;
  // both constants are independent of rho
  static const std::array<std::array<double, 2>, 3> table = [] {
    std::array<std::array<double, 2>, 3> t{};
    const double c = 1.0 / quad(raw_bump, 0.5, 1.0);
    for (int d = 1; d <= 3; ++d) {
      const double moment = quad([&](double r) { return c * raw_bump(r) * std::pow(r, d); }, 0.5, 1.0);
      t[static_cast<std::size_t>(d - 1)] = {c, d / (unit_sphere_area(d) * moment)};
    }
    return t;
  }();
  s.bump_normalizer = table[static_cast<std::size_t>(dim - 1)][0];
  s.alpha_N = table[static_cast<std::size_t>(dim - 1)][1];
  return s;
}

double bump_eta(const MollifierSpec& spec, double xi) { return spec.bump_normalizer * raw_bump(xi); }

double profile_nu(const MollifierSpec& spec, double xi) {
  if (xi <= 0.5) return 1.0;
  if (xi >= 1.0) return 0.0;
  return quad([&](double r) { return bump_eta(spec, r); }, xi, 1.0);
}

double eval_psi_rho(const MollifierSpec& spec, const Point& x, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("eval_psi_rho: rho must be positive");
  double r2 = 0.0;
  for (int k = 0; k < spec.dim; ++k) r2 += x[k] * x[k];
  const double xi = std::sqrt(r2) / rho;
  return std::pow(rho, -spec.dim) * spec.alpha_N * profile_nu(spec, xi);
}

double eval_grad_psi_rho(const MollifierSpec& spec, const Point& x, double rho, int axis) {
  if (!(rho > 0.0)) throw std::invalid_argument("eval_grad_psi_rho: rho must be positive");
  if (axis < 0 || axis >= spec.dim) throw std::invalid_argument("eval_grad_psi_rho: axis out of range");
  double r2 = 0.0;
  for (int k = 0; k < spec.dim; ++k) r2 += x[k] * x[k];
  const double r = std::sqrt(r2);
  if (r == 0.0) return 0.0;
  const double eta = bump_eta(spec, r / rho);
  if (eta == 0.0) return 0.0;
  return -std::pow(rho, -spec.dim - 1) * spec.alpha_N * eta * x[axis] / r;
}

double integrate_psi(const MollifierSpec& spec, double rho, double tol) {
  const int n = spec.dim;
  const auto radial = [&](double r) { return std::pow(rho, -n) * spec.alpha_N * profile_nu(spec, r / rho) * std::pow(r, n - 1); };
  const double plateau = gauss_kronrod<double, 31>::integrate(radial, 0.0, 0.5 * rho, 10, tol);
  const double shell = gauss_kronrod<double, 31>::integrate(radial, 0.5 * rho, rho, 10, tol);
  return unit_sphere_area(n) * (plateau + shell);
}

DiscreteField project_source(const Mesh& mesh, const Point& z, double rho, double* raw_mass) {
  check_source(mesh, z, rho);
  DiscreteField v(mesh.size(), 0.0);
  const MollifierSpec spec = make_mollifier(mesh.dim, rho);
  double mass = 0.0;
  if (rho >= min_width(mesh)) {
    for (std::size_t p = 0; p < mesh.size(); ++p) {
      const Point x = mesh.coord(p);
      if (distance(mesh, x, z) >= rho) continue;
      if (mesh.node_class[p] == NodeClass::HOLE) throw std::invalid_argument("project_source: ball meets a hole");
      Point d{};
      for (int k = 0; k < mesh.dim; ++k) d[k] = x[k] - z[k];
      v[p] = eval_psi_rho(spec, d, rho);
      mass += v[p] * mesh.cell_volume(p);
    }
  }
  if (raw_mass) *raw_mass = mass;
  if (mass > 0.0) {
    for (double& x : v) x /= mass;
    return v;
  }
  const std::size_t p = mesh.nearest_node(z);
  std::fill(v.begin(), v.end(), 0.0);
  v[p] = 1.0 / mesh.cell_volume(p);
  return v;
}

DiscreteField project_dipole(const Mesh& mesh, const Point& z, double rho, int axis, double* raw_moment) {
  if (axis < 0 || axis >= mesh.dim) throw std::invalid_argument("project_dipole: axis out of range");
  check_source(mesh, z, rho);
  DiscreteField v(mesh.size(), 0.0);
  const MollifierSpec spec = make_mollifier(mesh.dim, rho);
  double moment = 0.0;
  if (rho >= min_width(mesh)) {
    for (std::size_t p = 0; p < mesh.size(); ++p) {
      const Point x = mesh.coord(p);
      if (distance(mesh, x, z) >= rho) continue;
      if (mesh.node_class[p] == NodeClass::HOLE) throw std::invalid_argument("project_dipole: ball meets a hole");
      Point d{};
      for (int k = 0; k < mesh.dim; ++k) d[k] = x[k] - z[k];
      v[p] = eval_grad_psi_rho(spec, d, rho, axis);
      moment += v[p] * d[axis] * mesh.cell_volume(p);
    }
  }
  if (raw_moment) *raw_moment = moment;
  if (moment < 0.0) {
    for (double& x : v) x /= -moment;
    return v;
  }
  // centred difference of two lumped deltas
  std::fill(v.begin(), v.end(), 0.0);
  const std::size_t c = mesh.nearest_node(z);
  auto ix = mesh.multi_index(c);
  if (ix[axis] == 0 || ix[axis] == mesh.n[axis] - 1) throw std::invalid_argument("project_dipole: no room for a centred dipole");
  auto lo = ix, hi = ix;
  --lo[axis];
  ++hi[axis];
  const std::size_t pl = mesh.index(lo[0], lo[1], lo[2]), ph = mesh.index(hi[0], hi[1], hi[2]);
  const double h = mesh.h[axis];
  v[pl] = 1.0 / (2.0 * h * mesh.cell_volume(pl));
  v[ph] = -1.0 / (2.0 * h * mesh.cell_volume(ph));
  return v;
}

}  // namespace greenlab
