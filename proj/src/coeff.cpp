#include "greenlab/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <stdexcept>

#include <Eigen/Dense>

namespace greenlab {

namespace {

bool is_interior(const Mesh& mesh, std::size_t p) {
  return !mesh.on_box_boundary(p) && mesh.node_class[p] != NodeClass::HOLE;
}

void compute_envelopes(CoefficientField& f) {
  const std::size_t np = f.envelope_b.size();
  const int d = f.dim;
  for (std::size_t p = 0; p < np; ++p) {
    if (f.diagonal) {
      double lo = f.at(p, 0, 0), hi = lo;
      for (int a = 1; a < d; ++a) {
        lo = std::min(lo, f.at(p, a, a));
        hi = std::max(hi, f.at(p, a, a));
      }
      f.envelope_b[p] = lo;
      f.envelope_bbar[p] = hi;
    } else {
      Eigen::MatrixXd m(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = f.at(p, i, j);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
      f.envelope_b[p] = es.eigenvalues().minCoeff();
      f.envelope_bbar[p] = es.eigenvalues().maxCoeff();
    }
  }
}

CoefficientField blank_field(const Mesh& mesh, bool diagonal) {
  CoefficientField f;
  f.dim = mesh.dim;
  f.diagonal = diagonal;
  f.entries.assign(mesh.size() * static_cast<std::size_t>(mesh.dim * mesh.dim), 0.0);
  f.envelope_b.assign(mesh.size(), 0.0);
  f.envelope_bbar.assign(mesh.size(), 0.0);
  return f;
}

double two_point(double a, double b) { return (a > 0.0 && b > 0.0) ? 2.0 * a * b / (a + b) : 0.0; }

// 1 / integral_0^1 dt / b(x0 + t (x1 - x0)); 0 when 1/b is not integrable
double edge_harmonic(const PointFunction& b, Point x0, Point x1, double b0, double b1) {
  if (b0 <= 0.0 && b1 <= 0.0) return 0.0;
  if (b1 <= 0.0) {
    std::swap(x0, x1);
    std::swap(b0, b1);
  }
  auto at = [&](double t) {
    Point x;
    for (int k = 0; k < 3; ++k) x[k] = x0[k] + t * (x1[k] - x0[k]);
    return b(x);
  };
  auto inv = [&](double t) {
    const double v = at(t);
    return v > 0.0 ? 1.0 / v : 0.0;
  };
  if (b0 > 0.0) {
    const double I = boost::math::quadrature::gauss<double, 10>::integrate(inv, 0.0, 1.0);
    return std::isfinite(I) && I > 0.0 ? 1.0 / I : 0.0;
  }
  // b vanishes at t = 0: local power from two probes decides integrability
  const double lo = at(1e-6), hi = at(1e-3);
  if (!(lo > 0.0) || std::log(hi / lo) / std::log(1e3) >= 1.0 - 1e-9) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> ts;
  try {
    const double I = ts.integrate(inv, 0.0, 1.0);
    return std::isfinite(I) && I > 0.0 ? 1.0 / I : 0.0;
  } catch (const std::exception&) {
    return 0.0;
  }
}

Rational radical_inverse(unsigned long i, unsigned long base) {
  Rational x = 0;
  BigInt scale = base;
  while (i > 0) {
    x += Rational(BigInt(i % base), scale);
    i /= base;
    scale *= base;
  }
  return x;
}

}  // namespace

double CoefficientField::face(std::size_t lower, std::size_t upper, int axis) const {
  if (!face_axis.empty()) return face_axis[lower * static_cast<std::size_t>(dim) + static_cast<std::size_t>(axis)];
  return two_point(at(lower, axis, axis), at(upper, axis, axis));
}

double CoefficientField::face_b(std::size_t lower, std::size_t upper, int axis) const {
  if (!face_envelope.empty()) return face_envelope[lower * static_cast<std::size_t>(dim) + static_cast<std::size_t>(axis)];
  return two_point(envelope_b[lower], envelope_b[upper]);
}

CoefficientField constant_field(const Mesh& mesh, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw std::invalid_argument("constant_field: value must be positive");
  CoefficientField f = blank_field(mesh, true);
  const int d = mesh.dim;
  for (std::size_t p = 0; p < mesh.size(); ++p)
    for (int a = 0; a < d; ++a) f.entries[p * static_cast<std::size_t>(d * d) + static_cast<std::size_t>(a * d + a)] = value;
  std::fill(f.envelope_b.begin(), f.envelope_b.end(), value);
  std::fill(f.envelope_bbar.begin(), f.envelope_bbar.end(), value);
  return f;
}

CoefficientField diagonal_field(const Mesh& mesh, const std::vector<ScalarField>& b_axis) {
  const int d = mesh.dim;
  if (static_cast<int>(b_axis.size()) != d) throw std::invalid_argument("diagonal_field: need one field per axis");
  CoefficientField f = blank_field(mesh, true);
  for (int a = 0; a < d; ++a) {
    if (b_axis[a].size() != mesh.size()) throw std::invalid_argument("diagonal_field: field size does not match mesh");
    for (std::size_t p = 0; p < mesh.size(); ++p) {
      const double v = b_axis[a][p];
      if (!std::isfinite(v) || v < 0.0 || (v == 0.0 && is_interior(mesh, p)))
        throw std::invalid_argument("diagonal_field: nonpositive axis value at node " + std::to_string(p));
      f.entries[p * static_cast<std::size_t>(d * d) + static_cast<std::size_t>(a * d + a)] = v;
    }
  }
  compute_envelopes(f);
  return f;
}

CoefficientField diagonal_field(const Mesh& mesh, const std::vector<PointFunction>& b_axis) {
  const int d = mesh.dim;
  if (static_cast<int>(b_axis.size()) != d) throw std::invalid_argument("diagonal_field: need one function per axis");
  std::vector<ScalarField> nodal(static_cast<std::size_t>(d), ScalarField(mesh.size()));
  for (int a = 0; a < d; ++a)
    for (std::size_t p = 0; p < mesh.size(); ++p) nodal[a][p] = b_axis[a](mesh.coord(p));
  CoefficientField f = diagonal_field(mesh, nodal);
  const PointFunction lower = [&](const Point& x) {
    double v = b_axis[0](x);
    for (int a = 1; a < d; ++a) v = std::min(v, b_axis[a](x));
    return v;
  };
  const std::size_t slots = mesh.size() * static_cast<std::size_t>(d);
  f.face_axis.assign(slots, 0.0);
  f.face_envelope.assign(slots, 0.0);
  std::size_t stride = 1;
  for (int k = 0; k < d; ++k) {
    for (std::size_t p = 0; p < mesh.size(); ++p) {
      const auto ix = mesh.multi_index(p);
      if (ix[k] + 1 >= mesh.n[k]) continue;
      const std::size_t q = p + stride;
      const Point x0 = mesh.coord(p), x1 = mesh.coord(q);
      const std::size_t slot = p * static_cast<std::size_t>(d) + static_cast<std::size_t>(k);
      f.face_axis[slot] = edge_harmonic(b_axis[k], x0, x1, f.at(p, k, k), f.at(q, k, k));
      f.face_envelope[slot] = edge_harmonic(lower, x0, x1, f.envelope_b[p], f.envelope_b[q]);
    }
    stride *= static_cast<std::size_t>(mesh.n[k]);
  }
  return f;
}

CoefficientField distance_field(const Mesh& mesh, const std::vector<double>& gammas, const std::vector<double>& scales) {
  if (static_cast<int>(gammas.size()) != mesh.dim) throw std::invalid_argument("distance_field: need one exponent per axis");
  if (!scales.empty() && scales.size() != gammas.size()) throw std::invalid_argument("distance_field: need one scale per axis");
  double snap = 0.0;
  for (int a = 0; a < mesh.dim; ++a) snap = std::max(snap, 1e-12 * mesh.extent[a]);
  std::vector<PointFunction> fns;
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    const double g = gammas[k], sc = scales.empty() ? 1.0 : scales[k];
    if (!(g >= 0.0)) throw std::invalid_argument("distance_field: exponents must be nonnegative");
    if (!(sc > 0.0) || !std::isfinite(sc)) throw std::invalid_argument("distance_field: scales must be positive");
    fns.push_back([&mesh, g, sc, snap](const Point& x) {
      const double d = mesh.boundary_distance(x);
      return sc * std::pow(d < snap ? 0.0 : d, g);
    });
  }
  return diagonal_field(mesh, fns);
}

CoefficientField full_field(const Mesh& mesh, const std::vector<double>& entries) {
  const int d = mesh.dim;
  if (entries.size() != mesh.size() * static_cast<std::size_t>(d * d))
    throw std::invalid_argument("full_field: entry count does not match mesh");
  CoefficientField f = blank_field(mesh, false);
  f.entries = entries;
  bool diagonal = true;
  for (std::size_t p = 0; p < mesh.size(); ++p) {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        const double a = f.at(p, i, j), b = f.at(p, j, i);
        if (std::abs(a - b) > 1e-13 * std::max({std::abs(a), std::abs(b), 1e-300}))
          throw std::invalid_argument("full_field: matrix not symmetric at node " + std::to_string(p));
        if (a != 0.0) diagonal = false;
      }
  }
  f.diagonal = diagonal;
  compute_envelopes(f);
  for (std::size_t p = 0; p < mesh.size(); ++p) {
    if (is_interior(mesh, p) && !(f.envelope_b[p] > 0.0))
      throw std::invalid_argument("full_field: matrix not positive definite at interior node " + std::to_string(p));
    if (f.envelope_b[p] < 0.0) throw std::invalid_argument("full_field: negative eigenvalue at node " + std::to_string(p));
  }
  return f;
}

ScalarField distance_weight(const Mesh& mesh, double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("distance_weight: gamma must be nonnegative");
  ScalarField w(mesh.size());
  for (std::size_t p = 0; p < mesh.size(); ++p) {
    const double d = mesh.on_box_boundary(p) ? 0.0 : mesh.boundary_distance(mesh.coord(p));
    w[p] = std::pow(d, gamma);
  }
  return w;
}

double check_integrability(const ScalarField& field, double exponent, const Mesh& mesh, Integrand integrand) {
  if (!(exponent >= 1.0)) throw std::invalid_argument("check_integrability: exponent must be >= 1");
  if (field.size() != mesh.size()) throw std::invalid_argument("check_integrability: field size does not match mesh");
  double sum = 0.0;
  for (std::size_t p = 0; p < mesh.size(); ++p) {
    const double v = field[p];
    if (v < 0.0) throw std::invalid_argument("check_integrability: field must be nonnegative");
    const double vol = mesh.cell_volume(p);
    if (vol == 0.0) continue;
    if (integrand == Integrand::RECIPROCAL_POWER) {
      if (v == 0.0) continue;
      sum += std::pow(1.0 / v, exponent) * vol;
    } else {
      sum += std::pow(v, exponent) * vol;
    }
  }
  const double r = std::pow(sum, 1.0 / exponent);
  if (!std::isfinite(r)) throw std::overflow_error("check_integrability: non-finite norm");
  return r;
}

double sample_envelope_violation(const CoefficientField& field, int directions_per_node, std::size_t node_stride,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const int d = field.dim;
  double worst = 0.0;
  if (node_stride == 0) node_stride = 1;
  for (std::size_t p = 0; p < field.size(); p += node_stride) {
    for (int k = 0; k < directions_per_node; ++k) {
      double xi[3] = {0, 0, 0}, norm2 = 0.0;
      for (int a = 0; a < d; ++a) {
        xi[a] = normal(rng);
        norm2 += xi[a] * xi[a];
      }
      double q = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) q += xi[i] * field.at(p, i, j) * xi[j];
      q /= norm2;
      const double scale = std::max(std::abs(field.envelope_bbar[p]), 1e-300);
      worst = std::max(worst, (field.envelope_b[p] - q) / scale);
      worst = std::max(worst, (q - field.envelope_bbar[p]) / scale);
    }
  }
  return worst;
}

LogWeightDescriptor pathological_bbar(int beta, int k_max) {
  if (beta < 2) throw std::invalid_argument("pathological_bbar: beta must be >= 2");
  if (k_max < 5) throw std::invalid_argument("pathological_bbar: k_max must be >= 5");
  if (k_max > 16) throw std::invalid_argument("pathological_bbar: k_max > 16 exceeds the big-integer budget");
  LogWeightDescriptor d;
  d.beta = beta;
  d.k_max = k_max;
  for (int k = d.k_min; k <= k_max; ++k) {
    d.log2_r.push_back(-big_pow(BigInt(k), static_cast<unsigned long>(4 * k * beta)));
    const auto i = static_cast<unsigned long>(k);
    d.centers.push_back({radical_inverse(i, 2), radical_inverse(i, 3), radical_inverse(i, 5)});
  }
  return d;
}

A2Table verify_a2_violation(const LogWeightDescriptor& desc, int N) {
  if (N < 2) throw std::invalid_argument("verify_a2_violation: N must be >= 2");
  A2Table table;
  table.N = N;
  const BigInt two_n = big_pow(2, static_cast<unsigned long>(N));
  for (int k = desc.k_min; k <= desc.k_max; ++k) {
    A2Row row;
    row.k = k;
    const BigInt k3 = big_pow(BigInt(k), 3);
    const BigInt k4k = big_pow(BigInt(k), static_cast<unsigned long>(4 * k));
    const Rational denom = Rational(two_n) * (Rational(BigInt(9), k3) + Rational(BigInt(2), k4k));
    row.ratio_lower_bound = Rational(3) / denom;

    // log2 of k^{4 beta k} is at most 4 beta k ceil(log2 k); the chain is
    // 4 beta k log2 k - N K <= -K <= -k with K = k^{4 beta k} = -log2 r_k.
    const BigInt K = -desc.log2_radius(k);
    const BigInt log2_power_upper = BigInt(4 * desc.beta * k) * BigInt(ceil_log2(static_cast<unsigned long>(k)));
    row.term_bound_holds = (log2_power_upper - BigInt(N) * K <= -K) && (-K <= BigInt(-k));
    row.annulus_bound_holds = (two_n - 1) >= 3;
    table.rows.push_back(row);
  }
  table.strictly_increasing = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    if (!(table.rows[i].ratio_lower_bound > table.rows[i - 1].ratio_lower_bound)) table.strictly_increasing = false;
  return table;
}

nlohmann::json a2_table_to_json(const LogWeightDescriptor& desc, const A2Table& table) {
  nlohmann::json j;
  j["beta"] = desc.beta;
  j["N"] = table.N;
  j["k_min"] = desc.k_min;
  j["k_max"] = desc.k_max;
  j["strictly_increasing"] = table.strictly_increasing;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    nlohmann::json row;
    row["k"] = r.k;
    row["log2_r"] = desc.log2_radius(r.k).str();
    row["log2_ball_mass_over_unit_ball"] = desc.log2_ball_mass(r.k, table.N).str();
    row["center"] = {fraction_string(desc.centers[i][0]), fraction_string(desc.centers[i][1]),
                     fraction_string(desc.centers[i][2])};
    row["ratio_lower_bound"] = fraction_string(r.ratio_lower_bound);
    row["ratio_lower_bound_decimal"] = decimal_string(r.ratio_lower_bound, 12);
    row["term_bound_holds"] = r.term_bound_holds;
    row["annulus_bound_holds"] = r.annulus_bound_holds;
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

}  // namespace greenlab
