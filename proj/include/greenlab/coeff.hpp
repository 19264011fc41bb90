#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "greenlab/domain.hpp"
#include "greenlab/exact.hpp"
#include "greenlab/types.hpp"

namespace greenlab {

// Symmetric matrix field sampled at mesh nodes, with pointwise eigen-envelopes
// b(x)|xi|^2 <= xi^T B(x) xi <= bbar(x)|xi|^2.
struct CoefficientField {
  int dim = 2;
  bool diagonal = true;
  std::vector<double> entries;  // node-major, dim*dim row-major per node
  ScalarField envelope_b;
  ScalarField envelope_bbar;
  // Optional edge means, index node*dim+axis for the edge to the +axis
  // neighbour: 1 / mean(1/b) along the edge. Empty means two-point harmonic.
  std::vector<double> face_axis;      // of b_axis,axis
  std::vector<double> face_envelope;  // of the lower envelope b

  std::size_t size() const { return envelope_b.size(); }
  double at(std::size_t node, int i, int j) const {
    return entries[node * static_cast<std::size_t>(dim * dim) + static_cast<std::size_t>(i * dim + j)];
  }
  // lower is the -axis endpoint of the edge (lower, upper)
  double face(std::size_t lower, std::size_t upper, int axis) const;
  double face_b(std::size_t lower, std::size_t upper, int axis) const;
};

CoefficientField constant_field(const Mesh& mesh, double value);
CoefficientField diagonal_field(const Mesh& mesh, const std::vector<ScalarField>& b_axis);
// Axis weights given as functions of position; edge faces use the exact
// harmonic mean along the edge, so weights vanishing at the wall keep a
// positive face coefficient whenever 1/b is integrable there.
using PointFunction = std::function<double(const Point&)>;
CoefficientField diagonal_field(const Mesh& mesh, const std::vector<PointFunction>& b_axis);
// diag(s_k dist^gamma_k) with edge-exact faces; scales default to 1
CoefficientField distance_field(const Mesh& mesh, const std::vector<double>& gammas,
                                const std::vector<double>& scales = {});
// user-supplied per-node matrices, node-major dim*dim row-major
CoefficientField full_field(const Mesh& mesh, const std::vector<double>& entries);

// dist(x, box boundary)^gamma at every node
ScalarField distance_weight(const Mesh& mesh, double gamma);

enum class Integrand { POWER, RECIPROCAL_POWER };

// (sum g^p * cellvol)^(1/p) with g = field or g = 1/field; nodes where the
// field vanishes are skipped for the reciprocal integrand.
double check_integrability(const ScalarField& field, double exponent, const Mesh& mesh,
                           Integrand integrand = Integrand::POWER);

// Largest relative violation of the envelope inequalities over random unit
// directions at a node subsample (0 when none).
double sample_envelope_violation(const CoefficientField& field, int directions_per_node,
                                 std::size_t node_stride, std::uint64_t seed);

// Log-domain description of a weight whose radii r_k = 2^(-k^(4 k beta)) underflow
// every floating type. Ball masses are expressed in units of the unit-ball volume.
struct LogWeightDescriptor {
  int beta = 2;
  int k_min = 5;
  int k_max = 5;
  std::vector<BigInt> log2_r;                     // index k - k_min
  std::vector<std::array<Rational, 3>> centers;  // exact Halton seeds in [0,1]^3

  const BigInt& log2_radius(int k) const { return log2_r.at(static_cast<std::size_t>(k - k_min)); }
  // |B(x_k, r_k)| = unit_ball_volume * 2^exponent, exponent = N * log2_r(k)
  BigInt log2_ball_mass(int k, int N) const { return BigInt(N) * log2_radius(k); }
};

LogWeightDescriptor pathological_bbar(int beta, int k_max);

struct A2Row {
  int k = 0;
  Rational ratio_lower_bound;  // 3 / (2^N (9 k^-3 + 2 k^-4k))
  bool term_bound_holds = false;  // k^{4 beta k} 2^N v_k <= 2^N sigma_N 2^{-k}
  bool annulus_bound_holds = false;  // (2^N - 1) >= 3
};

struct A2Table {
  int N = 2;
  std::vector<A2Row> rows;
  bool strictly_increasing = false;
};

A2Table verify_a2_violation(const LogWeightDescriptor& desc, int N);

nlohmann::json a2_table_to_json(const LogWeightDescriptor& desc, const A2Table& table);

}  // namespace greenlab
