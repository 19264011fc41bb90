#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "greenlab/operator.hpp"

namespace greenlab {

enum class KernelKind { GREEN, GRAD };

struct KernelField {
  KernelKind kind = KernelKind::GREEN;
  int axis = -1;  // GRAD only
  Point z{0.0, 0.0, 0.0};
  double rho = 0.0;
  DiscreteField values;
  SolveInfo info;
};

// Kernel solves run tighter than the default so that sign checks see only
// discretization effects.
SolverOptions kernel_solver_options();

KernelField green_column(const WeightedOperator& op, const Point& z, double rho,
                         const SolverOptions& opt = kernel_solver_options());
KernelField gradient_kernel(const WeightedOperator& op, const Point& z, double rho, int axis,
                            const SolverOptions& opt = kernel_solver_options());

// Kernels for many source nodes, stored as free-node columns.
struct KernelBatch {
  KernelKind kind = KernelKind::GREEN;
  int axis = -1;
  double rho = 0.0;
  std::vector<std::size_t> sources;  // mesh node of each column
  Eigen::MatrixXd columns;           // free_count x sources.size()
};

// One column per source node, from a single sparse factorization. Sources are
// split across `jobs` threads; the result does not depend on `jobs`.
KernelBatch kernel_batch(const WeightedOperator& op, KernelKind kind, const std::vector<std::size_t>& sources,
                         double rho, int axis = -1, int jobs = 1);
// every free node whose ball B(y, rho) fits the domain
std::vector<std::size_t> admissible_sources(const WeightedOperator& op, double rho);

// u_rep(y) = sum_x G(x, y) f(x) vol(x) at the batch sources, zero elsewhere
DiscreteField represent(const WeightedOperator& op, const KernelBatch& green, const DiscreteField& f);
// -sum_x H_l(x, y) f(x) vol(x), which approximates +d_l u(y)
DiscreteField represent_gradient(const WeightedOperator& op, const KernelBatch& grad, const DiscreteField& f);
// sum_x H_l(x, z) f(x) vol(x) for one kernel
double pair_with(const WeightedOperator& op, const KernelField& k, const DiscreteField& f);

struct DecayWindow {
  double r_min = 0.0;  // 0: max(2 rho, 3h)
  double r_max = 0.0;  // 0: 0.4 dist(z, boundary)
  int annuli = 8;
};

enum class DecayModel { POWER, LOG };

struct DecayFit {
  DecayModel model = DecayModel::POWER;
  double exponent = 0.0;      // slope of log|v| on log r, or of v on log r
  double log_constant = 0.0;  // intercept
  double r_min = 0.0;
  double r_max = 0.0;
  double residual = 0.0;      // rms of the regression
  double correlation = 0.0;   // Pearson correlation of the regressed pair
  std::vector<double> radii;
  std::vector<double> maxima;
};

// Annulus maxima of |values| about z; POWER regresses log max on log r, LOG
// regresses max on log r.
DecayFit fit_decay(const Mesh& mesh, const KernelField& kernel, const DecayWindow& window = {},
                   DecayModel model = DecayModel::POWER);

nlohmann::json decay_to_json(const DecayFit& fit);

}  // namespace greenlab
