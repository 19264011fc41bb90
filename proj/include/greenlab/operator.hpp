#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "greenlab/coeff.hpp"
#include "greenlab/domain.hpp"
#include "greenlab/types.hpp"

namespace greenlab {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, long>;

// Flux-form finite differences for -div(B grad u) = f with u = 0 on the
// constrained nodes. The system is K u = M f, M the lumped node volumes.
struct WeightedOperator {
  Mesh mesh;
  CoefficientField coeff;
  SparseMatrix system;       // free x free
  SparseMatrix full_system;  // all nodes, before elimination
  ScalarField volume_weights;
  std::vector<std::size_t> dirichlet_set;
  std::vector<std::size_t> free_nodes;
  std::vector<long> free_index;  // -1 on constrained nodes
  double face_floor = 0.0;

  std::size_t free_count() const { return free_nodes.size(); }
  Eigen::VectorXd restrict_to_free(const DiscreteField& u) const;
  DiscreteField extend(const Eigen::VectorXd& x) const;
  // M f restricted to free nodes
  Eigen::VectorXd load_vector(const DiscreteField& f) const;
  // K u over all nodes
  DiscreteField apply(const DiscreteField& u) const;
};

WeightedOperator assemble(const Mesh& marked_mesh, const CoefficientField& coeff);
WeightedOperator assemble(const Mesh& mesh, const CoefficientField& coeff, const AdmissiblePreset& preset);

enum class SolverMethod { AUTO, PCG, DIRECT };

struct SolverOptions {
  double tol = 1e-10;
  long max_iterations = 0;  // 0: 20 * unknowns, capped at 200000
  SolverMethod method = SolverMethod::AUTO;
};

struct SolveInfo {
  double residual = 0.0;  // ||K u - M f|| / ||M f||
  long iterations = 0;
  std::string method;
  double energy_defect = 0.0;  // |u^T K u - sum f u vol|
  double energy_scale = 0.0;   // ||u|| ||M f||
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double achieved) : std::runtime_error(what), residual(achieved) {}
  double residual;
};

DiscreteField solve(const WeightedOperator& op, const DiscreteField& f, const SolverOptions& opt = {},
                    SolveInfo* info = nullptr);

// Sparse LDL^T of the free system, reused across many right-hand sides.
class DirectSolver {
 public:
  explicit DirectSolver(const WeightedOperator& op);
  ~DirectSolver();
  DirectSolver(const DirectSolver&) = delete;
  DirectSolver& operator=(const DirectSolver&) = delete;

  DiscreteField solve(const DiscreteField& f) const;
  Eigen::VectorXd solve_free(const Eigen::VectorXd& rhs) const;
  Eigen::MatrixXd solve_free(const Eigen::MatrixXd& rhs) const;

 private:
  struct Impl;
  const WeightedOperator& op_;
  std::unique_ptr<Impl> impl_;
};

double bilinear(const WeightedOperator& op, const DiscreteField& u, const DiscreteField& v);
// (u^T K u)^(1/2)
double energy_norm(const WeightedOperator& op, const DiscreteField& u);
// (int |grad u|^2 b)^(1/2) with the lower envelope b on the same faces
double b_energy_norm(const WeightedOperator& op, const DiscreteField& u);
// (int sum |b^ij| |d_i u| |d_j u|)^(1/2) on the same stencils
double abs_form_norm(const WeightedOperator& op, const DiscreteField& u);

struct RatioRange {
  double min = 0.0;
  double max = 0.0;
  std::size_t used = 0;
};

// min/max of abs_form_norm / energy_norm over the nonzero samples
RatioRange norm_equivalence_ratio(const WeightedOperator& op, const std::vector<DiscreteField>& samples);

}  // namespace greenlab
