#include "greenlab/operator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

namespace greenlab {

namespace {

constexpr std::size_t kDirectLimit = 20000;

std::array<std::size_t, 3> strides(const Mesh& m) {
  return {1, static_cast<std::size_t>(m.n[0]), static_cast<std::size_t>(m.n[0]) * static_cast<std::size_t>(m.n[1])};
}

// Calls fn(p, q, axis, face_volume / h_axis^2) for every grid edge.
template <class Fn>
void for_each_edge(const Mesh& m, Fn&& fn) {
  const auto st = strides(m);
  for (std::size_t p = 0; p < m.size(); ++p) {
    const auto ix = m.multi_index(p);
    for (int k = 0; k < m.dim; ++k) {
      if (ix[k] + 1 >= m.n[k]) continue;
      double vf = m.h[k];
      for (int j = 0; j < m.dim; ++j) {
        if (j == k) continue;
        const bool edge = ix[j] == 0 || ix[j] == m.n[j] - 1;
        vf *= edge ? 0.5 * m.h[j] : m.h[j];
      }
      fn(p, p + st[k], k, vf / (m.h[k] * m.h[k]));
    }
  }
}

struct Cell {
  std::array<std::size_t, 8> corner{};
  std::array<int, 8> bits{};
  int count = 0;
};

// Calls fn(cell) for every grid cell; bit k of bits[c] is the offset along axis k.
template <class Fn>
void for_each_cell(const Mesh& m, Fn&& fn) {
  const auto st = strides(m);
  Cell cell;
  cell.count = 1 << m.dim;
  for (std::size_t p = 0; p < m.size(); ++p) {
    const auto ix = m.multi_index(p);
    bool lower = true;
    for (int k = 0; k < m.dim; ++k) lower = lower && ix[k] + 1 < m.n[k];
    if (!lower) continue;
    for (int c = 0; c < cell.count; ++c) {
      std::size_t q = p;
      for (int k = 0; k < m.dim; ++k)
        if (c & (1 << k)) q += st[k];
      cell.corner[c] = q;
      cell.bits[c] = c;
    }
    fn(cell);
  }
}

double cell_volume_full(const Mesh& m) {
  double v = 1.0;
  for (int k = 0; k < m.dim; ++k) v *= m.h[k];
  return v;
}

// d_axis of the cell-centred gradient with respect to corner c
double grad_weight(const Mesh& m, int c, int axis) {
  const double sign = (c & (1 << axis)) ? 1.0 : -1.0;
  return sign / (m.h[axis] * static_cast<double>(1 << (m.dim - 1)));
}

double cell_mean(const CoefficientField& f, const Cell& cell, int i, int j) {
  double s = 0.0;
  for (int c = 0; c < cell.count; ++c) s += f.at(cell.corner[c], i, j);
  return s / cell.count;
}

double max_face_coefficient(const Mesh& m, const CoefficientField& coeff) {
  double cmax = 0.0;
  for_each_edge(m, [&](std::size_t p, std::size_t q, int k, double) {
    cmax = std::max(cmax, coeff.face(p, q, k));
  });
  return cmax;
}

}  // namespace

Eigen::VectorXd WeightedOperator::restrict_to_free(const DiscreteField& u) const {
  Eigen::VectorXd x(static_cast<Eigen::Index>(free_nodes.size()));
  for (std::size_t i = 0; i < free_nodes.size(); ++i) x[static_cast<Eigen::Index>(i)] = u[free_nodes[i]];
  return x;
}

DiscreteField WeightedOperator::extend(const Eigen::VectorXd& x) const {
  DiscreteField u(mesh.size(), 0.0);
  for (std::size_t i = 0; i < free_nodes.size(); ++i) u[free_nodes[i]] = x[static_cast<Eigen::Index>(i)];
  return u;
}

Eigen::VectorXd WeightedOperator::load_vector(const DiscreteField& f) const {
  if (f.size() != mesh.size()) throw std::invalid_argument("load_vector: field size does not match mesh");
  Eigen::VectorXd b(static_cast<Eigen::Index>(free_nodes.size()));
  for (std::size_t i = 0; i < free_nodes.size(); ++i) {
    const std::size_t p = free_nodes[i];
    b[static_cast<Eigen::Index>(i)] = f[p] * volume_weights[p];
  }
  return b;
}

DiscreteField WeightedOperator::apply(const DiscreteField& u) const {
  if (u.size() != mesh.size()) throw std::invalid_argument("apply: field size does not match mesh");
  const Eigen::Map<const Eigen::VectorXd> x(u.data(), static_cast<Eigen::Index>(u.size()));
  const Eigen::VectorXd y = full_system * x;
  return DiscreteField(y.data(), y.data() + y.size());
}

WeightedOperator assemble(const Mesh& m, const CoefficientField& coeff) {
  if (coeff.size() != m.size() || coeff.dim != m.dim) throw std::invalid_argument("assemble: coefficient field does not match mesh");
  WeightedOperator op;
  op.mesh = m;
  op.coeff = coeff;
  op.free_index.assign(m.size(), -1);
  op.volume_weights.resize(m.size());
  for (std::size_t p = 0; p < m.size(); ++p) {
    op.volume_weights[p] = m.cell_volume(p);
    if (m.constrained(p)) {
      op.dirichlet_set.push_back(p);
    } else {
      op.free_index[p] = static_cast<long>(op.free_nodes.size());
      op.free_nodes.push_back(p);
    }
  }
  if (m.count(NodeClass::ADMISSIBLE) == 0)
    throw std::invalid_argument("assemble: admissible set is empty, the system would be singular");
  if (op.free_nodes.empty()) throw std::invalid_argument("assemble: no free nodes");

  const double cmax = max_face_coefficient(m, coeff);
  if (!(cmax > 0.0)) throw std::invalid_argument("assemble: coefficient field vanishes on every face");
  op.face_floor = 1e-14 * cmax;

  std::vector<Eigen::Triplet<double, long>> trip;
  trip.reserve(m.size() * static_cast<std::size_t>(m.dim) * 4 + (coeff.diagonal ? 0 : m.size() * 64));
  for_each_edge(m, [&](std::size_t p, std::size_t q, int k, double w) {
    const double c = std::max(coeff.face(p, q, k), op.face_floor) * w;
    const long lp = static_cast<long>(p), lq = static_cast<long>(q);
    trip.emplace_back(lp, lp, c);
    trip.emplace_back(lq, lq, c);
    trip.emplace_back(lp, lq, -c);
    trip.emplace_back(lq, lp, -c);
  });
  if (!coeff.diagonal) {
    const double vol = cell_volume_full(m);
    for_each_cell(m, [&](const Cell& cell) {
      for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) {
          if (i == j) continue;
          const double bij = cell_mean(coeff, cell, i, j);
          if (bij == 0.0) continue;
          for (int a = 0; a < cell.count; ++a)
            for (int b = 0; b < cell.count; ++b)
              trip.emplace_back(static_cast<long>(cell.corner[a]), static_cast<long>(cell.corner[b]),
                                vol * bij * grad_weight(m, a, i) * grad_weight(m, b, j));
        }
    });
  }
  const long np = static_cast<long>(m.size());
  op.full_system.resize(np, np);
  op.full_system.setFromTriplets(trip.begin(), trip.end());
  op.full_system.makeCompressed();

  std::vector<Eigen::Triplet<double, long>> free_trip;
  free_trip.reserve(static_cast<std::size_t>(op.full_system.nonZeros()));
  for (long col = 0; col < op.full_system.outerSize(); ++col) {
    const long fc = op.free_index[static_cast<std::size_t>(col)];
    if (fc < 0) continue;
    for (SparseMatrix::InnerIterator it(op.full_system, col); it; ++it) {
      const long fr = op.free_index[static_cast<std::size_t>(it.row())];
      if (fr >= 0) free_trip.emplace_back(fr, fc, it.value());
    }
  }
  const long nf = static_cast<long>(op.free_nodes.size());
  op.system.resize(nf, nf);
  op.system.setFromTriplets(free_trip.begin(), free_trip.end());
  op.system.makeCompressed();
  return op;
}

WeightedOperator assemble(const Mesh& mesh, const CoefficientField& coeff, const AdmissiblePreset& preset) {
  return assemble(mark_admissible(mesh, preset), coeff);
}

struct DirectSolver::Impl {
  Eigen::SimplicialLDLT<SparseMatrix> ldlt;
};

DirectSolver::DirectSolver(const WeightedOperator& op) : op_(op), impl_(std::make_unique<Impl>()) {
  impl_->ldlt.compute(op.system);
  if (impl_->ldlt.info() != Eigen::Success) throw SolverError("direct factorization failed", std::nan(""));
}

DirectSolver::~DirectSolver() = default;

Eigen::VectorXd DirectSolver::solve_free(const Eigen::VectorXd& rhs) const { return impl_->ldlt.solve(rhs); }

Eigen::MatrixXd DirectSolver::solve_free(const Eigen::MatrixXd& rhs) const { return impl_->ldlt.solve(rhs); }

DiscreteField DirectSolver::solve(const DiscreteField& f) const { return op_.extend(solve_free(op_.load_vector(f))); }

DiscreteField solve(const WeightedOperator& op, const DiscreteField& f, const SolverOptions& opt, SolveInfo* info) {
  if (!(opt.tol > 0.0)) throw std::invalid_argument("solve: tol must be positive");
  const Eigen::VectorXd b = op.load_vector(f);
  const double bnorm = b.norm();
  SolveInfo local;
  if (bnorm == 0.0) {
    local.method = "trivial";
    if (info) *info = local;
    return DiscreteField(op.mesh.size(), 0.0);
  }
  const std::size_t n = op.free_count();
  Eigen::VectorXd x;
  bool done = false;
  double achieved = std::numeric_limits<double>::infinity();

  if (opt.method != SolverMethod::DIRECT) {
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
    const long cap = opt.max_iterations > 0 ? opt.max_iterations : std::min<long>(200000, 20 * static_cast<long>(n));
    cg.setMaxIterations(cap);
    cg.setTolerance(opt.tol);
    cg.compute(op.system);
    x = cg.solve(b);
    achieved = (op.system * x - b).norm() / bnorm;
    local.iterations = static_cast<long>(cg.iterations());
    local.method = "pcg";
    done = cg.info() == Eigen::Success && achieved <= opt.tol;
    if (!done && opt.method == SolverMethod::PCG)
      throw SolverError("pcg did not converge after " + std::to_string(local.iterations) + " iterations", achieved);
  }
  if (!done) {
    if (opt.method == SolverMethod::AUTO && n >= kDirectLimit)
      throw SolverError("pcg did not converge and the system is too large for the direct fallback", achieved);
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(op.system);
    if (ldlt.info() != Eigen::Success) throw SolverError("direct factorization failed", achieved);
    x = ldlt.solve(b);
    achieved = (op.system * x - b).norm() / bnorm;
    local.method = local.method.empty() ? "direct" : "pcg+direct";
    if (!(achieved <= opt.tol)) throw SolverError("direct solve residual above tolerance", achieved);
  }
  local.residual = achieved;
  DiscreteField u = op.extend(x);
  const double quad = x.dot(op.system * x);
  local.energy_defect = std::abs(quad - x.dot(b));
  local.energy_scale = x.norm() * bnorm;
  if (info) *info = local;
  return u;
}

double bilinear(const WeightedOperator& op, const DiscreteField& u, const DiscreteField& v) {
  const DiscreteField ku = op.apply(u);
  double s = 0.0;
  for (std::size_t p = 0; p < v.size(); ++p) s += v[p] * ku[p];
  return s;
}

double energy_norm(const WeightedOperator& op, const DiscreteField& u) { return std::sqrt(std::max(0.0, bilinear(op, u, u))); }

double b_energy_norm(const WeightedOperator& op, const DiscreteField& u) {
  if (u.size() != op.mesh.size()) throw std::invalid_argument("b_energy_norm: field size does not match mesh");
  double s = 0.0;
  for_each_edge(op.mesh, [&](std::size_t p, std::size_t q, int k, double w) {
    const double d = u[q] - u[p];
    s += op.coeff.face_b(p, q, k) * w * d * d;
  });
  return std::sqrt(s);
}

double abs_form_norm(const WeightedOperator& op, const DiscreteField& u) {
  if (u.size() != op.mesh.size()) throw std::invalid_argument("abs_form_norm: field size does not match mesh");
  const Mesh& m = op.mesh;
  double s = 0.0;
  for_each_edge(m, [&](std::size_t p, std::size_t q, int k, double w) {
    const double d = u[q] - u[p];
    s += std::max(op.coeff.face(p, q, k), op.face_floor) * w * d * d;
  });
  if (!op.coeff.diagonal) {
    const double vol = cell_volume_full(m);
    for_each_cell(m, [&](const Cell& cell) {
      std::array<double, 3> g{0, 0, 0};
      for (int i = 0; i < m.dim; ++i)
        for (int c = 0; c < cell.count; ++c) g[i] += grad_weight(m, c, i) * u[cell.corner[c]];
      for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j)
          if (i != j) s += vol * std::abs(cell_mean(op.coeff, cell, i, j)) * std::abs(g[i]) * std::abs(g[j]);
    });
  }
  return std::sqrt(s);
}

RatioRange norm_equivalence_ratio(const WeightedOperator& op, const std::vector<DiscreteField>& samples) {
  if (samples.empty()) throw std::invalid_argument("norm_equivalence_ratio: empty sample set");
  RatioRange r;
  r.min = std::numeric_limits<double>::infinity();
  r.max = 0.0;
  for (const auto& u : samples) {
    const double e = energy_norm(op, u);
    if (!(e > 0.0)) continue;
    const double q = abs_form_norm(op, u) / e;
    r.min = std::min(r.min, q);
    r.max = std::max(r.max, q);
    ++r.used;
  }
  if (r.used == 0) throw std::invalid_argument("norm_equivalence_ratio: every sample has zero energy");
  return r;
}

}  // namespace greenlab
