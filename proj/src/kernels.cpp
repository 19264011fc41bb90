#include "greenlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "greenlab/mollifier.hpp"

namespace greenlab {

namespace {

constexpr Eigen::Index kBlock = 128;

double min_width(const Mesh& m) {
  double h = m.h[0];
  for (int k = 1; k < m.dim; ++k) h = std::min(h, m.h[k]);
  return h;
}

struct LineFit {
  double slope = 0.0, intercept = 0.0, rms = 0.0, corr = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ss += e * e;
  }
  f.rms = std::sqrt(ss / n);
  f.corr = syy > 0.0 ? std::abs(sxy) / std::sqrt(sxx * syy) : 1.0;
  return f;
}

DiscreteField source_for(const Mesh& mesh, KernelKind kind, const Point& z, double rho, int axis) {
  return kind == KernelKind::GREEN ? project_source(mesh, z, rho) : project_dipole(mesh, z, rho, axis);
}

}  // namespace

SolverOptions kernel_solver_options() {
  SolverOptions o;
  o.tol = 1e-12;
  return o;
}

KernelField green_column(const WeightedOperator& op, const Point& z, double rho, const SolverOptions& opt) {
  KernelField k;
  k.kind = KernelKind::GREEN;
  k.z = z;
  k.rho = rho;
  k.values = solve(op, project_source(op.mesh, z, rho), opt, &k.info);
  return k;
}

KernelField gradient_kernel(const WeightedOperator& op, const Point& z, double rho, int axis, const SolverOptions& opt) {
  KernelField k;
  k.kind = KernelKind::GRAD;
  k.axis = axis;
  k.z = z;
  k.rho = rho;
  k.values = solve(op, project_dipole(op.mesh, z, rho, axis), opt, &k.info);
  return k;
}

std::vector<std::size_t> admissible_sources(const WeightedOperator& op, double rho) {
  const Mesh& m = op.mesh;
  const bool delta = rho < min_width(m);
  std::vector<std::size_t> out;
  for (std::size_t p : op.free_nodes) {
    const Point x = m.coord(p);
    if (!delta && m.boundary_distance(x) < rho) continue;
    out.push_back(p);
  }
  return out;
}

KernelBatch kernel_batch(const WeightedOperator& op, KernelKind kind, const std::vector<std::size_t>& sources, double rho,
                         int axis, int jobs) {
  if (kind == KernelKind::GRAD && (axis < 0 || axis >= op.mesh.dim)) throw std::invalid_argument("kernel_batch: axis out of range");
  KernelBatch batch;
  batch.kind = kind;
  batch.axis = axis;
  batch.rho = rho;
  batch.sources = sources;
  const Eigen::Index nf = static_cast<Eigen::Index>(op.free_count());
  const Eigen::Index ns = static_cast<Eigen::Index>(sources.size());
  batch.columns.resize(nf, ns);
  const DirectSolver direct(op);

  const auto work = [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index b0 = begin; b0 < end; b0 += kBlock) {
      const Eigen::Index b1 = std::min(end, b0 + kBlock);
      Eigen::MatrixXd rhs(nf, b1 - b0);
      for (Eigen::Index j = b0; j < b1; ++j) {
        const Point z = op.mesh.coord(sources[static_cast<std::size_t>(j)]);
        rhs.col(j - b0) = op.load_vector(source_for(op.mesh, kind, z, rho, axis));
      }
      batch.columns.middleCols(b0, b1 - b0) = direct.solve_free(rhs);
    }
  };
  jobs = std::max(1, jobs);
  if (jobs == 1 || ns < 2 * kBlock) {
    work(0, ns);
  } else {
    std::vector<std::thread> pool;
    const Eigen::Index chunk = (ns + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
      const Eigen::Index b = t * chunk, e = std::min(ns, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  return batch;
}

DiscreteField represent(const WeightedOperator& op, const KernelBatch& green, const DiscreteField& f) {
  if (f.size() != op.mesh.size()) throw std::invalid_argument("represent: field does not match mesh");
  if (green.columns.rows() != static_cast<Eigen::Index>(op.free_count()))
    throw std::invalid_argument("represent: kernel batch was built for another operator");
  const Eigen::VectorXd vals = green.columns.transpose() * op.load_vector(f);
  DiscreteField u(op.mesh.size(), 0.0);
  for (std::size_t j = 0; j < green.sources.size(); ++j) u[green.sources[j]] = vals[static_cast<Eigen::Index>(j)];
  return u;
}

DiscreteField represent_gradient(const WeightedOperator& op, const KernelBatch& grad, const DiscreteField& f) {
  if (grad.kind != KernelKind::GRAD) throw std::invalid_argument("represent_gradient: batch holds Green columns");
  DiscreteField u = represent(op, grad, f);
  for (double& v : u) v = -v;
  return u;
}

double pair_with(const WeightedOperator& op, const KernelField& k, const DiscreteField& f) {
  if (k.values.size() != op.mesh.size() || f.size() != op.mesh.size()) throw std::invalid_argument("pair_with: size mismatch");
  double s = 0.0;
  for (std::size_t p = 0; p < f.size(); ++p) s += k.values[p] * f[p] * op.volume_weights[p];
  return s;
}

DecayFit fit_decay(const Mesh& mesh, const KernelField& kernel, const DecayWindow& window, DecayModel model) {
  if (kernel.values.size() != mesh.size()) throw std::invalid_argument("fit_decay: kernel does not match mesh");
  if (window.annuli < 4) throw std::invalid_argument("fit_decay: need at least 4 annuli");
  const double dist = mesh.boundary_distance(kernel.z);
  const double r_min = window.r_min > 0.0 ? window.r_min : std::max(2.0 * kernel.rho, 3.0 * min_width(mesh));
  const double r_max = window.r_max > 0.0 ? window.r_max : 0.4 * dist;
  if (r_min < 2.0 * kernel.rho) throw std::invalid_argument("fit_decay: r_min below 2 rho");
  if (r_max > 0.5 * dist + 1e-12) throw std::invalid_argument("fit_decay: r_max beyond half the boundary distance");
  if (!(r_max > r_min)) throw std::invalid_argument("fit_decay: empty radius window");

  const int na = window.annuli;
  std::vector<double> edges(static_cast<std::size_t>(na) + 1);
  for (int i = 0; i <= na; ++i) edges[static_cast<std::size_t>(i)] = r_min * std::pow(r_max / r_min, static_cast<double>(i) / na);
  std::vector<double> best(static_cast<std::size_t>(na), -1.0), at(static_cast<std::size_t>(na), 0.0);
  for (std::size_t p = 0; p < mesh.size(); ++p) {
    const Point x = mesh.coord(p);
    double r2 = 0.0;
    for (int k = 0; k < mesh.dim; ++k) r2 += (x[k] - kernel.z[k]) * (x[k] - kernel.z[k]);
    const double r = std::sqrt(r2);
    if (r < r_min || r > r_max) continue;
    auto it = std::upper_bound(edges.begin(), edges.end(), r);
    int a = static_cast<int>(it - edges.begin()) - 1;
    a = std::clamp(a, 0, na - 1);
    const double v = std::abs(kernel.values[p]);
    if (v > best[static_cast<std::size_t>(a)]) {
      best[static_cast<std::size_t>(a)] = v;
      at[static_cast<std::size_t>(a)] = r;
    }
  }
  DecayFit fit;
  fit.model = model;
  fit.r_min = r_min;
  fit.r_max = r_max;
  std::vector<double> x, y;
  for (int a = 0; a < na; ++a) {
    if (best[static_cast<std::size_t>(a)] < 0.0) continue;  // coarse grids leave thin annuli empty
    const double v = best[static_cast<std::size_t>(a)];
    if (model == DecayModel::POWER && !(v > 0.0)) throw std::invalid_argument("fit_decay: zero annulus maximum");
    fit.radii.push_back(at[static_cast<std::size_t>(a)]);
    fit.maxima.push_back(v);
    x.push_back(std::log(at[static_cast<std::size_t>(a)]));
    y.push_back(model == DecayModel::POWER ? std::log(v) : v);
  }
  if (x.size() < 3) throw std::invalid_argument("fit_decay: fewer than 3 annuli contain nodes");
  const LineFit lf = least_squares(x, y);
  fit.exponent = lf.slope;
  fit.log_constant = lf.intercept;
  fit.residual = lf.rms;
  fit.correlation = lf.corr;
  return fit;
}

nlohmann::json decay_to_json(const DecayFit& fit) {
  nlohmann::json j;
  j["model"] = fit.model == DecayModel::POWER ? "power" : "log";
  j["exponent"] = fit.exponent;
  j["constant"] = fit.log_constant;
  j["window"] = {fit.r_min, fit.r_max};
  j["residual"] = fit.residual;
  j["correlation"] = fit.correlation;
  return j;
}

}  // namespace greenlab
