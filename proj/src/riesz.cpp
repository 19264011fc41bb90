#include "greenlab/riesz.hpp"

#include <cmath>
#include <stdexcept>

#include "greenlab/mollifier.hpp"

namespace greenlab {

namespace {

// Kernel values indexed by the absolute index offset, valid on structured grids.
class OffsetTable {
 public:
  OffsetTable(const Mesh& m, double power) : m_(m) {
    const std::size_t total = static_cast<std::size_t>(m.n[0]) * static_cast<std::size_t>(m.n[1]) * static_cast<std::size_t>(m.n[2]);
    table_.resize(total);
    for (int k = 0; k < m.n[2]; ++k)
      for (int j = 0; j < m.n[1]; ++j)
        for (int i = 0; i < m.n[0]; ++i) {
          const double dx = i * m.h[0], dy = j * m.h[1], dz = k * m.h[2];
          const double r2 = dx * dx + dy * dy + dz * dz;
          table_[m.index(i, j, k)] = r2 > 0.0 ? std::pow(r2, 0.5 * power) : 0.0;
        }
  }
  double operator()(const std::array<int, 3>& a, const std::array<int, 3>& b) const {
    return table_[m_.index(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2]))];
  }

 private:
  const Mesh& m_;
  std::vector<double> table_;
};

double lumped_norm(const Mesh& m, const DiscreteField& f, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]), p) * m.cell_volume(i);
  return std::pow(s, 1.0 / p);
}

}  // namespace

void validate_riesz(const Mesh& mesh, const RieszSpec& spec) {
  if (!(spec.order > 0.0 && spec.order < mesh.dim)) throw std::invalid_argument("riesz: order must lie in (0, N)");
}

double riesz_kernel_entry(const Mesh& mesh, std::size_t p, std::size_t q, const RieszSpec& spec) {
  validate_riesz(mesh, spec);
  if (p == q) throw std::invalid_argument("riesz_kernel_entry: diagonal is the self-cell term");
  const Point a = mesh.coord(p), b = mesh.coord(q);
  double r2 = 0.0;
  for (int k = 0; k < mesh.dim; ++k) r2 += (a[k] - b[k]) * (a[k] - b[k]);
  return std::pow(r2, 0.5 * (spec.order - mesh.dim));
}

double riesz_self_cell(const Mesh& mesh, std::size_t p, const RieszSpec& spec) {
  validate_riesz(mesh, spec);
  const double vol = mesh.cell_volume(p);
  if (vol == 0.0) return 0.0;
  const double sigma = unit_sphere_area(mesh.dim);
  const double radius = std::pow(vol * mesh.dim / sigma, 1.0 / mesh.dim);
  return sigma * std::pow(radius, spec.order) / spec.order;
}

std::vector<double> riesz_at(const Mesh& mesh, const DiscreteField& f, const RieszSpec& spec,
                             const std::vector<std::size_t>& targets) {
  validate_riesz(mesh, spec);
  if (f.size() != mesh.size()) throw std::invalid_argument("riesz: field does not match mesh");
  for (double v : f)
    if (!std::isfinite(v)) throw std::invalid_argument("riesz: non-finite field value");
  const OffsetTable kernel(mesh, spec.order - mesh.dim);
  std::vector<std::array<int, 3>> idx;
  std::vector<double> weight;
  std::vector<std::size_t> node;
  for (std::size_t q = 0; q < mesh.size(); ++q) {
    const double w = f[q] * mesh.cell_volume(q);
    if (w == 0.0) continue;
    idx.push_back(mesh.multi_index(q));
    weight.push_back(w);
    node.push_back(q);
  }
  std::vector<double> out(targets.size(), 0.0);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const std::size_t p = targets[t];
    const auto ip = mesh.multi_index(p);
    double s = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (node[j] != p) s += weight[j] * kernel(ip, idx[j]);
    out[t] = s + f[p] * riesz_self_cell(mesh, p, spec);
  }
  return out;
}

DiscreteField riesz_potential(const Mesh& mesh, const DiscreteField& f, const RieszSpec& spec) {
  std::vector<std::size_t> all(mesh.size());
  for (std::size_t p = 0; p < all.size(); ++p) all[p] = p;
  return riesz_at(mesh, f, spec, all);
}

double hls_exponent(double p, const RieszSpec& spec, int dim) {
  if (!(p > 1.0)) throw std::invalid_argument("hls: p must exceed 1");
  const double inv_q = 1.0 / p - spec.order / dim;
  if (!(inv_q > 0.0)) throw std::invalid_argument("hls: 1/p - order/N must be positive (q would be infinite)");
  const double q = 1.0 / inv_q;
  if (!(q > p)) throw std::invalid_argument("hls: q must exceed p");
  return q;
}

double hls_ratio(const Mesh& mesh, const DiscreteField& f, double p, const RieszSpec& spec) {
  validate_riesz(mesh, spec);
  const double q = hls_exponent(p, spec, mesh.dim);
  const double fn = lumped_norm(mesh, f, p);
  if (!(fn > 0.0)) throw std::invalid_argument("hls_ratio: f has zero norm");
  return lumped_norm(mesh, riesz_potential(mesh, f, spec), q) / fn;
}

}  // namespace greenlab
