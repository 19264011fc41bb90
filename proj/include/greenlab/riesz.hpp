#pragma once

#include <vector>

#include "greenlab/domain.hpp"
#include "greenlab/types.hpp"

namespace greenlab {

// Potential of order rho in (0, N): I f(x) = int f(y) |x - y|^(rho - N) dy.
struct RieszSpec {
  double order = 1.0;
};

void validate_riesz(const Mesh& mesh, const RieszSpec& spec);

// |x_p - x_q|^(order - N); symmetric in (p, q); p == q is not a kernel entry
double riesz_kernel_entry(const Mesh& mesh, std::size_t p, std::size_t q, const RieszSpec& spec);
// int over the ball of volume vol(p) of |y|^(order - N)
double riesz_self_cell(const Mesh& mesh, std::size_t p, const RieszSpec& spec);

// Lumped direct sum with the self-cell term replaced by riesz_self_cell.
DiscreteField riesz_potential(const Mesh& mesh, const DiscreteField& f, const RieszSpec& spec);
// Same quadrature evaluated at the given nodes only.
std::vector<double> riesz_at(const Mesh& mesh, const DiscreteField& f, const RieszSpec& spec,
                             const std::vector<std::size_t>& targets);

// target exponent q with 1/q = 1/p - order/N; throws when q <= p or q is infinite
double hls_exponent(double p, const RieszSpec& spec, int dim);
// ||I f||_q / ||f||_p
double hls_ratio(const Mesh& mesh, const DiscreteField& f, double p, const RieszSpec& spec);

}  // namespace greenlab
