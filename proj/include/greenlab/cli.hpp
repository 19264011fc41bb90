#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "greenlab/coeff.hpp"
#include "greenlab/domain.hpp"
#include "greenlab/types.hpp"

namespace greenlab {

// Flat per-module sections; see README for the schema.
struct RunConfig {
  int dim = 2;
  std::vector<int> intervals{64, 64};
  std::vector<double> extent{1.0, 1.0};
  std::vector<double> origin;
  nlohmann::json coeff = {{"kind", "constant"}, {"value", 1.0}};
  nlohmann::json admissible = {{"preset", "FULL_BOUNDARY"}};
  nlohmann::json source = {{"kind", "constant"}, {"value", 1.0}};
  double tol = 1e-10;
  std::string method = "auto";
  std::vector<Point> sources;   // empty: box centre
  double rho_h = 6.0;           // rho in units of the smallest mesh width; < 1 gives the lumped delta
  std::vector<double> rho_sweep_h{12.0, 6.0, 3.0};
  int N = 3;
  double zeta = 0.005;
  double gamma = 6.0;
  double r = 4.0;
  double rbar = 3.0;
  double t = 1.8;
  std::string out_dir = "greenlab_out";
  std::uint64_t seed = 1;
  int jobs = 1;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);
void validate_config(const RunConfig& c);

Mesh config_mesh(const RunConfig& c);
CoefficientField config_coeff(const Mesh& mesh, const RunConfig& c);
DiscreteField config_source(const Mesh& mesh, const RunConfig& c);

// Exit status: 0 success, 1 validation error, 2 solver failure.
int run_cli(int argc, const char* const* argv);

}  // namespace greenlab
