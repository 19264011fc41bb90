#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace greenlab {

// Power truncation: |t|^s on |t| <= l, continued as eta + a|t| + b/|t| beyond.
struct PowerTruncationParams {
  double s = 2.0;
  double l = 3.0;
  double eta_sl = 0.0;
  double a_sl = 0.0;
  double b_sl = 0.0;

  PowerTruncationParams() : PowerTruncationParams(2.0, 3.0) {}
  PowerTruncationParams(double s_, double l_);
};

// Smoothed power of order s in (1/2, 1]: theta(t)|t|^s near the origin, |t|^s beyond |t| = 1.
struct SmoothedPowerParams {
  double s = 1.0;

  SmoothedPowerParams() = default;
  explicit SmoothedPowerParams(double s_);
};

double eval_trunc(const PowerTruncationParams& p, double t, int order);
// G = F F' (order 0) and G' = F'^2 + F F'' (order 1)
double eval_trunc_G(const PowerTruncationParams& p, double t, int order);

// cutoff profile theta: 3/8 |t|^(1/2) (t^2 - 10/3 |t| + 5) on |t| <= 1, else 1
double eval_theta(double t, int order);
double eval_smoothed(const SmoothedPowerParams& p, double t, int order);
double eval_smoothed_G(const SmoothedPowerParams& p, double t, int order);
// Fbar: 0 on |t| <= 1, |t| beyond
double eval_fbar(double t);

double eval_phi_beta(double beta, double t, int order);

// Polynomial part of alpha (F_s')^2 + F_s F_s'' after removing the factor 9/64 t^(2s-1); t in [0, 1].
double h_poly(double alpha, double s, double t);
// Same quantity from the evaluators, for t in (0, 1].
double h_ratio(double alpha, double s, double t);

// certified constants
inline constexpr double kDelta = 1e-4;
inline constexpr double kAlpha0 = 1.0 - 1e-6;
inline constexpr double kC0 = 1e6;      // max{1/(1 - alpha0), 2}
inline constexpr double kK0 = 12.25;    // [3/8 (1 + 10/3 + 5)]^2

struct AuxReport {
  std::string id;
  std::string sweep;
  double worst_slack = 0.0;       // min over samples of RHS - LHS
  double worst_relative = 0.0;    // the same slack divided by the local magnitude scale
  double scale = 1.0;             // local magnitude scale at the worst sample
  std::vector<double> worst_location;
  std::size_t samples = 0;
  bool pass = true;
  bool informational = false;     // recorded but not asserted
  std::map<std::string, double> constants;
  std::string note;
};

nlohmann::json report_to_json(const AuxReport& r);
nlohmann::json reports_to_json(const std::vector<AuxReport>& reports);
std::string reports_table(const std::vector<AuxReport>& reports);
bool all_pass(const std::vector<AuxReport>& reports);

// Chebyshev-Lobatto points on [a, b]
std::vector<double> chebyshev_grid(std::size_t n, double a, double b);

struct TruncSweep {
  std::vector<std::pair<double, double>> pairs;  // (s, l)
  std::vector<double> unit_grid;                  // t = u * l for u in the grid
  std::size_t random_per_pair = 1000;
  std::uint64_t seed = 1;
};

TruncSweep default_trunc_sweep(std::size_t n_pairs, std::size_t n_t, std::uint64_t seed);
std::vector<AuxReport> certify_trunc(const TruncSweep& sweep);

struct SmoothedSweep {
  std::vector<double> s_grid;
  std::vector<double> t_grid;
  std::size_t random_per_s = 1000;
  std::uint64_t seed = 2;
};

SmoothedSweep default_smoothed_sweep(std::size_t n_s, std::size_t n_t, std::uint64_t seed);
std::vector<AuxReport> certify_smoothed(const SmoothedSweep& sweep);

// max over t of |G_s(t)| / F_s(t)^(2 - 1/s) on |t| <= 1 (dense grid)
double empirical_k_s(double s, std::size_t n_t = 20001);

std::vector<AuxReport> certify_appendix(const std::vector<double>& t_grid, const std::vector<double>& s_grid);

}  // namespace greenlab
