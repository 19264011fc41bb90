#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "greenlab/domain.hpp"
#include "greenlab/exact.hpp"
#include "greenlab/types.hpp"

namespace greenlab {

struct ParameterSelection {
  int N = 3;
  double zeta = 0.0;
  double t = 0.0;
  double r = 0.0;
  double rbar = 0.0;
  double epsilon = 0.0;
  double t_star = 0.0;
  Rational lower_bound;  // (2N^2 + 2N - 2) / (N^2 + 2N - 1)
};

Rational t_lower_bound(int N);
// r = (t(N+1) - 2) / (N - t)
double exponent_r(int N, double t);
// names of the violated invariants; empty when all hold
std::vector<std::string> parameter_violations(const ParameterSelection& p);
ParameterSelection pick_parameters(int N, double zeta);
nlohmann::json parameters_to_json(const ParameterSelection& p);

// (sum |f|^p vol)^(1/p)
double lp_norm(const Mesh& mesh, const DiscreteField& f, double p);
// (sum |grad u|^2 w vol)^(1/2)
double weighted_gradient_norm(const Mesh& mesh, const DiscreteField& u, const ScalarField& weight);
// nodal gradient: centred inside, one-sided on the box boundary
std::vector<Point> nodal_gradient(const Mesh& mesh, const DiscreteField& u);

// ||v||_r / ||grad v||_t; nullopt for v == 0
std::optional<double> sobolev_ratio(const Mesh& mesh, const DiscreteField& v, double r, double t);

// sines, bump translates and random smooth fields, each zeroed on constrained nodes
std::vector<DiscreteField> sobolev_family(const Mesh& mesh, std::size_t min_members, std::uint64_t seed);

struct SobolevEstimate {
  double constant = 0.0;
  std::vector<double> running_max;  // after each member
  std::size_t used = 0;
  std::size_t best_member = 0;
};

SobolevEstimate empirical_sobolev_constant(const Mesh& mesh, const std::vector<DiscreteField>& family, double r, double t);

struct HolderEstimate {
  double tau = 0.5;
  double seminorm = 0.0;
  std::size_t pairs = 0;
  std::string pair_sample;
  std::array<std::size_t, 2> worst_pair{0, 0};
  // distance bin lower edge, pair count, max quotient in the bin
  std::vector<std::array<double, 3>> histogram;
};

HolderEstimate holder_seminorm(const Mesh& mesh, const DiscreteField& u, double tau, std::size_t pair_budget = 200000,
                               std::uint64_t seed = 7);

struct LedgerStep {
  std::string statement;        // membership as displayed
  Rational displayed_exponent;  // exponent as written in the statement
  Rational reciprocal;          // reciprocal index carried by the chain
  bool exponent_below_one = false;
  bool valid_index = true;      // 0 < reciprocal <= 1
};

struct LedgerIdentity {
  std::string statement;
  Rational lhs;
  Rational rhs;
  bool equality = true;  // else lhs <= rhs
  bool holds = false;
};

struct ExponentLedger {
  int N = 3;
  Rational theta, zeta, inv_r, epsilon;
  int m0 = 0;
  std::vector<LedgerStep> steps;
  std::vector<LedgerIdentity> identities;
  bool all_identities_hold() const;
};

// Integrability bootstrap for u and grad u with 1/r = (1 + eps)/2 - 1/N.
ExponentLedger exponent_ledger(int N, const Rational& theta, const Rational& zeta, const Rational& inv_r);
nlohmann::json ledger_to_json(const ExponentLedger& l);

}  // namespace greenlab
