#include "greenlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace greenlab {

Rational t_lower_bound(int N) {
  if (N < 2) throw std::invalid_argument("t_lower_bound: N must be >= 2");
  return Rational(BigInt(2 * N * N + 2 * N - 2), BigInt(N * N + 2 * N - 1));
}

double exponent_r(int N, double t) { return (t * (N + 1) - 2.0) / (N - t); }

std::vector<std::string> parameter_violations(const ParameterSelection& p) {
  std::vector<std::string> bad;
  const double lb = static_cast<double>(p.lower_bound);
  const double N = p.N;
  if (!(p.t > lb && p.t < 2.0)) bad.push_back("t in ((2N^2+2N-2)/(N^2+2N-1), 2)");
  if (!(std::abs(p.r - exponent_r(p.N, p.t)) <= 1e-12 * std::abs(p.r))) bad.push_back("r = (t(N+1)-2)/(N-t)");
  if (!(p.rbar > 2.0 && p.rbar < p.r)) bad.push_back("2 < rbar < r");
  if (!(1.0 < p.t && p.t < 2.0 && 2.0 < p.r && p.r < p.t_star)) bad.push_back("1 < t < 2 < r < t*");
  const double lhs = 1.0 / p.r, rhs = (1.0 + p.epsilon) / 2.0 - 1.0 / N;
  if (!(std::abs(lhs - rhs) <= 1e-12)) bad.push_back("1/r = (1+eps)/2 - 1/N");
  if (!(p.epsilon > 0.0)) bad.push_back("eps > 0");
  return bad;
}

ParameterSelection pick_parameters(int N, double zeta) {
  if (N < 2 || N > 8) throw std::invalid_argument("pick_parameters: N must lie in 2..8");
  if (!(zeta > 0.0 && zeta < 1.0 / 120.0)) throw std::invalid_argument("pick_parameters: zeta must lie in (0, 1/120)");
  ParameterSelection p;
  p.N = N;
  p.zeta = zeta;
  p.lower_bound = t_lower_bound(N);
  const double lo = std::max(static_cast<double>(p.lower_bound), 2.0 - zeta);
  if (!(lo < 2.0)) throw std::invalid_argument("pick_parameters: empty window for t");
  p.t = 0.5 * (lo + 2.0);
  p.r = exponent_r(N, p.t);
  p.rbar = 2.0 + std::min(0.1, (p.r - 2.0) / 4.0);
  p.epsilon = 2.0 * (1.0 / p.r + 1.0 / N) - 1.0;
  p.t_star = p.t * N / (N - p.t);
  const auto bad = parameter_violations(p);
  if (!bad.empty()) throw std::invalid_argument("pick_parameters: violated " + bad.front());
  return p;
}

nlohmann::json parameters_to_json(const ParameterSelection& p) {
  nlohmann::json j;
  j["N"] = p.N;
  j["zeta"] = p.zeta;
  j["t"] = p.t;
  j["r"] = p.r;
  j["rbar"] = p.rbar;
  j["epsilon"] = p.epsilon;
  j["t_star"] = p.t_star;
  j["t_lower_bound"] = fraction_string(p.lower_bound);
  j["t_lower_bound_decimal"] = static_cast<double>(p.lower_bound);
  j["violations"] = parameter_violations(p);
  return j;
}

double lp_norm(const Mesh& mesh, const DiscreteField& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (f.size() != mesh.size()) throw std::invalid_argument("lp_norm: field does not match mesh");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]), p) * mesh.cell_volume(i);
  return std::pow(s, 1.0 / p);
}

std::vector<Point> nodal_gradient(const Mesh& mesh, const DiscreteField& u) {
  if (u.size() != mesh.size()) throw std::invalid_argument("nodal_gradient: field does not match mesh");
  std::vector<Point> g(mesh.size(), Point{0.0, 0.0, 0.0});
  for (std::size_t p = 0; p < mesh.size(); ++p) {
    const auto ix = mesh.multi_index(p);
    for (int k = 0; k < mesh.dim; ++k) {
      auto lo = ix, hi = ix;
      double span = 2.0 * mesh.h[k];
      if (ix[k] == 0) {
        span = mesh.h[k];
      } else {
        --lo[k];
      }
      if (ix[k] == mesh.n[k] - 1) {
        span = mesh.h[k];
      } else {
        ++hi[k];
      }
      if (mesh.n[k] == 1) continue;
      g[p][k] = (u[mesh.index(hi[0], hi[1], hi[2])] - u[mesh.index(lo[0], lo[1], lo[2])]) / span;
    }
  }
  return g;
}

double weighted_gradient_norm(const Mesh& mesh, const DiscreteField& u, const ScalarField& weight) {
  if (weight.size() != mesh.size()) throw std::invalid_argument("weighted_gradient_norm: weight does not match mesh");
  const auto g = nodal_gradient(mesh, u);
  double s = 0.0;
  for (std::size_t p = 0; p < mesh.size(); ++p) {
    const double g2 = g[p][0] * g[p][0] + g[p][1] * g[p][1] + g[p][2] * g[p][2];
    s += g2 * weight[p] * mesh.cell_volume(p);
  }
  return std::sqrt(s);
}

std::optional<double> sobolev_ratio(const Mesh& mesh, const DiscreteField& v, double r, double t) {
  if (!(r >= 1.0 && t >= 1.0)) throw std::invalid_argument("sobolev_ratio: exponents must be >= 1");
  for (std::size_t p = 0; p < mesh.size(); ++p)
    if (mesh.constrained(p) && v[p] != 0.0) throw std::invalid_argument("sobolev_ratio: v must vanish on the admissible set");
  const double num = lp_norm(mesh, v, r);
  if (num == 0.0) return std::nullopt;
  const auto g = nodal_gradient(mesh, v);
  double s = 0.0;
  for (std::size_t p = 0; p < mesh.size(); ++p) {
    const double gn = std::sqrt(g[p][0] * g[p][0] + g[p][1] * g[p][1] + g[p][2] * g[p][2]);
    s += std::pow(gn, t) * mesh.cell_volume(p);
  }
  const double den = std::pow(s, 1.0 / t);
  if (den == 0.0) throw std::logic_error("sobolev_ratio: zero gradient for a nonzero field, the admissible marking is broken");
  return num / den;
}

std::vector<DiscreteField> sobolev_family(const Mesh& mesh, std::size_t min_members, std::uint64_t seed) {
  std::vector<DiscreteField> fam;
  const int d = mesh.dim;
  auto unit = [&](std::size_t p) {
    Point x = mesh.coord(p);
    for (int k = 0; k < d; ++k) x[k] = (x[k] - mesh.origin[k]) / mesh.extent[k];
    return x;
  };
  auto zero_constrained = [&](DiscreteField& v) {
    for (std::size_t p = 0; p < mesh.size(); ++p)
      if (mesh.constrained(p)) v[p] = 0.0;
  };
  const int kmax = 3;
  for (int a = 1; a <= kmax; ++a)
    for (int b = 1; b <= kmax; ++b)
      for (int c = 1; c <= (d == 3 ? kmax : 1); ++c) {
        DiscreteField v(mesh.size());
        for (std::size_t p = 0; p < mesh.size(); ++p) {
          const Point x = unit(p);
          double s = std::sin(a * std::numbers::pi * x[0]) * std::sin(b * std::numbers::pi * x[1]);
          if (d == 3) s *= std::sin(c * std::numbers::pi * x[2]);
          v[p] = s;
        }
        zero_constrained(v);
        fam.push_back(std::move(v));
      }
  const int lattice = 4;
  const double radius = 0.3;
  for (int a = 0; a < lattice; ++a)
    for (int b = 0; b < lattice; ++b)
      for (int c = 0; c < (d == 3 ? 2 : 1); ++c) {
        const Point ctr{(a + 0.5) / lattice, (b + 0.5) / lattice, d == 3 ? (c + 0.5) / 2.0 : 0.0};
        DiscreteField v(mesh.size());
        for (std::size_t p = 0; p < mesh.size(); ++p) {
          const Point x = unit(p);
          double r2 = 0.0;
          for (int k = 0; k < d; ++k) r2 += (x[k] - ctr[k]) * (x[k] - ctr[k]);
          const double q = 1.0 - r2 / (radius * radius);
          v[p] = q > 0.0 ? q * q : 0.0;
        }
        zero_constrained(v);
        fam.push_back(std::move(v));
      }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const std::size_t random_count = std::max<std::size_t>(20, min_members > fam.size() ? min_members - fam.size() : 0);
  for (std::size_t m = 0; m < random_count; ++m) {
    std::vector<std::array<double, 5>> g(6);
    for (auto& e : g) e = {u01(rng), u01(rng), u01(rng), 0.05 + 0.25 * u01(rng), u01(rng) < 0.5 ? -1.0 : 1.0};
    DiscreteField v(mesh.size());
    for (std::size_t p = 0; p < mesh.size(); ++p) {
      const Point x = unit(p);
      double s = 0.0;
      for (const auto& e : g) {
        double r2 = 0.0;
        for (int k = 0; k < d; ++k) r2 += (x[k] - e[k]) * (x[k] - e[k]);
        s += e[4] * std::exp(-r2 / (2.0 * e[3] * e[3]));
      }
      // taper so that free boundary parts see smooth data too
      double taper = 1.0;
      for (int k = 0; k < d; ++k) taper *= std::sin(std::numbers::pi * x[k]);
      v[p] = s * (0.5 + 0.5 * taper);
    }
    zero_constrained(v);
    fam.push_back(std::move(v));
  }
  return fam;
}

SobolevEstimate empirical_sobolev_constant(const Mesh& mesh, const std::vector<DiscreteField>& family, double r, double t) {
  SobolevEstimate e;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto q = sobolev_ratio(mesh, family[i], r, t);
    if (q && *q > e.constant) {
      e.constant = *q;
      e.best_member = i;
    }
    if (q) ++e.used;
    e.running_max.push_back(e.constant);
  }
  return e;
}

HolderEstimate holder_seminorm(const Mesh& mesh, const DiscreteField& u, double tau, std::size_t pair_budget, std::uint64_t seed) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("holder_seminorm: tau must lie in (0, 1]");
  if (pair_budget < 10000) throw std::invalid_argument("holder_seminorm: pair budget must be at least 1e4");
  if (u.size() != mesh.size()) throw std::invalid_argument("holder_seminorm: field does not match mesh");
  HolderEstimate est;
  est.tau = tau;
  double diam2 = 0.0, hmin = mesh.h[0];
  for (int k = 0; k < mesh.dim; ++k) {
    diam2 += mesh.extent[k] * mesh.extent[k];
    hmin = std::min(hmin, mesh.h[k]);
  }
  const double diam = std::sqrt(diam2);
  const int bins = 16;
  est.histogram.resize(bins);
  for (int b = 0; b < bins; ++b) est.histogram[static_cast<std::size_t>(b)] = {hmin * std::pow(diam / hmin, static_cast<double>(b) / bins), 0.0, 0.0};

  auto consider = [&](std::size_t p, std::size_t q) {
    if (p == q || mesh.node_class[p] == NodeClass::HOLE || mesh.node_class[q] == NodeClass::HOLE) return;
    const Point a = mesh.coord(p), b = mesh.coord(q);
    double d2 = 0.0;
    for (int k = 0; k < mesh.dim; ++k) d2 += (a[k] - b[k]) * (a[k] - b[k]);
    const double d = std::sqrt(d2);
    const double quot = std::abs(u[p] - u[q]) / std::pow(d, tau);
    ++est.pairs;
    if (quot > est.seminorm) {
      est.seminorm = quot;
      est.worst_pair = {p, q};
    }
    int bin = static_cast<int>(std::floor(bins * std::log(d / hmin) / std::log(diam / hmin)));
    bin = std::clamp(bin, 0, bins - 1);
    auto& h = est.histogram[static_cast<std::size_t>(bin)];
    h[1] += 1.0;
    h[2] = std::max(h[2], quot);
  };

  const std::size_t M = mesh.size();
  if (M * (M - 1) / 2 <= pair_budget) {
    for (std::size_t p = 0; p < M; ++p)
      for (std::size_t q = p + 1; q < M; ++q) consider(p, q);
    est.pair_sample = "all pairs";
    return est;
  }
  // every nearest-neighbour pair, including diagonals
  std::vector<std::array<int, 3>> offsets;
  for (int dz = 0; dz <= (mesh.dim == 3 ? 1 : 0); ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const std::array<int, 3> o{dx, dy, dz};
        // keep one of each +-o
        const bool positive = dz > 0 || (dz == 0 && (dy > 0 || (dy == 0 && dx > 0)));
        if (positive) offsets.push_back(o);
      }
  for (std::size_t p = 0; p < M; ++p) {
    const auto ix = mesh.multi_index(p);
    for (const auto& o : offsets) {
      std::array<int, 3> j{ix[0] + o[0], ix[1] + o[1], ix[2] + o[2]};
      bool ok = true;
      for (int k = 0; k < 3; ++k) ok = ok && j[k] >= 0 && j[k] < mesh.n[k];
      if (ok) consider(p, mesh.index(j[0], j[1], j[2]));
    }
  }
  // distance-stratified random pairs
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> node(0, M - 1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> normal;
  const std::size_t per_bin = pair_budget / bins;
  for (int b = 0; b < bins; ++b) {
    const double lo = est.histogram[static_cast<std::size_t>(b)][0];
    const double hi = hmin * std::pow(diam / hmin, static_cast<double>(b + 1) / bins);
    std::size_t drawn = 0, tries = 0;
    while (drawn < per_bin && tries < 20 * per_bin) {
      ++tries;
      const std::size_t p = node(rng);
      Point dir{0, 0, 0};
      double n2 = 0.0;
      for (int k = 0; k < mesh.dim; ++k) {
        dir[k] = normal(rng);
        n2 += dir[k] * dir[k];
      }
      const double len = lo * std::pow(hi / lo, u01(rng));
      Point x = mesh.coord(p);
      bool inside = true;
      for (int k = 0; k < mesh.dim; ++k) {
        x[k] += len * dir[k] / std::sqrt(n2);
        inside = inside && x[k] >= mesh.origin[k] && x[k] <= mesh.origin[k] + mesh.extent[k];
      }
      if (!inside) continue;
      const std::size_t q = mesh.nearest_node(x);
      if (q == p) continue;
      consider(p, q);
      ++drawn;
    }
  }
  est.pair_sample = "nearest-neighbour pairs + " + std::to_string(per_bin) + " random pairs in each of " + std::to_string(bins) +
                    " distance bins (seed " + std::to_string(seed) + ")";
  return est;
}

bool ExponentLedger::all_identities_hold() const {
  return std::all_of(identities.begin(), identities.end(), [](const LedgerIdentity& i) { return i.holds; });
}

ExponentLedger exponent_ledger(int N, const Rational& theta, const Rational& zeta, const Rational& inv_r) {
  if (N < 2) throw std::invalid_argument("exponent_ledger: N must be >= 2");
  if (!(theta > zeta && zeta > 0)) throw std::invalid_argument("exponent_ledger: need 0 < zeta < theta");
  if (!(inv_r > 0)) throw std::invalid_argument("exponent_ledger: 1/r must be positive");
  ExponentLedger L;
  L.N = N;
  L.theta = theta;
  L.zeta = zeta;
  L.inv_r = inv_r;
  const Rational n(N), one(1), two(2);
  L.epsilon = two * (inv_r + one / n) - one;
  const Rational d = (theta - zeta) / n;

  auto step = [&](std::string s, const Rational& recip, std::optional<Rational> displayed = std::nullopt) {
    LedgerStep st;
    st.statement = std::move(s);
    st.reciprocal = recip;
    st.displayed_exponent = displayed ? *displayed : (recip > 0 ? one / recip : Rational(0));
    st.exponent_below_one = st.displayed_exponent < one;
    st.valid_index = recip > 0 && recip <= one;
    L.steps.push_back(st);
  };
  auto identity = [&](std::string s, const Rational& lhs, const Rational& rhs, bool eq = true) {
    LedgerIdentity id;
    id.statement = std::move(s);
    id.lhs = lhs;
    id.rhs = rhs;
    id.equality = eq;
    id.holds = eq ? lhs == rhs : lhs <= rhs;
    L.identities.push_back(id);
  };

  // m0 = max{m : 1/r - m d > 0}
  int m0 = 0;
  while (inv_r - Rational(m0 + 1) * d > 0) ++m0;
  L.m0 = m0;

  step("grad u in L^{2/(1+eps)}", (one + L.epsilon) / two);
  for (int m = 1; m <= m0; ++m) {
    step("u in L^{(1/r - " + std::to_string(m) + "(theta-zeta)/N)^-1}", inv_r - Rational(m) * d);
    step("grad u in L^{(1/r + 1/N - " + std::to_string(m) + "(theta-zeta)/N)^-1}", inv_r + one / n - Rational(m) * d);
  }
  step("u in L^{N/(theta-zeta)}", d);
  step("grad u in L^{N/(1+theta-zeta)}", (one + theta - zeta) / n);
  step("u in L^{N/(1-theta/2)}", (one - theta / two) / n);
  step("u in L^{N/(theta/4)}", (theta / Rational(4)) / n);
  step("f in L^{(2-zeta)/N}", (two - zeta) / n, (two - zeta) / n);
  step("grad u in L^{1/N}", one / n, one / n);
  step("f in L^{(2-3theta/4)/N}", (two - Rational(3) * theta / Rational(4)) / n, (two - Rational(3) * theta / Rational(4)) / n);
  step("u, grad u in L^{N/(1-theta/2)}", (one - theta / two) / n);

  identity("(1-theta)/N + (1+eps)/2 - (2-zeta)/N = 1/r - (theta-zeta)/N",
           (one - theta) / n + (one + L.epsilon) / two - (two - zeta) / n, inv_r - d);
  identity("(2-theta)/N + 1/r - (2-zeta)/N = 1/r - (theta-zeta)/N", (two - theta) / n + inv_r - (two - zeta) / n, inv_r - d);
  identity("(1-theta)/N + (1+eps)/2 - (1-zeta)/N = 1/r + 1/N - (theta-zeta)/N",
           (one - theta) / n + (one + L.epsilon) / two - (one - zeta) / n, inv_r + one / n - d);
  identity("(1-theta)/N + (1/N + (theta-zeta)/N) = (2-zeta)/N", (one - theta) / n + (one / n + d), (two - zeta) / n);
  identity("(2-theta)/N + (theta-zeta)/N = (2-zeta)/N", (two - theta) / n + d, (two - zeta) / n);
  identity("(2-theta)/N + (theta/4)/N <= (2-zeta)/N", (two - theta) / n + theta / Rational(4) / n, (two - zeta) / n, false);
  identity("(2-3theta/4)/N - (1-zeta)/N = (1-theta/2)/N", (two - Rational(3) * theta / Rational(4)) / n - (one - zeta) / n,
           (one - theta / two) / n);
  identity("(1-theta)/N + (1+eps)/2 <= 1", (one - theta) / n + (one + L.epsilon) / two, one, false);
  return L;
}

nlohmann::json ledger_to_json(const ExponentLedger& l) {
  nlohmann::json j;
  j["N"] = l.N;
  j["theta"] = fraction_string(l.theta);
  j["zeta"] = fraction_string(l.zeta);
  j["inv_r"] = fraction_string(l.inv_r);
  j["epsilon"] = fraction_string(l.epsilon);
  j["m0"] = l.m0;
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : l.steps)
    steps.push_back({{"statement", s.statement},
                     {"displayed_exponent", fraction_string(s.displayed_exponent)},
                     {"reciprocal", fraction_string(s.reciprocal)},
                     {"exponent_below_one", s.exponent_below_one},
                     {"valid_index", s.valid_index}});
  j["steps"] = steps;
  nlohmann::json ids = nlohmann::json::array();
  for (const auto& i : l.identities)
    ids.push_back({{"statement", i.statement},
                   {"lhs", fraction_string(i.lhs)},
                   {"rhs", fraction_string(i.rhs)},
                   {"holds", i.holds}});
  j["identities"] = ids;
  return j;
}

}  // namespace greenlab
