#include "modweyl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "json.hpp"
#include "modweyl/crossed.hpp"
#include "modweyl/decomposition.hpp"
#include "modweyl/random.hpp"
#include "modweyl/reduction.hpp"

#ifndef MODWEYL_VERSION
#define MODWEYL_VERSION "0.0.0"
#endif

namespace modweyl {

using json = nlohmann::ordered_json;

namespace {

struct SuiteInfo {
  const char* name;
  const char* anchor;
  double threshold_factor;  // threshold = factor * tolerance
};

// The decompose and bakic_guljas suites are judged at 100 * tol: W is built
// from an SVD and the isometry check compares two SVD norms.
constexpr SuiteInfo kSuites[] = {
    {"axioms", "Heisenberg axioms for the Schrodinger modular representation", 1.0},
    {"fourier", "generalized Fourier transform is a C*-isomorphism", 1.0},
    {"green", "Green imprimitivity theorem; covariant pre-Stone-von Neumann theorem", 1.0},
    {"bakic_guljas", "Bakic-Guljas theorem", 100.0},
    {"decompose", "covariant Stone-von Neumann theorem", 100.0},
    {"takai", "Takai-Takesaki duality via K(L^2(G,A,alpha)) = K(L^2(G)) (x) A", 1.0},
    {"inequivalence", "non-unitary-equivalence of Schrodinger representations for distinct actions", 1.0},
};

const SuiteInfo& info(const std::string& suite) {
  for (const auto& s : kSuites)
    if (suite == s.name) return s;
  throw ConfigError("unknown suite '" + suite + "'");
}

/// Largest residual seen so far and where it occurred.
struct Worst {
  double residual = 0.0;
  std::string witness;
  void offer(double r, const std::string& w) {
    if (witness.empty() || r > residual) residual = r, witness = w;
  }
  void merge(const Worst& other) {
    if (!other.witness.empty()) offer(other.residual, other.witness);
  }
};

json mat_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex parse_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError("complex entries must be [re, im] pairs, got " + v.dump());
}

Mat parse_matrix(const json& v, std::size_t k) {
  const std::string where = "action generator " + std::to_string(k);
  if (!v.is_array() || v.empty()) throw ConfigError(where + " must be a nonempty list of rows");
  const std::size_t rows = v.size();
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) throw ConfigError(where + " has ragged rows");
    for (std::size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_complex(v[i][j]);
  }
  return m;
}

template <typename T>
T get_as(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

std::string group_label(const std::vector<int>& factors) {
  std::string s;
  for (std::size_t k = 0; k < factors.size(); ++k) s += (k ? "xZ" : "Z") + std::to_string(factors[k]);
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rng system_rng(std::uint64_t seed, std::size_t system, const char* suite) {
  std::uint32_t tag = 2166136261u;
  for (const char* c = suite; *c; ++c) tag = (tag ^ static_cast<unsigned char>(*c)) * 16777619u;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(system), tag};
  return Rng(seq);
}

double sup_diff(const FnTable& a, const FnTable& b) {
  double r = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, op_norm(a[k] - b[k]));
  return r;
}

CrossedElem random_function_elem(const Action& alpha, Rng& rng) {
  const std::size_t n = alpha.group().order();
  std::vector<FnTable> values;
  for (std::size_t x = 0; x < n; ++x) values.push_back(random_fn(n, alpha.dim(), rng));
  return CrossedElem::function_coeff(alpha, std::move(values));
}

/// What one suite found on one system.
struct Case {
  json record;
  Worst worst;
};

// ---------------------------------------------------------------- suites

Case axioms_case(const Action& alpha, const RunConfig& cfg) {
  Case c;
  json residuals = json::object();
  const HeisenbergRep s = schrodinger(alpha);
  const ValidationReport report = validate_heisenberg(s, cfg.tolerance);
  for (const auto& ax : report.axioms) {
    residuals[axiom_name(ax.axiom)] = ax.residual;
    c.worst.offer(ax.residual, std::string("schrodinger, ") + axiom_name(ax.axiom) + " at " + ax.witness);
  }

  // The same operators from the defining formulas on functions.
  const SchrodingerFunctionForm ff = schrodinger_function_form(alpha);
  double formula = 0.0;
  for (std::size_t k = 0; k < ff.M_units.size(); ++k)
    formula = std::max(formula, op_norm(s.rho_units[k].function_matrix() - ff.M_units[k]));
  for (std::size_t k = 0; k < ff.U.size(); ++k) formula = std::max(formula, op_norm(s.R[k].function_matrix() - ff.U[k]));
  for (std::size_t k = 0; k < ff.V.size(); ++k) formula = std::max(formula, op_norm(s.S[k].function_matrix() - ff.V[k]));
  residuals["defining formulas"] = formula;
  c.worst.offer(formula, "schrodinger operators vs their defining formulas");

  double conjugates = 0.0, class_map = 0.0;
  for (std::size_t m : cfg.multiplicities)
    for (std::uint64_t seed : cfg.seeds) {
      const HeisenbergRep rep = random_heisenberg(alpha, m, seed);
      const ValidationReport r = validate_heisenberg(rep, cfg.tolerance);
      conjugates = std::max(conjugates, r.worst_residual());
      c.worst.offer(r.worst_residual(), "random_heisenberg m=" + std::to_string(m) + " seed=" + std::to_string(seed));
      const double back = rep_distance(covariant_to_heisenberg(heisenberg_to_covariant(rep, cfg.tolerance)), rep);
      class_map = std::max(class_map, back);
      c.worst.offer(back, "class map round trip m=" + std::to_string(m) + " seed=" + std::to_string(seed));
    }
  residuals["random conjugates"] = conjugates;
  residuals["class map round trip"] = class_map;
  c.record["residuals"] = residuals;
  return c;
}

Case fourier_case(const Action& alpha, const RunConfig& cfg, std::size_t system) {
  Case c;
  const FiniteAbelianGroup& g = alpha.group();
  const int d = alpha.dim();
  const std::size_t n = g.order();
  const Action iota = Action::trivial(g, d);
  const HeisenbergRep s = schrodinger(alpha);
  double product = 0.0, adjoint = 0.0, round_trip = 0.0, pi_mult = 0.0, pi_adj = 0.0, weight = 0.0;
  for (std::uint64_t seed : cfg.seeds) {
    Rng rng = system_rng(seed, system, "fourier");
    for (std::size_t k = 0; k < cfg.samples; ++k) {
      const std::string at = "seed=" + std::to_string(seed) + " sample=" + std::to_string(k);
      const FnTable f = random_fn(n, d, rng);
      const FnTable h = random_fn(n, d, rng);
      const CrossedElem cf = CrossedElem::matrix_coeff(iota, f);
      const CrossedElem ch = CrossedElem::matrix_coeff(iota, h);
      const FnTable ff = fourier(g, f);
      const FnTable fh = fourier(g, h);

      FnTable pointwise(n), star(n);
      for (std::size_t x = 0; x < n; ++x) pointwise[x] = ff[x] * fh[x], star[x] = ff[x].adjoint();
      const double r1 = sup_diff(fourier(g, convolve(cf, ch).raw()), pointwise);
      const double r2 = sup_diff(fourier(g, involute(cf).raw()), star);
      const double r3 = sup_diff(inverse_fourier(g, ff), f);
      product = std::max(product, r1), adjoint = std::max(adjoint, r2), round_trip = std::max(round_trip, r3);
      c.worst.offer(r1, "F(f*g) vs F(f)F(g), " + at);
      c.worst.offer(r2, "F(f^*) vs F(f)^*, " + at);
      c.worst.offer(r3, "inverse round trip, " + at);

      // pi_nu on the Schrodinger representation: a unital *-homomorphism of
      // C(G, M_d) that does not see the weight.
      FnTable gh(n), gstar(n);
      for (std::size_t x = 0; x < n; ++x) gh[x] = f[x] * h[x], gstar[x] = f[x].adjoint();
      const Mat pf = pi_nu(s, f).matrix();
      const double r4 = op_norm(pi_nu(s, gh).matrix() - pf * pi_nu(s, h).matrix());
      const double r5 = op_norm(pi_nu(s, gstar).matrix() - pf.adjoint());
      const double r6 = std::max(op_norm(pi_nu(s, f, 0.5).matrix() - pf), op_norm(pi_nu(s, f, 2.0).matrix() - pf));
      pi_mult = std::max(pi_mult, r4), pi_adj = std::max(pi_adj, r5), weight = std::max(weight, r6);
      c.worst.offer(r4, "pi_nu(gh) vs pi_nu(g)pi_nu(h), " + at);
      c.worst.offer(r5, "pi_nu(g^*) vs pi_nu(g)^*, " + at);
      c.worst.offer(r6, "pi_nu weight independence, " + at);
    }
  }
  c.record["residuals"] = {{"convolution to product", product},  {"involution to adjoint", adjoint},
                           {"inverse round trip", round_trip},    {"pi_nu multiplicative", pi_mult},
                           {"pi_nu adjoint", pi_adj},             {"pi_nu weight independence", weight}};
  return c;
}

Case green_case(const Action& alpha, const RunConfig& cfg, std::size_t system) {
  Case c;
  const std::size_t n = alpha.group().order();
  const int d = alpha.dim();
  const HModule l2 = HModule::l2(alpha);
  const auto nd = static_cast<std::size_t>(l2.stacked_rows());

  const std::size_t expected = nd * nd;
  const std::size_t rank = numerical_rank(pi_full_matrix(alpha));
  c.worst.offer(rank == expected ? 0.0 : 1.0,
                "rank of pi_full " + std::to_string(rank) + ", expected " + std::to_string(expected));

  double compat = 0.0, positivity = 0.0, hom = 0.0, star = 0.0;
  std::size_t fullness_rank = 0;
  for (std::uint64_t seed : cfg.seeds) {
    Rng rng = system_rng(seed, system, "green");
    for (std::size_t k = 0; k < cfg.samples; ++k) {
      const std::string at = "seed=" + std::to_string(seed) + " sample=" + std::to_string(k);
      const ModuleVector phi = random_vector(l2, rng);
      const ModuleVector psi = random_vector(l2, rng);
      const ModuleVector theta_v = random_vector(l2, rng);
      const ModuleVector lhs = pi_full(green_left_inner(phi, psi)).apply(theta_v);
      const ModuleVector rhs = right_act(phi, inner(psi, theta_v));
      const double r1 = op_norm(lhs.stacked() - rhs.stacked());
      compat = std::max(compat, r1);
      c.worst.offer(r1, "pi_full(<phi,psi>_L) theta vs phi.<psi,theta>, " + at);

      const Mat kk = pi_full(green_left_inner(phi, phi)).matrix();
      const Mat herm = 0.5 * (kk + kk.adjoint());
      const double lambda_min = Eigen::SelfAdjointEigenSolver<Mat>(herm, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
      const double r2 = std::max(op_norm(kk - kk.adjoint()), std::max(0.0, -lambda_min));
      positivity = std::max(positivity, r2);
      c.worst.offer(r2, "positivity of pi_full(<phi,phi>_L), " + at);

      const CrossedElem f = random_function_elem(alpha, rng);
      const CrossedElem h = random_function_elem(alpha, rng);
      const Mat pf = pi_full(f).matrix();
      const double r3 = op_norm(pi_full(convolve(f, h)).matrix() - pf * pi_full(h).matrix());
      const double r4 = op_norm(pi_full(involute(f)).matrix() - pf.adjoint());
      hom = std::max(hom, r3), star = std::max(star, r4);
      c.worst.offer(r3, "pi_full(F*G) vs pi_full(F)pi_full(G), " + at);
      c.worst.offer(r4, "pi_full(F^*) vs pi_full(F)^*, " + at);
    }

    // Fullness on the left: left inner products span the crossed product.
    const std::size_t pairs = n * n * static_cast<std::size_t>(d * d) + 4;
    Mat span(static_cast<Eigen::Index>(expected), static_cast<Eigen::Index>(pairs));
    for (std::size_t k = 0; k < pairs; ++k) {
      const CrossedElem e = green_left_inner(random_vector(l2, rng), random_vector(l2, rng));
      Vec col(static_cast<Eigen::Index>(expected));
      Eigen::Index at = 0;
      for (const Mat& v : e.raw())
        for (Eigen::Index i = 0; i < v.rows(); ++i)
          for (Eigen::Index j = 0; j < v.cols(); ++j) col(at++) = v(i, j);
      span.col(static_cast<Eigen::Index>(k)) = col;
    }
    fullness_rank = numerical_rank(span);
    c.worst.offer(fullness_rank == expected ? 0.0 : 1.0, "span of left inner products has dimension " +
                                                             std::to_string(fullness_rank) + ", expected " +
                                                             std::to_string(expected));
  }

  // Schrodinger's pi_nu is Green's multiplication representation Xi.
  const CovariantRep green = green_covariant(alpha);
  const CovariantRep from_s = heisenberg_to_covariant(schrodinger(alpha), cfg.tolerance);
  double same = 0.0;
  for (std::size_t k = 0; k < green.pi_units.size(); ++k)
    same = std::max(same, op_norm(green.pi_units[k].matrix() - from_s.pi_units[k].matrix()));
  for (std::size_t k = 0; k < green.R.size(); ++k) same = std::max(same, op_norm(green.R[k].matrix() - from_s.R[k].matrix()));
  c.worst.offer(same, "Schrodinger covariant triple vs (L^2, Xi, U)");
  const double cov = covariance_residual(green);
  c.worst.offer(cov, "covariance of (L^2, Xi, U)");

  c.record["pi_full_rank"] = rank;
  c.record["expected_rank"] = expected;
  c.record["left_fullness_rank"] = fullness_rank;
  c.record["residuals"] = {{"imprimitivity compatibility", compat}, {"left inner positivity", positivity},
                           {"pi_full multiplicative", hom},          {"pi_full adjoint", star},
                           {"pi_nu equals Xi", same},                {"Green covariance", cov}};
  return c;
}

Case bakic_guljas_case(const Action& alpha, const RunConfig& cfg, std::size_t system) {
  Case c;
  const int d = alpha.dim();
  const HModule l2 = HModule::l2(alpha);
  double mult = 0.0, adj = 0.0, iso = 0.0, er = 0.0, re = 0.0, gram = 0.0;
  json commutants = json::array();
  for (std::uint64_t seed : cfg.seeds) {
    Rng rng = system_rng(seed, system, "bakic_guljas");
    const RankOneProj projs[] = {RankOneProj::basis(d, 0), RankOneProj(random_ginibre(d, 1, rng).col(0))};
    for (int pk = 0; pk < 2; ++pk) {
      const RankOneProj& p = projs[pk];
      const std::string which = std::string(pk == 0 ? "P=e11" : "P=random") + " seed=" + std::to_string(seed);
      const ReducedSpace red = reduce(l2, p);
      c.worst.offer(red.dimension() == static_cast<std::size_t>(l2.stacked_rows()) ? 0.0 : 1.0,
                    "dim X.P = " + std::to_string(red.dimension()) + ", " + which);

      const auto k = static_cast<Eigen::Index>(red.dimension());
      Mat g(k, k);
      double fixed = 0.0;
      for (Eigen::Index i = 0; i < k; ++i) {
        const auto& bi = red.basis[static_cast<std::size_t>(i)];
        fixed = std::max(fixed, op_norm(right_act(bi, p.matrix()).stacked() - bi.stacked()));
        for (Eigen::Index j = 0; j < k; ++j) g(i, j) = reduced_inner(p, bi, red.basis[static_cast<std::size_t>(j)]);
      }
      const double r0 = std::max(fixed, op_norm(g - Mat::Identity(k, k)));
      gram = std::max(gram, r0);
      c.worst.offer(r0, "reduced basis orthonormal and fixed by P, " + which);

      const std::size_t commutant = commutant_dimension(red);
      commutants.push_back(commutant);
      c.worst.offer(commutant == 1 ? 0.0 : 1.0, "commutant dimension " + std::to_string(commutant) + ", " + which);

      for (std::size_t s = 0; s < cfg.samples; ++s) {
        const std::string at = which + " sample=" + std::to_string(s);
        const ModuleOperator a = random_operator(l2, rng);
        const ModuleOperator b = random_operator(l2, rng);
        const Mat ra = restrict_operator(a, red);
        const Mat rb = restrict_operator(b, red);
        const double r1 = op_norm(restrict_operator(a * b, red) - ra * rb);
        const double r2 = op_norm(restrict_operator(a.adjoint(), red) - ra.adjoint());
        const double r3 = std::abs(op_norm(a.matrix()) - op_norm(ra));
        const double r4 = op_norm(extend_operator(ra, red).matrix() - a.matrix());
        const Mat l = random_ginibre(k, k, rng);
        const double r5 = op_norm(restrict_operator(extend_operator(l, red), red) - l);
        mult = std::max(mult, r1), adj = std::max(adj, r2), iso = std::max(iso, r3);
        er = std::max(er, r4), re = std::max(re, r5);
        c.worst.offer(r1, "restriction multiplicative, " + at);
        c.worst.offer(r2, "restriction adjoint, " + at);
        c.worst.offer(r3, "restriction isometric, " + at);
        c.worst.offer(r4, "extend o restrict, " + at);
        c.worst.offer(r5, "restrict o extend, " + at);
      }
    }
  }
  c.record["commutant_dimensions"] = commutants;
  c.record["residuals"] = {{"multiplicative", mult},     {"adjoint", adj},         {"isometry", iso},
                           {"extend o restrict", er},    {"restrict o extend", re}, {"reduced basis", gram}};
  return c;
}

json decomposition_json(const DecompositionResult& r, std::uint64_t seed) {
  return {{"m", r.multiplicity},
          {"rank_m", r.rank_multiplicity},
          {"residuals", {{"R", r.residuals.R}, {"S", r.residuals.S}, {"rho", r.residuals.rho}}},
          {"unitarity", r.unitarity},
          {"W_checksum", matrix_checksum(r.W.matrix())},
          {"seed", seed}};
}

Case decompose_case(const Action& alpha, const RunConfig& cfg) {
  Case c;
  json runs = json::array();
  for (std::size_t m : cfg.multiplicities) {
    for (std::uint64_t seed : cfg.seeds) {
      const std::string at = "m=" + std::to_string(m) + " seed=" + std::to_string(seed);
      const DecompositionResult r = decompose(random_heisenberg(alpha, m, seed), cfg.tolerance);
      runs.push_back(decomposition_json(r, seed));
      c.worst.offer(r.multiplicity == m && r.rank_multiplicity == m ? 0.0 : 1.0,
                    "recovered m=" + std::to_string(r.multiplicity) + " (rank route " +
                        std::to_string(r.rank_multiplicity) + "), " + at);
      c.worst.offer(r.residuals.R, "W R W^* vs sum of U, " + at);
      c.worst.offer(r.residuals.S, "W S W^* vs sum of V, " + at);
      c.worst.offer(r.residuals.rho, "W rho W^* vs sum of M, " + at);
      c.worst.offer(r.unitarity, "unitarity of W, " + at);
    }

    // Two independent conjugates of the same sum are equivalent.
    const std::uint64_t s0 = cfg.seeds.front();
    const HeisenbergRep a = random_heisenberg(alpha, m, s0);
    const HeisenbergRep b = random_heisenberg(alpha, m, s0 + 1);
    const std::string at = "equivalent m=" + std::to_string(m) + " seeds " + std::to_string(s0) + "," +
                           std::to_string(s0 + 1);
    if (const auto v = equivalent(a, b, cfg.tolerance)) {
      c.worst.offer(intertwining_residuals(*v, a, b).max(), at);
    } else {
      c.worst.offer(1.0, at + " found no unitary");
    }
  }
  c.record["runs"] = runs;
  return c;
}

Case takai_case(const Action& alpha, const RunConfig& cfg) {
  Case c;
  json runs = json::array();
  for (std::uint64_t seed : cfg.seeds) {
    const TakaiReport t = takai_iso(alpha, 5, seed);
    const std::string at = "seed=" + std::to_string(seed);
    c.worst.offer(t.multiplicativity, "multiplicativity, " + at);
    c.worst.offer(t.adjoint, "adjoint, " + at);
    c.worst.offer(t.unitality, "unitality, " + at);
    c.worst.offer(t.linearity, "right A-linearity after untwisting, " + at);
    c.worst.offer(t.worst_residual(), "dimensions " + std::to_string(t.lhs_dimension) + "/" +
                                          std::to_string(t.rhs_dimension) + ", ranks " + std::to_string(t.map_rank) +
                                          "/" + std::to_string(t.composite_rank) + ", " + at);
    runs.push_back({{"seed", seed},
                    {"lhs_dimension", t.lhs_dimension},
                    {"rhs_dimension", t.rhs_dimension},
                    {"map_rank", t.map_rank},
                    {"composite_rank", t.composite_rank},
                    {"multiplicativity", t.multiplicativity},
                    {"adjoint", t.adjoint},
                    {"unitality", t.unitality},
                    {"linearity", t.linearity}});
  }
  c.record["runs"] = runs;
  return c;
}

/// A different action on the same (G, d): trivial when alpha is not, else
/// diag(1, exp(2 pi i / n_j)) on each generator. Nothing for d = 1.
std::optional<Action> partner_action(const Action& alpha) {
  const FiniteAbelianGroup& g = alpha.group();
  const int d = alpha.dim();
  if (!alpha.is_trivial()) return Action::trivial(g, d);
  if (d < 2) return std::nullopt;
  std::vector<Mat> gens;
  for (int n : g.factors()) {
    Mat u = Mat::Identity(d, d);
    u(1, 1) = std::polar(1.0, 2.0 * std::numbers::pi / n);
    gens.push_back(u);
  }
  Action beta = Action::from_generators(g, gens);
  if (beta.is_trivial()) return std::nullopt;
  return beta;
}

Case inequivalence_case(const Action& alpha, const RunConfig& cfg) {
  Case c;
  const auto self = inequivalence_witness(alpha, alpha, cfg.tolerance);
  c.worst.offer(self ? 1.0 : 0.0, self ? "witness reported for alpha against itself" : "alpha against itself");
  c.record["self_witness"] = static_cast<bool>(self);

  if (const auto beta = partner_action(alpha)) {
    const auto w = inequivalence_witness(alpha, *beta, cfg.tolerance);
    if (!w) {
      c.worst.offer(1.0, "no witness for distinct actions");
    } else {
      const std::string at = "x=" + to_string(w->x) + " a=e" + std::to_string(w->i + 1) + std::to_string(w->j + 1);
      // The gap and the derived contradiction must be visible above tol.
      c.worst.offer(w->gap > cfg.tolerance ? 0.0 : 1.0, "gap " + std::to_string(w->gap) + " at " + at);
      c.worst.offer(w->contradiction > cfg.tolerance ? 0.0 : 1.0,
                    "contradiction " + std::to_string(w->contradiction) + " at " + at);
      c.record["witness"] = {{"x", to_string(w->x)},
                             {"a", "e" + std::to_string(w->i + 1) + std::to_string(w->j + 1)},
                             {"gap", w->gap},
                             {"contradiction", w->contradiction}};
    }
  }
  return c;
}

Case run_case(const std::string& suite, const Action& alpha, const RunConfig& cfg, std::size_t system) {
  if (suite == "axioms") return axioms_case(alpha, cfg);
  if (suite == "fourier") return fourier_case(alpha, cfg, system);
  if (suite == "green") return green_case(alpha, cfg, system);
  if (suite == "bakic_guljas") return bakic_guljas_case(alpha, cfg, system);
  if (suite == "decompose") return decompose_case(alpha, cfg);
  if (suite == "takai") return takai_case(alpha, cfg);
  if (suite == "inequivalence") return inequivalence_case(alpha, cfg);
  throw ConfigError("unknown suite '" + suite + "'");
}

json system_json(const SystemSpec& s) {
  json out = {{"group", s.factors}, {"d", s.d}};
  if (s.generators.empty()) {
    out["action"] = "trivial";
  } else {
    json gens = json::array();
    for (const auto& g : s.generators) gens.push_back(mat_json(g));
    out["action"] = gens;
    out["action_name"] = s.action_name;
  }
  return out;
}

Mat from_rows(int d, std::initializer_list<Complex> entries) {
  Mat m(d, d);
  auto it = entries.begin();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = *it++;
  return m;
}

void print_matrix(std::ostream& out, const std::string& name, const Mat& m) {
  out << name << " =\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << "  [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      const double re = std::abs(z.real()) < 5e-13 ? 0.0 : z.real();
      const double im = std::abs(z.imag()) < 5e-13 ? 0.0 : z.imag();
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(3) << re;
      if (im != 0.0) cell << (im < 0 ? "-" : "+") << std::abs(im) << "i";
      out << (j ? " " : "") << std::setw(7) << cell.str();
    }
    out << " ]\n";
  }
}

}  // namespace

// ---------------------------------------------------------------- public

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : kSuites) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

std::string suite_anchor(const std::string& suite) { return info(suite).anchor; }

Action SystemSpec::build(double tol) const {
  const FiniteAbelianGroup g(factors);
  if (d < 1) throw StructuralError("d must be >= 1");
  if (generators.empty()) return Action::trivial(g, d);
  for (std::size_t k = 0; k < generators.size(); ++k)
    if (generators[k].rows() != d || generators[k].cols() != d)
      throw StructuralError("action generator " + std::to_string(k) + " is " + std::to_string(generators[k].rows()) +
                            "x" + std::to_string(generators[k].cols()) + ", expected " + std::to_string(d) + "x" +
                            std::to_string(d));
  return Action::from_generators(g, generators, tol);
}

std::string SystemSpec::label() const {
  return "G=" + group_label(factors) + " d=" + std::to_string(d) + " alpha=" + action_name;
}

std::vector<SystemSpec> default_grid() {
  const double r = std::numbers::sqrt2 / 2.0;
  const Complex i(0.0, 1.0);
  const Mat hadamard = from_rows(2, {r, r, r, -r});
  const Mat omega3 = from_rows(2, {1.0, 0.0, 0.0, std::polar(1.0, 2.0 * std::numbers::pi / 3.0)});
  const Mat diag_i = from_rows(2, {1.0, 0.0, 0.0, i});
  const Mat x = from_rows(2, {0.0, 1.0, 1.0, 0.0});

  std::vector<SystemSpec> grid;
  auto add = [&grid](std::vector<int> f, std::vector<Mat> gens, std::string name) {
    grid.push_back({f, 1, {}, "trivial"});
    grid.push_back({f, 2, {}, "trivial"});
    grid.push_back({std::move(f), 2, std::move(gens), std::move(name)});
  };
  add({2}, {hadamard}, "Ad(hadamard)");
  add({3}, {omega3}, "Ad(diag(1,w3))");
  add({4}, {diag_i}, "Ad(diag(1,i))");
  add({2, 2}, {x, -x}, "Ad(X)xAd(-X)");
  return grid;
}

void RunConfig::validate() const {
  if (systems.empty()) throw ConfigError("no system configured");
  for (const auto& s : systems) {
    if (s.factors.empty()) throw ConfigError("group factors must be nonempty");
    for (int n : s.factors)
      if (n < 1) throw ConfigError("group factors must be >= 1");
    if (s.d < 1) throw ConfigError("d must be >= 1");
  }
  if (!(tolerance > 0.0 && tolerance <= 1e-2)) throw ConfigError("tolerance must lie in (0, 1e-2]");
  for (const auto& name : suites) (void)info(name);
  if (multiplicities.empty()) throw ConfigError("multiplicities must be nonempty");
  for (std::size_t m : multiplicities)
    if (m < 1) throw ConfigError("multiplicities must be >= 1");
  if (seeds.empty()) throw ConfigError("seeds must be nonempty");
  if (samples < 1) throw ConfigError("samples must be >= 1");
}

std::string RunConfig::to_json() const {
  json systems_j = json::array();
  for (const auto& s : systems) systems_j.push_back(system_json(s));
  json out = {{"systems", systems_j},      {"suites", suites}, {"multiplicities", multiplicities},
              {"seeds", seeds},            {"tolerance", tolerance}, {"samples", samples},
              {"report", report_path}};
  return out.dump();
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  static const char* known[] = {"group",          "d",     "action", "grid",   "suites",
                                "multiplicities", "seeds", "tolerance", "report", "samples"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
      throw ConfigError("unknown field '" + key + "'");
  }

  RunConfig cfg;
  if (doc.contains("grid")) {
    if (doc.contains("group") || doc.contains("d") || doc.contains("action"))
      throw ConfigError("'grid' excludes 'group', 'd' and 'action'");
    if (doc["grid"] != "default") throw ConfigError("the only grid is \"default\"");
    cfg.systems = default_grid();
  } else {
    SystemSpec s;
    s.factors = get_as<std::vector<int>>(doc, "group");
    s.d = get_as<int>(doc, "d");
    const json action = doc.value("action", json("trivial"));
    if (action.is_string()) {
      if (action != "trivial") throw ConfigError("action must be \"trivial\" or a list of generator matrices");
    } else if (action.is_array()) {
      for (std::size_t k = 0; k < action.size(); ++k) s.generators.push_back(parse_matrix(action[k], k));
      s.action_name = "generators";
    } else {
      throw ConfigError("action must be \"trivial\" or a list of generator matrices");
    }
    cfg.systems.push_back(std::move(s));
  }

  if (doc.contains("suites")) {
    const json& suites = doc["suites"];
    if (suites == "all") {
      cfg.suites = suite_names();
    } else {
      cfg.suites = get_as<std::vector<std::string>>(doc, "suites");
    }
  } else {
    cfg.suites = suite_names();
  }
  if (doc.contains("multiplicities")) cfg.multiplicities = get_as<std::vector<std::size_t>>(doc, "multiplicities");
  if (doc.contains("seeds")) cfg.seeds = get_as<std::vector<std::uint64_t>>(doc, "seeds");
  if (doc.contains("tolerance")) cfg.tolerance = get_as<double>(doc, "tolerance");
  if (doc.contains("samples")) cfg.samples = get_as<std::size_t>(doc, "samples");
  if (doc.contains("report")) cfg.report_path = get_as<std::string>(doc, "report");
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

bool Report::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass; });
}

std::string Report::to_json() const {
  json suites_j = json::object();
  for (const auto& s : suites) {
    suites_j[s.name] = {{"anchor", s.anchor},
                        {"status", s.pass ? "pass" : "fail"},
                        {"worst_residual", s.worst_residual},
                        {"tolerance", s.tolerance},
                        {"witness", s.witness},
                        {"wall_time_s", s.wall_time},
                        {"cases", json::parse(s.details)}};
  }
  json out = {{"version", version},
              {"seed", seed},
              {"status", pass() ? "pass" : "fail"},
              {"config", json::parse(config)},
              {"suites", suites_j}};
  return out.dump(2) + "\n";
}

SuiteResult run_suite(const std::string& suite, const RunConfig& config) {
  const SuiteInfo& si = info(suite);
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult result;
  result.name = si.name;
  result.anchor = si.anchor;
  result.tolerance = si.threshold_factor * config.tolerance;

  Worst worst;
  json cases = json::array();
  for (std::size_t k = 0; k < config.systems.size(); ++k) {
    const SystemSpec& spec = config.systems[k];
    const Action alpha = spec.build(config.tolerance);
    Case c = run_case(suite, alpha, config, k);
    c.record["system"] = spec.label();
    if (!c.worst.witness.empty()) c.worst.witness = spec.label() + ": " + c.worst.witness;
    worst.merge(c.worst);
    cases.push_back(std::move(c.record));
  }
  result.worst_residual = worst.residual;
  result.witness = worst.witness;
  result.pass = worst.residual <= result.tolerance;
  result.details = cases.dump();
  result.wall_time = seconds_since(t0);
  return result;
}

Report run(const RunConfig& config) {
  config.validate();
  // Build every action up front so invalid input fails before any suite runs.
  for (const auto& s : config.systems) (void)s.build(config.tolerance);

  Report report;
  report.config = config.to_json();
  report.seed = config.seeds.front();
  report.version = MODWEYL_VERSION;

  std::vector<std::string> order;
  for (const auto& name : suite_names())
    if (std::find(config.suites.begin(), config.suites.end(), name) != config.suites.end()) order.push_back(name);

  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MODWEYL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) threads = static_cast<std::size_t>(v);
  }
  threads = std::min(threads, std::max<std::size_t>(order.size(), 1));

  std::vector<std::optional<SuiteResult>> results(order.size());
  std::vector<std::exception_ptr> errors(order.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < order.size(); k = next++) {
      try {
        results[k] = run_suite(order[k], config);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t k = 0; k < order.size(); ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    report.suites.push_back(std::move(*results[k]));
  }
  return report;
}

void write_report(const Report& report, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write report '" + tmp.string() + "'");
    out << report.to_json();
    if (!out) throw std::runtime_error("failed writing report '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

std::string decompose_record(const RunConfig& config, std::size_t m, std::uint64_t seed, bool* pass) {
  if (m < 1) throw ConfigError("m must be >= 1");
  const SystemSpec& spec = config.systems.front();
  const Action alpha = spec.build(config.tolerance);
  const DecompositionResult r = decompose(random_heisenberg(alpha, m, seed), config.tolerance);
  if (pass) {
    const double threshold = info("decompose").threshold_factor * config.tolerance;
    *pass = r.multiplicity == m && r.rank_multiplicity == m && r.residuals.max() <= threshold &&
            r.unitarity <= threshold;
  }
  json out = decomposition_json(r, seed);
  out["system"] = spec.label();
  if (!r.diagnostic.empty()) out["diagnostic"] = r.diagnostic;
  return out.dump(2) + "\n";
}

void demo(std::ostream& out) {
  const FiniteAbelianGroup z2({2});
  const Action iota = Action::trivial(z2, 1);
  const HeisenbergRep s = schrodinger(iota);

  out << "Schrodinger representation of Z2 on L^2(Z2), d = 1\n"
      << "basis {delta_0, delta_1}; chi_1 is the nontrivial character\n\n";
  print_matrix(out, "U(1)", s.R[1].matrix());
  print_matrix(out, "V(chi_1)", s.S[1].matrix());
  const Mat vu = s.S[1].matrix() * s.R[1].matrix();
  const Mat uv = s.R[1].matrix() * s.S[1].matrix();
  print_matrix(out, "V(chi_1) U(1)", vu);
  print_matrix(out, "-U(1) V(chi_1)", -uv);
  out << "Weyl relation residual ||V U - chi_1(1) U V|| = "
      << op_norm(vu - z2.pair(z2.character_at(1), z2.element_at(1)) * uv) << "\n\n";

  out << "Character table phi(x), rows phi = chi_0, chi_1, columns x = 0, 1\n";
  print_matrix(out, "T", z2.character_table());
  for (std::size_t k = 0; k < 2; ++k) {
    FnTable delta(2, Mat::Zero(1, 1));
    delta[k](0, 0) = 1.0;
    const FnTable f = fourier(z2, delta);
    out << "F(delta_chi_" << k << ") = (" << f[0](0, 0).real() << ", " << f[1](0, 0).real() << ")\n";
  }

  const std::uint64_t seed = 7;
  out << "\nDecomposing W0^* (U (+) U) W0 for a Haar-random W0 (seed " << seed << ")\n";
  const HeisenbergRep rep = random_heisenberg(iota, 2, seed);
  const ValidationReport v = validate_heisenberg(rep);
  const DecompositionResult r = decompose(rep);
  out << "axioms: " << (v.pass() ? "pass" : "fail") << ", worst residual " << v.worst_residual() << "\n"
      << "recovered multiplicity m = " << r.multiplicity << " (projection rank " << r.rank_multiplicity << ")\n"
      << "intertwining residuals R " << r.residuals.R << ", S " << r.residuals.S << ", rho " << r.residuals.rho
      << "\nW checksum " << matrix_checksum(r.W.matrix()) << "\n";
}

}  // namespace modweyl
