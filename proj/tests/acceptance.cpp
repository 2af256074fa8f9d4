// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "modweyl/crossed.hpp"
#include "modweyl/decomposition.hpp"
#include "modweyl/harness.hpp"
#include "modweyl/random.hpp"
#include "modweyl/reduction.hpp"

using namespace modweyl;

namespace {

constexpr double kTight = 1e-10;
constexpr double kLoose = 1e-8;

struct Outcome {
  double worst = 0.0;       // worst residual, already compared against its own tolerance
  bool ok = true;           // every individual check met its tolerance
  std::string note;
  void check(double residual, double tol, const std::string& what) {
    worst = std::max(worst, residual);
    if (!(residual <= tol) && ok) ok = false, note = what + " residual " + std::to_string(residual);
  }
  void require(bool cond, const std::string& what) {
    if (!cond && ok) ok = false, note = what;
  }
};

int failures = 0;

void criterion(int number, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.note = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (out.ok && secs > limit_s) out.ok = false, out.note = "runtime over the limit";
  if (!out.ok) ++failures;
  std::printf("%s criterion %d: %s | worst residual %.3e | %.2f s (limit %.0f s)%s%s\n", out.ok ? "PASS" : "FAIL",
              number, title, out.worst, secs, limit_s, out.note.empty() ? "" : " | ", out.note.c_str());
  std::fflush(stdout);
}

std::vector<Action> grid_actions(bool only_d1 = false) {
  std::vector<Action> out;
  for (const auto& s : default_grid())
    if (!only_d1 || s.d == 1) out.push_back(s.build());
  return out;
}

std::string label(const Action& a) {
  std::string g;
  for (int n : a.group().factors()) g += (g.empty() ? "Z" : "xZ") + std::to_string(n);
  return g + " d=" + std::to_string(a.dim()) + (a.is_trivial() ? " trivial" : " nontrivial");
}

double sup_diff(const FnTable& a, const FnTable& b) {
  double r = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, op_norm(a[k] - b[k]));
  return r;
}

CrossedElem random_function_elem(const Action& alpha, Rng& rng) {
  std::vector<FnTable> v;
  for (std::size_t x = 0; x < alpha.group().order(); ++x) v.push_back(random_fn(alpha.group().order(), alpha.dim(), rng));
  return CrossedElem::function_coeff(alpha, std::move(v));
}

}  // namespace

int main() {
  const std::vector<Action> grid = grid_actions();

  criterion(1, "Schrodinger representation satisfies the seven Heisenberg axioms", 5.0, [&] {
    Outcome o;
    for (const Action& a : grid) {
      const ValidationReport r = validate_heisenberg(schrodinger(a), kTight);
      o.check(r.worst_residual(), kTight, label(a));
      o.require(r.pass(), label(a) + " failed an axiom");
    }
    return o;
  });

  criterion(2, "Fourier transform is a *-isomorphism with inverse", 5.0, [&] {
    Outcome o;
    for (const Action& a : grid) {
      const FiniteAbelianGroup& g = a.group();
      const std::size_t n = g.order();
      const Action iota = Action::trivial(g, a.dim());
      Rng rng(20);
      for (int k = 0; k < 50; ++k) {
        const FnTable f = random_fn(n, a.dim(), rng), h = random_fn(n, a.dim(), rng);
        const CrossedElem cf = CrossedElem::matrix_coeff(iota, f), ch = CrossedElem::matrix_coeff(iota, h);
        const FnTable ff = fourier(g, f), fh = fourier(g, h);
        FnTable prod(n), star(n);
        for (std::size_t x = 0; x < n; ++x) prod[x] = ff[x] * fh[x], star[x] = ff[x].adjoint();
        o.check(sup_diff(fourier(g, convolve(cf, ch).raw()), prod), kTight, label(a) + " convolution");
        o.check(sup_diff(fourier(g, involute(cf).raw()), star), kTight, label(a) + " involution");
        o.check(sup_diff(inverse_fourier(g, ff), f), kTight, label(a) + " round trip");
      }
    }
    return o;
  });

  criterion(3, "Bakic-Guljas restriction is an isometric *-isomorphism", 10.0, [&] {
    Outcome o;
    for (const Action& a : grid) {
      const HModule l2 = HModule::l2(a);
      Rng rng(30);
      const ReducedSpace red = reduce(l2, RankOneProj(random_ginibre(a.dim(), 1, rng).col(0)));
      for (int k = 0; k < 50; ++k) {
        const ModuleOperator s = random_operator(l2, rng), t = random_operator(l2, rng);
        const Mat rs = restrict_operator(s, red), rt = restrict_operator(t, red);
        o.check(op_norm(restrict_operator(s * t, red) - rs * rt), kTight, label(a) + " multiplicative");
        o.check(op_norm(restrict_operator(s.adjoint(), red) - rs.adjoint()), kTight, label(a) + " adjoint");
        o.check(std::abs(op_norm(s.matrix()) - op_norm(rs)), kLoose, label(a) + " isometry");
        o.check(op_norm(extend_operator(rs, red).matrix() - s.matrix()), kTight, label(a) + " extend o restrict");
      }
    }
    return o;
  });

  criterion(4, "pi_full is bijective onto the compacts and multiplicative", 5.0, [&] {
    Outcome o;
    for (const Action& a : grid) {
      const auto nd = static_cast<std::size_t>(a.group().order()) * static_cast<std::size_t>(a.dim());
      const std::size_t rank = numerical_rank(pi_full_matrix(a));
      o.require(rank == nd * nd, label(a) + " rank " + std::to_string(rank) + " != " + std::to_string(nd * nd));
      Rng rng(40);
      for (int k = 0; k < 20; ++k) {
        const CrossedElem f = random_function_elem(a, rng), h = random_function_elem(a, rng);
        o.check(op_norm(pi_full(convolve(f, h)).matrix() - pi_full(f).matrix() * pi_full(h).matrix()), kTight,
                label(a) + " homomorphism");
        o.check(op_norm(pi_full(involute(f)).matrix() - pi_full(f).matrix().adjoint()), kTight, label(a) + " adjoint");
      }
    }
    return o;
  });

  criterion(5, "decompose recovers m in {1,2,3} over 5 seeds with residuals <= 1e-8", 30.0, [&] {
    Outcome o;
    for (const Action& a : grid)
      for (std::size_t m = 1; m <= 3; ++m)
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
          const std::string at = label(a) + " m=" + std::to_string(m) + " seed=" + std::to_string(seed);
          const DecompositionResult r = decompose(random_heisenberg(a, m, seed), kTight);
          o.require(r.multiplicity == m && r.rank_multiplicity == m, at + " recovered m=" + std::to_string(r.multiplicity));
          o.check(r.residuals.R, kLoose, at + " R");
          o.check(r.residuals.S, kLoose, at + " S");
          o.check(r.residuals.rho, kLoose, at + " rho");
        }
    return o;
  });

  criterion(6, "Green imprimitivity compatibility and left positivity", 5.0, [&] {
    Outcome o;
    for (const Action& a : grid) {
      const HModule l2 = HModule::l2(a);
      Rng rng(60);
      for (int k = 0; k < 50; ++k) {
        const ModuleVector phi = random_vector(l2, rng), psi = random_vector(l2, rng), th = random_vector(l2, rng);
        const ModuleVector lhs = pi_full(green_left_inner(phi, psi)).apply(th);
        const ModuleVector rhs = right_act(phi, inner(psi, th));
        o.check(op_norm(lhs.stacked() - rhs.stacked()), kTight, label(a) + " compatibility");
        const Mat pos = pi_full(green_left_inner(phi, phi)).matrix();
        const double lambda =
            Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (pos + pos.adjoint()), Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
        o.check(std::max(op_norm(pos - pos.adjoint()), -lambda), kTight, label(a) + " positivity");
      }
    }
    return o;
  });

  criterion(7, "Takai-Takesaki chain is a *-isomorphism of |G|^2 d^2 dimensions", 5.0, [&] {
    Outcome o;
    for (const Action& a : grid) {
      const TakaiReport t = takai_iso(a, 5, 70);
      const std::size_t expected = a.group().order() * a.group().order() * static_cast<std::size_t>(a.dim() * a.dim());
      o.require(t.lhs_dimension == expected && t.rhs_dimension == expected && t.map_rank == expected &&
                    t.composite_rank == expected,
                label(a) + " dimension mismatch");
      o.check(t.worst_residual(), kTight, label(a));
    }
    return o;
  });

  criterion(8, "distinct actions give inequivalent Schrodinger representations", 1.0, [&] {
    Outcome o;
    const FiniteAbelianGroup z2({2});
    const Action iota = Action::trivial(z2, 2);
    Mat u = Mat::Identity(2, 2);
    u(1, 1) = -1.0;
    const Action beta = Action::from_generators(z2, {u});
    const auto w = inequivalence_witness(iota, beta, kTight);
    o.require(w.has_value(), "no witness for (iota, Ad(diag(1,-1)))");
    if (w) {
      o.require(w->gap >= 1.0, "gap " + std::to_string(w->gap) + " below 1");
      o.require(w->contradiction > kTight, "no contradiction at the witness");
    }
    o.require(!inequivalence_witness(iota, iota, kTight), "witness for iota against itself");
    o.require(!inequivalence_witness(beta, beta, kTight), "witness for beta against itself");
    return o;
  });

  criterion(9, "the full suite passes at d = 1 (classical Stone-von Neumann)", 10.0, [&] {
    Outcome o;
    RunConfig cfg;
    for (const auto& s : default_grid())
      if (s.d == 1) cfg.systems.push_back(s);
    cfg.suites = suite_names();
    cfg.multiplicities = {1, 2, 3};
    cfg.seeds = {1, 2};
    cfg.tolerance = kTight;
    const Report r = run(cfg);
    for (const auto& s : r.suites) {
      o.check(s.worst_residual, s.tolerance, s.name);
      o.require(s.pass, s.name + " failed at " + s.witness);
    }
    return o;
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
