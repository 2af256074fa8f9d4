#include "modweyl/heisenberg.hpp"

#include <algorithm>
#include <sstream>

namespace modweyl {

namespace {

struct Worst {
  double residual = 0.0;
  std::string witness;
  void offer(double r, const std::string& w) {
    if (witness.empty() || r > residual) residual = r, witness = w;
  }
};

std::string unit_name(int i, int j) { return "e" + std::to_string(i + 1) + std::to_string(j + 1); }

void check_shapes(const HeisenbergRep& rep) {
  const std::size_t n = rep.group().order();
  const auto d = static_cast<std::size_t>(rep.dim());
  if (rep.module.dim() != rep.dim()) throw StructuralError("representation module is over the wrong M_d");
  if (rep.rho_units.size() != d * d) throw StructuralError("rho needs one value per matrix unit");
  if (rep.R.size() != n || rep.S.size() != n) throw StructuralError("R and S tables must cover the whole group");
  auto same_size = [&](const ModuleOperator& t) { return t.matrix().rows() == rep.module.stacked_rows(); };
  if (!std::all_of(rep.rho_units.begin(), rep.rho_units.end(), same_size) ||
      !std::all_of(rep.R.begin(), rep.R.end(), same_size) || !std::all_of(rep.S.begin(), rep.S.end(), same_size))
    throw StructuralError("representation operators do not match the module size");
}

/// Residuals of a table T : H -> L(X) being a unitary homomorphism.
Worst unitary_rep_residual(const FiniteAbelianGroup& group, const std::vector<ModuleOperator>& table,
                           const char* label) {
  Worst worst;
  const Eigen::Index size = table.front().matrix().rows();
  const Mat id = Mat::Identity(size, size);
  worst.offer(op_norm(table[0].matrix() - id), std::string(label) + "(e) != I");
  for (std::size_t x = 0; x < group.order(); ++x) {
    const Mat& t = table[x].matrix();
    worst.offer(op_norm(t.adjoint() * t - id), std::string(label) + " unitarity at " + to_string(group.element_at(x)));
    for (std::size_t y = 0; y < group.order(); ++y) {
      worst.offer(op_norm(t * table[y].matrix() - table[group.add(x, y)].matrix()),
                  std::string(label) + " homomorphism at x=" + to_string(group.element_at(x)) +
                      " y=" + to_string(group.element_at(y)));
    }
  }
  return worst;
}

Mat rho_matrix(const HeisenbergRep& rep, const Mat& a) {
  const int d = rep.dim();
  Mat out = Mat::Zero(rep.module.stacked_rows(), rep.module.stacked_rows());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (a(i, j) != Complex(0.0)) out += a(i, j) * rep.rho_units[static_cast<std::size_t>(i * d + j)].matrix();
  return out;
}

}  // namespace

ModuleOperator HeisenbergRep::rho(const Mat& a) const {
  if (a.rows() != dim() || a.cols() != dim()) throw StructuralError("rho applied to a matrix of the wrong size");
  return ModuleOperator(module, rho_matrix(*this, a));
}

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::Fullness: return "full Hilbert module";
    case Axiom::NonDegenerate: return "rho non-degenerate *-representation";
    case Axiom::RUnitaryRep: return "R unitary representation of G";
    case Axiom::SUnitaryRep: return "S unitary representation of the dual group";
    case Axiom::Weyl: return "Weyl commutation relation";
    case Axiom::Covariance: return "R-rho covariance";
    case Axiom::Commutation: return "S-rho commutation";
  }
  return "?";
}

bool ValidationReport::pass() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& r) { return r.pass; });
}

double ValidationReport::worst_residual() const {
  double w = 0.0;
  for (const auto& r : axioms) w = std::max(w, r.residual);
  return w;
}

ValidationReport validate_heisenberg(const HeisenbergRep& rep, double tol) {
  check_shapes(rep);
  const FiniteAbelianGroup& group = rep.group();
  const std::size_t n = group.order();
  const int d = rep.dim();
  ValidationReport report;
  report.tolerance = tol;

  auto record = [&](Axiom a, const Worst& w) {
    report.axioms[static_cast<std::size_t>(a)] = AxiomResult{a, w.residual, w.witness, w.residual <= tol};
  };

  {
    // Inner products of unit-column vectors e_r (x) e_j^T give delta_rs e_jl,
    // which is enough to detect the span of <X, X>.
    const Eigen::Index rows = rep.module.stacked_rows();
    Mat span(d * d, rows * d * d);
    Eigen::Index col = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) {
          Mat zj = Mat::Zero(rows, d), zl = Mat::Zero(rows, d);
          zj(r, j) = 1.0;
          zl(r, l) = 1.0;
          span.col(col++) = flatten(zj.adjoint() * zl);
        }
    const std::size_t rank = numerical_rank(span);
    Worst w;
    w.offer(static_cast<double>(d * d - static_cast<int>(rank)) / (d * d),
            "span of inner products has dimension " + std::to_string(rank));
    record(Axiom::Fullness, w);
  }

  {
    Worst w;
    const Eigen::Index size = rep.module.stacked_rows();
    Mat sum = Mat::Zero(size, size);
    for (int i = 0; i < d; ++i) {
      sum += rep.rho_units[static_cast<std::size_t>(i * d + i)].matrix();
      for (int j = 0; j < d; ++j) {
        const Mat& eij = rep.rho_units[static_cast<std::size_t>(i * d + j)].matrix();
        w.offer(op_norm(eij.adjoint() - rep.rho_units[static_cast<std::size_t>(j * d + i)].matrix()),
                "rho(" + unit_name(i, j) + ")^* != rho(" + unit_name(j, i) + ")");
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            const Mat expected = (j == k) ? rep.rho_units[static_cast<std::size_t>(i * d + l)].matrix()
                                          : Mat::Zero(size, size).eval();
            w.offer(op_norm(eij * rep.rho_units[static_cast<std::size_t>(k * d + l)].matrix() - expected),
                    "rho multiplicativity at " + unit_name(i, j) + "*" + unit_name(k, l));
          }
      }
    }
    w.offer(op_norm(sum - Mat::Identity(size, size)), "rho(I) != Id");
    record(Axiom::NonDegenerate, w);
  }

  record(Axiom::RUnitaryRep, unitary_rep_residual(group, rep.R, "R"));
  record(Axiom::SUnitaryRep, unitary_rep_residual(group, rep.S, "S"));

  {
    Worst w;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t phi = 0; phi < n; ++phi) {
        const Complex c = group.character_table()(static_cast<Eigen::Index>(phi), static_cast<Eigen::Index>(x));
        const Mat& r = rep.R[x].matrix();
        const Mat& s = rep.S[phi].matrix();
        w.offer(op_norm(s * r - c * (r * s)),
                "x=" + to_string(group.element_at(x)) + " phi=" + to_string(group.character_at(phi)));
      }
    record(Axiom::Weyl, w);
  }

  {
    Worst cov, com;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Mat e = matrix_unit(d, i, j);
        const Mat& rho_e = rep.rho_units[static_cast<std::size_t>(i * d + j)].matrix();
        for (std::size_t x = 0; x < n; ++x) {
          const Mat& r = rep.R[x].matrix();
          cov.offer(op_norm(r * rho_e - rho_matrix(rep, rep.alpha.apply(x, e)) * r),
                    "x=" + to_string(group.element_at(x)) + " a=" + unit_name(i, j));
          const Mat& s = rep.S[x].matrix();
          com.offer(op_norm(s * rho_e - rho_e * s),
                    "phi=" + to_string(group.character_at(x)) + " a=" + unit_name(i, j));
        }
      }
    record(Axiom::Covariance, cov);
    record(Axiom::Commutation, com);
  }
  return report;
}

HeisenbergRep schrodinger(const Action& alpha) {
  const FiniteAbelianGroup& group = alpha.group();
  const std::size_t n = group.order();
  const int d = alpha.dim();
  const HModule l2 = HModule::l2(alpha);
  const Eigen::Index size = l2.stacked_rows();

  HeisenbergRep rep{alpha, l2, {}, {}, {}};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat m = Mat::Zero(size, size);
      for (std::size_t y = 0; y < n; ++y) {
        const Mat& u = alpha.unitary(y);
        m.block(static_cast<Eigen::Index>(y) * d, static_cast<Eigen::Index>(y) * d, d, d) =
            u.adjoint() * matrix_unit(d, i, j) * u;
      }
      rep.rho_units.emplace_back(l2, std::move(m));
    }
  for (std::size_t x = 0; x < n; ++x) {
    Mat u = Mat::Zero(size, size);
    for (std::size_t y = 0; y < n; ++y)
      u.block(static_cast<Eigen::Index>(y) * d, static_cast<Eigen::Index>(group.sub(y, x)) * d, d, d) =
          Mat::Identity(d, d);
    rep.R.emplace_back(l2, std::move(u));
  }
  for (std::size_t phi = 0; phi < n; ++phi) {
    Mat v = Mat::Zero(size, size);
    for (std::size_t y = 0; y < n; ++y)
      v.block(static_cast<Eigen::Index>(y) * d, static_cast<Eigen::Index>(y) * d, d, d) =
          group.character_table()(static_cast<Eigen::Index>(phi), static_cast<Eigen::Index>(y)) *
          Mat::Identity(d, d);
    rep.S.emplace_back(l2, std::move(v));
  }
  return rep;
}

SchrodingerFunctionForm schrodinger_function_form(const Action& alpha) {
  const FiniteAbelianGroup& group = alpha.group();
  const std::size_t n = group.order();
  const int d = alpha.dim();
  const auto dim = static_cast<Eigen::Index>(n) * d * d;
  auto at = [d](std::size_t y, int k, int l) { return (static_cast<Eigen::Index>(y) * d + k) * d + l; };

  // Builds the matrix of a map on functions G -> M_d column by column from
  // its action on delta_x (x) e_ij.
  auto assemble = [&](auto&& map) {
    Mat out = Mat::Zero(dim, dim);
    for (std::size_t x = 0; x < n; ++x)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          FnTable f(n, Mat::Zero(d, d));
          f[x] = matrix_unit(d, i, j);
          const FnTable g = map(f);
          for (std::size_t y = 0; y < n; ++y)
            for (int k = 0; k < d; ++k)
              for (int l = 0; l < d; ++l) out(at(y, k, l), at(x, i, j)) = g[y](k, l);
        }
    return out;
  };

  SchrodingerFunctionForm form;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Mat a = matrix_unit(d, i, j);
      form.M_units.push_back(assemble([&](const FnTable& f) {
        FnTable g(n);
        for (std::size_t y = 0; y < n; ++y) g[y] = a * f[y];
        return g;
      }));
    }
  for (std::size_t x = 0; x < n; ++x)
    form.U.push_back(assemble([&](const FnTable& f) {
      FnTable g(n);
      for (std::size_t y = 0; y < n; ++y) g[y] = alpha.apply(x, f[group.sub(y, x)]);
      return g;
    }));
  for (std::size_t phi = 0; phi < n; ++phi)
    form.V.push_back(assemble([&](const FnTable& f) {
      FnTable g(n);
      for (std::size_t y = 0; y < n; ++y)
        g[y] = group.character_table()(static_cast<Eigen::Index>(phi), static_cast<Eigen::Index>(y)) * f[y];
      return g;
    }));
  return form;
}

ModuleOperator integrated_form(const HeisenbergRep& rep, Side side, const FnTable& f, double weight) {
  const std::vector<ModuleOperator>& table = side == Side::Group ? rep.R : rep.S;
  if (f.size() != table.size())
    throw StructuralError("integrated form: function has " + std::to_string(f.size()) + " values, group has order " +
                          std::to_string(table.size()));
  Mat out = Mat::Zero(rep.module.stacked_rows(), rep.module.stacked_rows());
  for (std::size_t h = 0; h < f.size(); ++h) out += rep.rho(f[h]).matrix() * table[h].matrix();
  return ModuleOperator(rep.module, weight * out);
}

FnTable fourier(const FiniteAbelianGroup& group, const FnTable& f, double weight) {
  const std::size_t n = group.order();
  if (f.size() != n) throw StructuralError("fourier: function must be defined on the whole dual group");
  FnTable out(n, Mat::Zero(f.front().rows(), f.front().cols()));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t phi = 0; phi < n; ++phi)
      out[x] += group.character_table()(static_cast<Eigen::Index>(phi), static_cast<Eigen::Index>(x)) * f[phi];
  for (auto& m : out) m *= weight;
  return out;
}

FnTable inverse_fourier(const FiniteAbelianGroup& group, const FnTable& g, double weight) {
  const std::size_t n = group.order();
  if (g.size() != n) throw StructuralError("inverse_fourier: function must be defined on the whole group");
  FnTable out(n, Mat::Zero(g.front().rows(), g.front().cols()));
  for (std::size_t phi = 0; phi < n; ++phi)
    for (std::size_t x = 0; x < n; ++x)
      out[phi] += std::conj(group.character_table()(static_cast<Eigen::Index>(phi), static_cast<Eigen::Index>(x))) * g[x];
  for (auto& m : out) m /= weight * static_cast<double>(n);
  return out;
}

ModuleOperator pi_nu(const HeisenbergRep& rep, const FnTable& g, double weight) {
  return integrated_form(rep, Side::Dual, inverse_fourier(rep.group(), g, weight), weight);
}

ModuleOperator CovariantRep::pi(const FnTable& g) const {
  const int d = alpha.dim();
  if (g.size() != alpha.group().order()) throw StructuralError("pi: function must be defined on the whole group");
  Mat out = Mat::Zero(module.stacked_rows(), module.stacked_rows());
  for (std::size_t y = 0; y < g.size(); ++y)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (g[y](i, j) != Complex(0.0))
          out += g[y](i, j) * pi_units[(y * static_cast<std::size_t>(d) + i) * d + j].matrix();
  return ModuleOperator(module, std::move(out));
}

FnTable lt_alpha(const Action& alpha, std::size_t x, const FnTable& g) {
  const FiniteAbelianGroup& group = alpha.group();
  if (g.size() != group.order()) throw StructuralError("lt_alpha: function must be defined on the whole group");
  FnTable out(g.size());
  for (std::size_t y = 0; y < g.size(); ++y) out[y] = alpha.apply(x, g[group.sub(y, x)]);
  return out;
}

namespace {

FnTable delta_fn(std::size_t n, int d, std::size_t y, int i, int j) {
  FnTable g(n, Mat::Zero(d, d));
  g[y](i, j) = 1.0;
  return g;
}

}  // namespace

CovariantRep heisenberg_to_covariant(const HeisenbergRep& rep, double tol) {
  const ValidationReport report = validate_heisenberg(rep, tol);
  if (!report.pass()) {
    std::ostringstream msg;
    msg << "representation fails validation (worst residual " << report.worst_residual() << ")";
    throw ValidationError(msg.str());
  }
  const std::size_t n = rep.group().order();
  const int d = rep.dim();
  CovariantRep cov{rep.alpha, rep.module, {}, rep.R};
  for (std::size_t y = 0; y < n; ++y)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) cov.pi_units.push_back(pi_nu(rep, delta_fn(n, d, y, i, j)));
  return cov;
}

HeisenbergRep covariant_to_heisenberg(const CovariantRep& cov) {
  const FiniteAbelianGroup& group = cov.alpha.group();
  const std::size_t n = group.order();
  const int d = cov.alpha.dim();
  HeisenbergRep rep{cov.alpha, cov.module, {}, cov.R, {}};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rep.rho_units.push_back(cov.pi(FnTable(n, matrix_unit(d, i, j))));
  for (std::size_t phi = 0; phi < n; ++phi) {
    FnTable chi(n);
    for (std::size_t x = 0; x < n; ++x)
      chi[x] = group.character_table()(static_cast<Eigen::Index>(phi), static_cast<Eigen::Index>(x)) *
               Mat::Identity(d, d);
    rep.S.push_back(cov.pi(chi));
  }
  return rep;
}

double covariance_residual(const CovariantRep& cov) {
  const std::size_t n = cov.alpha.group().order();
  const int d = cov.alpha.dim();
  double worst = 0.0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const FnTable g = delta_fn(n, d, y, i, j);
          const Mat lhs = cov.R[x].matrix() * cov.pi(g).matrix();
          const Mat rhs = cov.pi(lt_alpha(cov.alpha, x, g)).matrix() * cov.R[x].matrix();
          worst = std::max(worst, op_norm(lhs - rhs));
        }
  return worst;
}

CovariantRep green_covariant(const Action& alpha) {
  const std::size_t n = alpha.group().order();
  const int d = alpha.dim();
  const HModule l2 = HModule::l2(alpha);
  CovariantRep cov{alpha, l2, {}, schrodinger(alpha).R};
  for (std::size_t y = 0; y < n; ++y)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        // Xi(g) multiplies function values pointwise; in untwisted
        // coordinates the block at y becomes alpha_{y^-1}(g(y)).
        Mat xi = Mat::Zero(l2.stacked_rows(), l2.stacked_rows());
        const Mat& u = alpha.unitary(y);
        xi.block(static_cast<Eigen::Index>(y) * d, static_cast<Eigen::Index>(y) * d, d, d) =
            u.adjoint() * matrix_unit(d, i, j) * u;
        cov.pi_units.emplace_back(l2, std::move(xi));
      }
  return cov;
}

double rep_distance(const HeisenbergRep& a, const HeisenbergRep& b) {
  if (a.rho_units.size() != b.rho_units.size() || a.R.size() != b.R.size() || a.S.size() != b.S.size())
    throw StructuralError("rep_distance: representations of different systems");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.rho_units.size(); ++k)
    worst = std::max(worst, op_norm(a.rho_units[k].matrix() - b.rho_units[k].matrix()));
  for (std::size_t k = 0; k < a.R.size(); ++k) {
    worst = std::max(worst, op_norm(a.R[k].matrix() - b.R[k].matrix()));
    worst = std::max(worst, op_norm(a.S[k].matrix() - b.S[k].matrix()));
  }
  return worst;
}

}  // namespace modweyl
