#include "dsq/orbit_solver.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "dsq/error.hpp"
#include "dsq/seeding.hpp"

namespace dsq {

OrbitProblem OrbitProblem::from_instance(const DSInstance& inst) {
  inst.validate();
  OrbitProblem p;
  p.mode = inst.mode;
  const int n = inst.rank();
  for (const auto& cls : inst.classes) {
    Eigen::VectorXcd d(n);
    Eigen::Index k = 0;
    for (const auto& e : cls.eigenvalues)
      for (int m = 0; m < e.mult; ++m) d(k++) = e.value;
    p.spectra.push_back(std::move(d));
  }
  return p;
}

namespace {

CMatrix realize(const CMatrix& g, const Eigen::VectorXcd& spectrum) {
  Eigen::PartialPivLU<CMatrix> lu(g);
  return g * spectrum.asDiagonal() * lu.inverse();
}

double condition_number(const CMatrix& g) {
  Eigen::JacobiSVD<CMatrix> svd(g);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  return smin == 0.0 ? std::numeric_limits<double>::infinity() : s(0) / smin;
}

// Orthonormalize g's columns within each eigenspace of Λ. g ↦ g·h with h
// block diagonal in those eigenspaces, so g Λ g⁻¹ is unchanged.
void reset_conditioning(CMatrix& g, const Eigen::VectorXcd& spectrum) {
  const Eigen::Index n = spectrum.size();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = i; j < n; ++j) {
      if (spectrum(j) == spectrum(i)) {
        cols.push_back(j);
        used[static_cast<std::size_t>(j)] = true;
      }
    }
    CMatrix block(g.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) block.col(static_cast<Eigen::Index>(c)) = g.col(cols[c]);
    Eigen::HouseholderQR<CMatrix> qr(block);
    CMatrix q = qr.householderQ() * CMatrix::Identity(g.rows(), block.cols());
    for (std::size_t c = 0; c < cols.size(); ++c) g.col(cols[c]) = q.col(static_cast<Eigen::Index>(c));
  }
}

CMatrix random_conjugator(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  CMatrix g(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(r, c) = Complex(re, im) / std::sqrt(2.0 * n);
    }
  return g;
}

}  // namespace

ObjectiveEval evaluate_objective(Mode mode, const std::vector<CMatrix>& a) {
  require(!a.empty(), ErrorCode::InvalidArgument, "no matrices");
  const Eigen::Index n = a.front().rows();
  const std::size_t k = a.size();
  ObjectiveEval out;
  out.gradient.resize(k);
  if (mode == Mode::Multiplicative) {
    // prefix[i] = A₁⋯Aᵢ, suffix[i] = A_{i+1}⋯A_k (0-based: prefix[0] = I).
    std::vector<CMatrix> prefix(k + 1), suffix(k + 1);
    prefix[0] = CMatrix::Identity(n, n);
    for (std::size_t i = 0; i < k; ++i) prefix[i + 1] = prefix[i] * a[i];
    suffix[k] = CMatrix::Identity(n, n);
    for (std::size_t i = k; i-- > 0;) suffix[i] = a[i] * suffix[i + 1];
    out.constraint = prefix[k] - CMatrix::Identity(n, n);
    for (std::size_t i = 0; i < k; ++i) {
      CMatrix m = prefix[i].adjoint() * out.constraint * suffix[i + 1].adjoint();
      out.gradient[i] = m * a[i].adjoint() - a[i].adjoint() * m;
    }
  } else {
    out.constraint = CMatrix::Zero(n, n);
    for (const CMatrix& ai : a) out.constraint += ai;
    for (std::size_t i = 0; i < k; ++i) {
      out.gradient[i] = out.constraint * a[i].adjoint() - a[i].adjoint() * out.constraint;
    }
  }
  out.f = out.constraint.squaredNorm();
  return out;
}

SolverResult run_start(const OrbitProblem& problem, const SolverOptions& opts, int start_index) {
  const int n = problem.n();
  const std::size_t k = problem.spectra.size();
  require(k >= 1 && n >= 1, ErrorCode::InvalidArgument, "empty problem");

  SolverResult res;
  res.mode = problem.mode;
  res.start_index = start_index;
  // Start 0 is the aligned start gᵢ = T; the others are random.
  std::mt19937_64 gen(derive_seed(opts.seed, static_cast<std::uint64_t>(start_index)));
  std::vector<CMatrix> g(k);
  for (std::size_t i = 0; i < k; ++i) {
    g[i] = start_index == 0 ? CMatrix::Identity(n, n) : random_conjugator(n, gen);
    if (problem.similarity) g[i] = g[i] * *problem.similarity;
  }
  std::vector<CMatrix> a(k);
  for (std::size_t i = 0; i < k; ++i) a[i] = realize(g[i], problem.spectra[i]);

  ObjectiveEval cur = evaluate_objective(problem.mode, a);
  double step = opts.step0;
  int iter = 0;
  for (; iter < opts.max_iter && cur.f > opts.tol; ++iter) {
    double slope = 0;
    for (const CMatrix& gi : cur.gradient) slope += 2.0 * gi.squaredNorm();
    if (slope == 0.0 || !std::isfinite(slope)) break;

    bool accepted = false;
    std::vector<CMatrix> g_new(k), a_new(k);
    ObjectiveEval next;
    while (step > 1e-30) {
      for (std::size_t i = 0; i < k; ++i) {
        CMatrix xi = -step * cur.gradient[i];
        g_new[i] = xi.exp() * g[i];
        a_new[i] = realize(g_new[i], problem.spectra[i]);
      }
      next = evaluate_objective(problem.mode, a_new);
      if (std::isfinite(next.f) && next.f <= cur.f - opts.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    if (next.f > cur.f) res.monotone = false;
    g = std::move(g_new);
    a = std::move(a_new);
    cur = std::move(next);
    if (opts.record_trajectory) res.trajectory.push_back(cur.f);
    step = std::min(step * 2.0, 1e6);

    bool reset = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (condition_number(g[i]) > opts.cond_reset) {
        reset_conditioning(g[i], problem.spectra[i]);
        a[i] = realize(g[i], problem.spectra[i]);
        ++res.conditioning_resets;
        reset = true;
      }
    }
    if (reset) cur = evaluate_objective(problem.mode, a);
  }

  res.iterations = iter;
  res.point.conjugators = std::move(g);
  res.point.matrices = std::move(a);
  res.residual = cur.f;
  res.residual_norm = std::sqrt(cur.f);
  res.converged = cur.f <= opts.tol;
  return res;
}

namespace {

void check_options(const SolverOptions& opts) {
  require(opts.starts >= 1, ErrorCode::InvalidArgument, "starts must be at least 1");
  require(opts.max_iter >= 0, ErrorCode::InvalidArgument, "max_iter must be nonnegative");
  require(opts.tol >= 0 && opts.step0 > 0, ErrorCode::InvalidArgument, "tol must be >= 0 and step0 > 0");
}

bool better(const SolverResult& x, const SolverResult& y) {
  if (x.residual != y.residual) return x.residual < y.residual;
  return x.start_index < y.start_index;
}

}  // namespace

SolverResult solve(const OrbitProblem& problem, const SolverOptions& opts) {
  check_options(opts);
  std::vector<SolverResult> runs(static_cast<std::size_t>(opts.starts));
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < opts.starts; ++s) runs[static_cast<std::size_t>(s)] = run_start(problem, opts, s);
  return *std::min_element(runs.begin(), runs.end(), better);
}

SolverResult solve_serial(const OrbitProblem& problem, const SolverOptions& opts) {
  check_options(opts);
  std::optional<SolverResult> best;
  for (int s = 0; s < opts.starts; ++s) {
    SolverResult r = run_start(problem, opts, s);
    if (!best || better(r, *best)) best = std::move(r);
  }
  return *best;
}

namespace {

void require_residue(const DSInstance& inst) {
  StarData data = build_alpha_zeta(inst);
  ResidueCheck rc = residue_condition(inst, data);
  require(rc.met, ErrorCode::ResidueConditionViolated,
          inst.mode == Mode::Additive ? "eigenvalues (with multiplicity) do not sum to zero"
                                      : "eigenvalues (with multiplicity) do not multiply to one");
}

}  // namespace

SolverResult solve_additive(const DSInstance& inst, const SolverOptions& opts) {
  require(inst.mode == Mode::Additive, ErrorCode::InvalidArgument, "solve_additive needs an additive instance");
  require_residue(inst);
  return solve(OrbitProblem::from_instance(inst), opts);
}

SolverResult solve_multiplicative(const DSInstance& inst, const SolverOptions& opts) {
  require(inst.mode == Mode::Multiplicative, ErrorCode::InvalidArgument,
          "solve_multiplicative needs a multiplicative instance");
  require_residue(inst);
  return solve(OrbitProblem::from_instance(inst), opts);
}

RankInfo numerical_rank(const CMatrix& m, int n) {
  RankInfo info;
  if (m.size() == 0) {
    info.gap = std::numeric_limits<double>::infinity();
    return info;
  }
  Eigen::JacobiSVD<CMatrix> svd(m);
  info.singular_values = svd.singularValues();
  const double smax = info.singular_values(0);
  info.threshold = 1e3 * n * std::numeric_limits<double>::epsilon() * smax;
  int r = 0;
  while (r < info.singular_values.size() && info.singular_values(r) > info.threshold) ++r;
  info.rank = r;
  if (r == info.singular_values.size() || r == 0) {
    info.gap = std::numeric_limits<double>::infinity();
  } else {
    const double below = info.singular_values(r);
    info.gap = below == 0.0 ? std::numeric_limits<double>::infinity() : info.singular_values(r - 1) / below;
  }
  return info;
}

namespace {

// vec(L X R) = (Rᵀ ⊗ L) vec(X), column-major vec.
CMatrix kron(const CMatrix& x, const CMatrix& y) {
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

}  // namespace

CMatrix commutator_matrix(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  // vec(ξA − Aξ) = (Aᵀ ⊗ I − I ⊗ A) vec(ξ).
  return kron(a.transpose(), id) - kron(id, a);
}

CMatrix constraint_jacobian(Mode mode, const std::vector<CMatrix>& a) {
  require(!a.empty(), ErrorCode::InvalidArgument, "no matrices");
  const Eigen::Index n = a.front().rows();
  const Eigen::Index nn = n * n;
  const auto k = static_cast<Eigen::Index>(a.size());
  CMatrix jac(nn, k * nn);
  if (mode == Mode::Multiplicative) {
    std::vector<CMatrix> prefix(a.size() + 1), suffix(a.size() + 1);
    prefix[0] = CMatrix::Identity(n, n);
    for (std::size_t i = 0; i < a.size(); ++i) prefix[i + 1] = prefix[i] * a[i];
    suffix[a.size()] = CMatrix::Identity(n, n);
    for (std::size_t i = a.size(); i-- > 0;) suffix[i] = a[i] * suffix[i + 1];
    for (std::size_t i = 0; i < a.size(); ++i) {
      jac.block(0, static_cast<Eigen::Index>(i) * nn, nn, nn) =
          kron(suffix[i + 1].transpose(), prefix[i]) * commutator_matrix(a[i]);
    }
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      jac.block(0, static_cast<Eigen::Index>(i) * nn, nn, nn) = commutator_matrix(a[i]);
    }
  }
  return jac;
}

TangentReport tangent_dimension_report(const SolverResult& result) {
  const auto& a = result.point.matrices;
  require(!a.empty(), ErrorCode::InvalidArgument, "result holds no matrices");
  const int n = static_cast<int>(a.front().rows());
  TangentReport rep;
  int orbit_total = 0;
  for (const CMatrix& ai : a) {
    RankInfo info = numerical_rank(commutator_matrix(ai), n);
    rep.orbit_dims.push_back(info.rank);
    orbit_total += info.rank;
    rep.orbits.push_back(std::move(info));
  }
  rep.constraint = numerical_rank(constraint_jacobian(result.mode, a), n);
  rep.constraint_rank = rep.constraint.rank;
  rep.tangent_dim = orbit_total - rep.constraint_rank;
  return rep;
}

std::pair<int, int> tangent_dimension(SolverResult& result, const DSInstance& inst) {
  require(result.converged, ErrorCode::NotConverged, "tangent dimension needs a converged solution");
  require(static_cast<int>(result.point.matrices.size()) == static_cast<int>(inst.classes.size()),
          ErrorCode::InvalidArgument, "result does not match the instance");
  TangentReport rep = tangent_dimension_report(result);
  result.tangent_dim = rep.tangent_dim;
  result.constraint_rank = rep.constraint_rank;
  return {rep.tangent_dim, rep.constraint_rank};
}

namespace {

// Smallest max-deviation matching of eigenvalues to the target spectrum;
// exhaustive for n ≤ 8, greedy beyond.
double spectrum_mismatch(const Eigen::VectorXcd& eig, const Eigen::VectorXcd& target) {
  const Eigen::Index n = eig.size();
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  if (n <= 8) {
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0;
      for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, std::abs(eig(perm[static_cast<std::size_t>(i)]) - target(i)));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  double worst = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double d = std::numeric_limits<double>::infinity();
    Eigen::Index pick = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!taken[static_cast<std::size_t>(j)] && std::abs(eig(j) - target(i)) < d) {
        d = std::abs(eig(j) - target(i));
        pick = j;
      }
    }
    taken[static_cast<std::size_t>(pick)] = true;
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace

double spectrum_deviation(const std::vector<CMatrix>& a, const OrbitProblem& problem) {
  require(a.size() == problem.spectra.size(), ErrorCode::InvalidArgument, "one matrix per class is required");
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    require(a[i].rows() == problem.n() && a[i].cols() == problem.n(), ErrorCode::ShapeMismatch,
            "matrix size does not match the class");
    Eigen::ComplexEigenSolver<CMatrix> es(a[i], false);
    if (es.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const double scale = std::max(1.0, problem.spectra[i].cwiseAbs().maxCoeff());
    worst = std::max(worst, spectrum_mismatch(es.eigenvalues(), problem.spectra[i]) / scale);
  }
  return worst;
}

bool certify(const SolverResult& result, const DSInstance& inst, double tol) {
  const OrbitProblem problem = OrbitProblem::from_instance(inst);
  const auto& a = result.point.matrices;
  if (a.size() != problem.spectra.size()) return false;
  for (const CMatrix& ai : a)
    if (ai.rows() != problem.n() || ai.cols() != problem.n()) return false;
  if (!(spectrum_deviation(a, problem) <= tol)) return false;
  return std::sqrt(evaluate_objective(result.mode, a).f) <= tol;
}

}  // namespace dsq
