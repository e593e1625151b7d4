#pragma once

// Numerical construction of additive / multiplicative Deligne-Simpson
// solutions by descent over products of conjugacy orbits, and numerical-rank
// certification of the solution-space dimension.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "dsq/ds_frontend.hpp"
#include "dsq/squid_symplectic.hpp"

namespace dsq {

struct SolverOptions {
  int starts = 16;
  int max_iter = 5000;
  double tol = 1e-16;  // on f = ‖constraint‖²_F
  std::uint64_t seed = 0;
  double step0 = 1e-1;
  bool record_trajectory = false;
  double armijo_c = 1e-4;
  double cond_reset = 1e8;
};

struct OrbitPoint {
  std::vector<CMatrix> conjugators;  // gᵢ
  std::vector<CMatrix> matrices;     // Aᵢ = gᵢ Λᵢ gᵢ⁻¹
};

struct SolverResult {
  Mode mode = Mode::Additive;
  OrbitPoint point;
  double residual = 0;       // f
  double residual_norm = 0;  // ‖constraint‖_F = √f
  int iterations = 0;
  bool converged = false;
  int start_index = 0;
  std::optional<int> tangent_dim;
  std::optional<int> constraint_rank;
  /// Every accepted step decreased f (Armijo).
  bool monotone = true;
  int conditioning_resets = 0;
  std::vector<double> trajectory;  // f after each accepted step, if recorded
};

/// The fixed data of a run: per-class diagonal spectra Λᵢ and an optional
/// similarity T applied to every Λᵢ (bases T Λᵢ T⁻¹).
struct OrbitProblem {
  Mode mode = Mode::Additive;
  std::vector<Eigen::VectorXcd> spectra;
  std::optional<CMatrix> similarity;

  static OrbitProblem from_instance(const DSInstance& inst);
  int n() const { return spectra.empty() ? 0 : static_cast<int>(spectra.front().size()); }
};

/// f and the per-class descent directions at a point.
struct ObjectiveEval {
  double f = 0;
  CMatrix constraint;              // S or P − I
  std::vector<CMatrix> gradient;   // Gᵢ = [Mᵢ, Aᵢ*], df(ξ) = 2 Re⟨G, ξ⟩
};

ObjectiveEval evaluate_objective(Mode mode, const std::vector<CMatrix>& matrices);

/// One deterministic descent run from start `start_index`.
SolverResult run_start(const OrbitProblem& problem, const SolverOptions& opts, int start_index);

/// Multi-start over OpenMP; result independent of the thread count.
SolverResult solve(const OrbitProblem& problem, const SolverOptions& opts);
/// Single-threaded reference for solve().
SolverResult solve_serial(const OrbitProblem& problem, const SolverOptions& opts);

SolverResult solve_additive(const DSInstance& inst, const SolverOptions& opts);
SolverResult solve_multiplicative(const DSInstance& inst, const SolverOptions& opts);

struct RankInfo {
  int rank = 0;
  Eigen::VectorXd singular_values;
  double threshold = 0;
  /// σ_r / σ_{r+1}; +inf when nothing sits below the threshold.
  double gap = 0;
};

/// Rank with threshold 10³·n·ε·σ_max.
RankInfo numerical_rank(const CMatrix& m, int n);

/// ξ ↦ [ξ, A] as an n² × n² matrix acting on column-major vec(ξ).
CMatrix commutator_matrix(const CMatrix& a);
/// Linearized constraint (ξ₁..ξ_k) ↦ Σ [ξᵢ, Aᵢ] or the product-rule
/// differential of A₁⋯A_k.
CMatrix constraint_jacobian(Mode mode, const std::vector<CMatrix>& matrices);

struct TangentReport {
  int tangent_dim = 0;
  int constraint_rank = 0;
  std::vector<int> orbit_dims;
  RankInfo constraint;
  std::vector<RankInfo> orbits;
};

TangentReport tangent_dimension_report(const SolverResult& result);
/// Fills result.tangent_dim / constraint_rank; throws NotConverged.
std::pair<int, int> tangent_dimension(SolverResult& result, const DSInstance& inst);

/// Largest eigenvalue deviation of each Aᵢ from its class spectrum after
/// optimal matching, relative to max(1, |spectrum|).
double spectrum_deviation(const std::vector<CMatrix>& matrices, const OrbitProblem& problem);

/// Spectra match within tol after optimal matching, and ‖constraint‖_F ≤ tol.
bool certify(const SolverResult& result, const DSInstance& inst, double tol);

}  // namespace dsq
