#pragma once

// Conjugacy-class data → star-quiver data, the sufficient solvability
// criterion, expected dimensions, and the parabolic-weight → King-weight map.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsq/exact.hpp"
#include "dsq/quiver.hpp"

namespace dsq {

enum class Mode { Additive, Multiplicative, Connection };
std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct Eigenvalue {
  std::complex<double> value;
  int mult = 1;
  /// Set when the eigenvalue was supplied as exact rationals; residue tests
  /// are then exact.
  std::optional<GaussRational> exact;
};

struct ConjugacyClassSpec {
  std::vector<Eigenvalue> eigenvalues;
  int size() const;
};

struct DSInstance {
  Mode mode = Mode::Additive;
  std::vector<ConjugacyClassSpec> classes;
  /// Connection mode only: ζ per class in normalized order.
  std::optional<std::vector<std::vector<std::complex<double>>>> zeta_override;
  /// Marked points (λ₀re, λ₀im, λ₁re, λ₁im); carried through, not used here.
  std::optional<std::vector<std::vector<double>>> points;

  int rank() const;
  /// Throws InconsistentSize / InvalidArgument on malformed data.
  void validate() const;
};

DSInstance normalize_classes(const DSInstance& inst, std::vector<std::string>* notes = nullptr);

struct StarData {
  StarShape shape;
  DimVector alpha;
  std::vector<std::vector<std::complex<double>>> zeta;  // ζ_{ij}, j = 1..wᵢ
  std::vector<std::vector<int>> mult;                    // m_{ij}, j = 1..wᵢ
};

StarData build_alpha_zeta(const DSInstance& inst);

struct ResidueCheck {
  bool met = false;
  std::complex<double> value;
  bool exact = false;
  /// Connection mode: the nearest integer, i.e. α∞ = −deg E.
  std::optional<std::int64_t> integer;
};

inline constexpr double kAdditiveResidueTol = 1e-12;  // scaled by n
inline constexpr double kMultiplicativeResidueTol = 1e-10;
inline constexpr double kConnectionResidueTol = 1e-10;

ResidueCheck residue_condition(const DSInstance& inst, const StarData& data);

struct Verdict {
  int n = 0;
  std::vector<int> w;
  DimVector alpha;
  std::vector<std::vector<std::complex<double>>> zeta;
  std::int64_t delta = 0;
  bool in_fundamental_region = false;
  bool delta_shortcut = false;  // δ(α) ≥ 0 after normalization
  ResidueCheck residue;
  bool sufficient = false;
  std::int64_t tits_q = 0;
  std::int64_t p = 0;
  std::int64_t dim_flag = 0;
  std::int64_t expected_dim_solution_space = 0;
  std::int64_t expected_dim_conn_stack = 0;
  std::vector<std::string> notes;
};

Verdict verdict(const DSInstance& inst);

/// Σᵢ (α₀² − Σⱼ m_{ij}²) / 2.
std::int64_t dim_flag_product(const DimVector& alpha, const StarShape& shape);

/// Parabolic weights θ_{i1} < … < θ_{iwᵢ}, one per eigenvalue of class i, in
/// [0, 1). `a` is the parabolic slope used by theta_to_lambda.
struct StabilityData {
  std::vector<std::vector<mpq_class>> theta;
  mpq_class a;
  void validate(const StarShape& shape) const;
};

mpq_class parabolic_degree(std::int64_t d, const StabilityData& stab, const StarShape& shape, const DimVector& alpha);
mpq_class parabolic_slope(std::int64_t d, const StabilityData& stab, const StarShape& shape, const DimVector& alpha);

/// King weights over the squid vertices (build_squid order: star vertices,
/// then "inf").
std::vector<mpq_class> theta_to_lambda(const StabilityData& stab, const StarShape& shape);

/// Squid dimension vector (α_{ij}, α∞ + α₀ at the centre, α∞ at "inf").
DimVector squid_alpha(const DimVector& star_alpha, std::int64_t alpha_inf);

}  // namespace dsq
