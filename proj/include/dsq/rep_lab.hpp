#pragma once

// Exact quiver representations: Hom/Ext dimensions, stabilizers, sampling
// probes of the number of parameters, and brute-force decomposition checks.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "dsq/exact.hpp"
#include "dsq/quiver.hpp"

namespace dsq {

struct ExactRep {
  Quiver quiver;
  DimVector dims;
  /// One matrix per arrow, shape dims[head] × dims[tail].
  std::vector<ExactMatrix> mats;

  /// Throws ShapeMismatch when a matrix does not fit its arrow.
  void validate() const;
};

ExactRep zero_rep(const Quiver& q, const DimVector& a);
ExactRep random_rep(const Quiver& q, const DimVector& a, std::uint64_t seed, int pool);
ExactRep direct_sum(const ExactRep& x, const ExactRep& y);

struct HomExt {
  std::size_t hom = 0;
  std::size_t ext = 0;
};

/// Matrix of (fᵢ) ↦ (f_head·x_a − y_a·f_tail); columns index ⊕ Hom(Vᵢ, Wᵢ).
ExactMatrix intertwiner_matrix(const ExactRep& x, const ExactRep& y);
HomExt hom_ext_dims(const ExactRep& x, const ExactRep& y);
std::size_t stabilizer_dim(const ExactRep& x);

inline std::int64_t dim_group(const DimVector& a) {
  std::int64_t s = 0;
  for (auto v : a.entries) s += v * v;
  return s - 1;
}

std::int64_t dim_rep_space(const Quiver& q, const DimVector& a);

struct CensusResult {
  std::map<std::int64_t, std::size_t> histogram;  // stabilizer dim → count
  std::size_t samples = 0;
  double fraction_trivial = 0;
  std::int64_t dim_group = 0;
  std::int64_t dim_rep = 0;
  /// max over observed s of (dim Rep + s − dim G): each observed stratum is
  /// treated as if it were dense, so this is a probe, not a bound.
  std::int64_t max_parameter_estimate = 0;

  friend bool operator==(const CensusResult&, const CensusResult&) = default;
};

inline constexpr int kDefaultCensusPool = 3;

/// OpenMP over samples; sample s uses derive_seed(seed, s).
CensusResult parameter_census(const Quiver& q, const DimVector& a, std::size_t samples, std::uint64_t seed,
                              int pool = kDefaultCensusPool);
/// Single-threaded reference for parameter_census.
CensusResult parameter_census_serial(const Quiver& q, const DimVector& a, std::size_t samples,
                                     std::uint64_t seed, int pool = kDefaultCensusPool);

struct Decomposition {
  std::vector<DimVector> parts;  // lexicographically nondecreasing
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

inline constexpr std::int64_t kDefaultDecompositionBudget = 12;

/// Visits each multiset of ≥ min_parts nonzero nonnegative parts summing to
/// a. The visitor returns false to stop early.
void for_each_decomposition(const DimVector& a, std::size_t min_parts, bool roots_only, const Quiver& q,
                            const std::function<bool(const Decomposition&)>& visit,
                            std::int64_t budget = kDefaultDecompositionBudget);
std::vector<Decomposition> enumerate_decompositions(const DimVector& a, std::size_t min_parts, bool roots_only,
                                                    const Quiver& q,
                                                    std::int64_t budget = kDefaultDecompositionBudget);

struct InequalityCheck {
  bool holds = true;
  std::optional<Decomposition> witness;
  std::size_t decompositions_checked = 0;
};

/// p(a) > Σ p(parts) over every decomposition into ≥ 2 parts.
InequalityCheck check_inequality_302(const StarShape& shape, const DimVector& a,
                                     std::int64_t budget = kDefaultDecompositionBudget);

/// Star shapes with Σ(wᵢ − 1) ≤ max_flag_steps, legs with wᵢ = 1 dropped,
/// up to leg reordering.
std::vector<StarShape> star_shapes_up_to(int max_flag_steps);

struct SweepCase {
  StarShape shape;
  DimVector alpha;
  friend bool operator==(const SweepCase&, const SweepCase&) = default;
};

/// Every α over the shape with height ≤ max_height, δ(α) > 0 and α in the
/// fundamental region.
std::vector<SweepCase> inequality_302_cases(int max_flag_steps, std::int64_t max_height);

struct SweepResult {
  std::size_t cases = 0;
  std::size_t decompositions_checked = 0;
  std::vector<SweepCase> counterexamples;
  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// check_inequality_302 over every case, OpenMP over cases.
SweepResult sweep_inequality_302(const std::vector<SweepCase>& cases, std::int64_t budget);
SweepResult sweep_inequality_302_serial(const std::vector<SweepCase>& cases, std::int64_t budget);

/// min Σ q(parts) over all decompositions, the one-part decomposition included.
std::int64_t q_tilde(const Quiver& q, const DimVector& a, std::int64_t budget = kDefaultDecompositionBudget);

mpq_class king_pairing(const std::vector<mpq_class>& lambda, const DimVector& a);

/// True iff `embedding` (per-vertex, full column rank) carries `sub` into `x`
/// compatibly with every arrow.
bool subrep_certificate_check(const ExactRep& x, const ExactRep& sub, const std::vector<ExactMatrix>& embedding);

}  // namespace dsq
