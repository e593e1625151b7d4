#pragma once

// Kronecker pencils V → W over Q(i): preinjectivity and the splitting type of
// the kernel bundle on P¹.

#include <cstdint>
#include <vector>

#include "dsq/exact.hpp"

namespace dsq {

struct KroneckerPencil {
  ExactMatrix psi0;  // w × v
  ExactMatrix psi1;

  std::size_t v() const { return psi0.cols(); }
  std::size_t w() const { return psi0.rows(); }
  void validate() const;
};

/// Polynomial over Q(i), coefficients from degree 0 upwards, no trailing zeros.
using Poly = std::vector<GaussRational>;

void poly_trim(Poly& p);
/// −1 for the zero polynomial.
int poly_degree(const Poly& p);
Poly poly_gcd(Poly a, Poly b);  // monic, or empty when both are zero
/// Unique polynomial of degree ≤ n through (0, y₀), …, (n, yₙ).
Poly interpolate(const std::vector<GaussRational>& values);

inline constexpr std::size_t kMaxMinorSize = 8;

/// The w × w minors of Ψ₀ + tΨ₁ as polynomials in t (λ₀ = 1, t = λ₁).
std::vector<Poly> pencil_minors(const KroneckerPencil& p);

/// λ₀Ψ₀ + λ₁Ψ₁ surjective at every point of P¹, decided via the gcd of the
/// maximal minors. BudgetExceeded above w = 8.
bool is_preinjective(const KroneckerPencil& p);

/// Rank of Ψ₀ + tΨ₁ over Q(i)(t).
std::size_t generic_rank(const KroneckerPencil& p);

/// Kernel of ((n+2)w) × ((n+1)v) coefficient map v(z) ↦ Ψ₀v(z)·z − Ψ₁v(z).
ExactMatrix section_matrix(const KroneckerPencil& p, std::size_t n);
/// h⁰(E(n)).
std::size_t h0_twist(const KroneckerPencil& p, std::size_t n);

struct SplittingType {
  std::vector<std::int64_t> degrees;  // descending
  std::vector<std::size_t> h0;        // h⁰(E(n)) for n = 0..stop
};

/// NotPreinjective unless the pencil has full generic rank and the kernel has
/// degree −w, which together are equivalent to surjectivity everywhere.
SplittingType splitting_type(const KroneckerPencil& p);

struct BundleInvariants {
  std::int64_t rank = 0;
  std::int64_t degree = 0;
  bool dual_globally_generated = false;
};

BundleInvariants bundle_invariants(const KroneckerPencil& p);

/// Ψ₀ = [I_d | 0], Ψ₁ = [0 | I_d]: the kernel is O(−d).
KroneckerPencil shift_pencil(std::size_t d);
KroneckerPencil direct_sum(const KroneckerPencil& a, const KroneckerPencil& b);
/// Entries are Gaussian integers with parts in [−pool, pool].
KroneckerPencil random_pencil(std::size_t v, std::size_t w, std::uint64_t seed, int pool = 3);

}  // namespace dsq
