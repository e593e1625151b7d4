#pragma once

// Cotangent space of squid representations: moment map, symplectic form,
// coadjoint targets θᴺ, and residuals against them.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dsq/quiver.hpp"

namespace dsq {

using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Point of T*Rep(squid, dims). Vertex order follows build_squid: centre,
/// leg vertices, then "inf". b_l : 0 → ∞, c_{ij} : (i,j) → (i,j−1), hats
/// reverse each arrow.
struct CotangentSquidPoint {
  StarShape shape;
  DimVector dims;
  CMatrix b[2];
  CMatrix bhat[2];
  std::vector<std::vector<CMatrix>> c;     // c[i-1][j-1]
  std::vector<std::vector<CMatrix>> chat;  // chat[i-1][j-1]

  static CotangentSquidPoint zero(const StarShape& shape, const DimVector& dims);
  static CotangentSquidPoint random(const StarShape& shape, const DimVector& dims, std::mt19937_64& gen);

  std::size_t inf_vertex() const { return dims.size() - 1; }
  void validate() const;
  /// Number of complex coordinates.
  std::size_t coordinate_count() const;
  Eigen::VectorXcd flatten() const;
  void unflatten(const Eigen::VectorXcd& v);
  double norm2() const;
};

CotangentSquidPoint operator+(const CotangentSquidPoint& x, const CotangentSquidPoint& y);
CotangentSquidPoint operator*(Complex s, const CotangentSquidPoint& x);

/// Visits (name, tail, head, arrow, hat) for every arrow of the squid.
void for_each_arrow(const CotangentSquidPoint& x,
                    const std::function<void(const std::string&, std::size_t, std::size_t, const CMatrix&,
                                             const CMatrix&)>& fn);
void for_each_arrow(CotangentSquidPoint& x,
                    const std::function<void(const std::string&, std::size_t, std::size_t, CMatrix&, CMatrix&)>& fn);

/// One matrix per vertex.
using VertexMatrices = std::vector<CMatrix>;

VertexMatrices moment_map(const CotangentSquidPoint& x);
/// Derivative of the moment map at x in direction y.
VertexMatrices moment_map_differential(const CotangentSquidPoint& x, const CotangentSquidPoint& y);
/// Complex Jacobian of the moment map; rows stack the vertex blocks column-major.
CMatrix moment_map_jacobian(const CotangentSquidPoint& x);

Complex symplectic_form(const CotangentSquidPoint& x, const CotangentSquidPoint& y);
Complex trace_pairing(const VertexMatrices& m, const VertexMatrices& xi);

/// g·X with g = (g_v): a ↦ g_h a g_t⁻¹, â ↦ g_t â g_h⁻¹.
CotangentSquidPoint group_action(const CotangentSquidPoint& x, const VertexMatrices& g);
/// Derivative of the action at the identity in direction ξ.
CotangentSquidPoint infinitesimal_action(const CotangentSquidPoint& x, const VertexMatrices& xi);

/// Scalar per vertex, acting as θ_v·Id on the vertex space.
struct CoadjointTarget {
  std::vector<Complex> theta;
  /// Σ_v θ_v·dim_v.
  Complex weighted_trace(const DimVector& dims) const;
};

struct ThetaN {
  CoadjointTarget target;
  DimVector squid_dims;  // (α_{ij}, α∞ + (N+1)α₀, α∞ + Nα₀)
  std::int64_t alpha_inf = 0;
};

inline constexpr double kThetaTraceTol = 1e-12;

/// θᴺ for ζ-parabolic connections of rank α₀ and degree −α∞, with
/// α∞ = Σ m_{ij} ζ_{ij} (must be an integer).
ThetaN theta_N(const std::vector<std::vector<Complex>>& zeta, const StarShape& shape, const DimVector& star_alpha,
               std::int64_t N);

double residual(const CotangentSquidPoint& x, const CoadjointTarget& target);

}  // namespace dsq
