#pragma once

// Quiver combinatorics: Euler-Ringel and Tits forms, reflections, the
// fundamental region, root classification, and star / squid builders.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dsq/exact.hpp"

namespace dsq {

using VertexId = std::string;

struct Arrow {
  std::size_t tail;
  std::size_t head;
  std::string name;
};

/// Finite loop-free directed multigraph. Vertices are addressed by position;
/// ids are kept for serialization and lookup.
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<VertexId> vertices, std::vector<Arrow> arrows);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const VertexId& id(std::size_t v) const { return vertices_.at(v); }

  std::size_t index_of(const VertexId& id) const;
  std::optional<std::size_t> find(const VertexId& id) const;
  std::optional<std::size_t> find_arrow(const std::string& name) const;

  /// Doubled quiver: every arrow a gets a reverse arrow named "<a>_hat".
  Quiver doubled() const;

  friend bool operator==(const Quiver& a, const Quiver& b);

 private:
  std::vector<VertexId> vertices_;
  std::vector<Arrow> arrows_;
  std::unordered_map<VertexId, std::size_t> index_;
};

/// Integer vector indexed by the vertex positions of some quiver.
struct DimVector {
  std::vector<std::int64_t> entries;

  std::size_t size() const { return entries.size(); }
  std::int64_t operator[](std::size_t i) const { return entries[i]; }
  std::int64_t& operator[](std::size_t i) { return entries[i]; }

  static DimVector zero(std::size_t n) { return {std::vector<std::int64_t>(n, 0)}; }
  static DimVector unit(std::size_t n, std::size_t i);

  bool is_zero() const;
  bool is_nonnegative() const;
  std::int64_t height() const;

  friend DimVector operator+(const DimVector& a, const DimVector& b);
  friend DimVector operator-(const DimVector& a, const DimVector& b);
  friend bool operator==(const DimVector& a, const DimVector& b) = default;
  friend auto operator<=>(const DimVector& a, const DimVector& b) = default;
};

struct StarShape {
  std::vector<int> w;

  int legs() const { return static_cast<int>(w.size()); }
  friend bool operator==(const StarShape&, const StarShape&) = default;
};

/// A point of the projective line with exact coordinates (λ₀ : λ₁).
struct ProjectivePoint {
  GaussRational l0;
  GaussRational l1;
};

struct SquidShape {
  StarShape star;
  std::vector<ProjectivePoint> points;
};

/// Vertex layout of a star quiver: index of (leg, step), legs and steps
/// counted from 1; step 0 is the central vertex.
class StarLayout {
 public:
  explicit StarLayout(StarShape shape);

  const StarShape& shape() const { return shape_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t center() const { return 0; }
  /// Position of (i, j); j == 0 is the centre, j == wᵢ is out of range.
  std::size_t at(int leg, int step) const;
  static VertexId leg_id(int leg, int step);

 private:
  StarShape shape_;
  std::vector<std::size_t> offsets_;
  std::size_t vertex_count_ = 1;
};

Quiver build_star(const StarShape& shape);
Quiver build_squid(const SquidShape& shape);
/// Two vertices {"0","inf"} joined by b0, b1 : 0 → inf.
Quiver kronecker_quiver();

std::int64_t euler_form(const Quiver& q, const DimVector& a, const DimVector& b);
std::int64_t tits_q(const Quiver& q, const DimVector& a);
inline std::int64_t p_value(const Quiver& q, const DimVector& a) { return 1 - tits_q(q, a); }
std::int64_t symmetrized_form(const Quiver& q, const DimVector& a, const DimVector& b);
/// Tits form on real vectors.
double tits_q_real(const Quiver& q, const std::vector<double>& x);

DimVector reflect(const Quiver& q, std::size_t vertex, const DimVector& a);
DimVector reflect(const Quiver& q, const VertexId& vertex, const DimVector& a);

bool support_connected(const Quiver& q, const DimVector& a);
bool in_fundamental_region(const Quiver& q, const DimVector& a);

/// −2α₀ + Σᵢ α_{i1}; legs with wᵢ = 1 contribute nothing.
std::int64_t delta(const StarShape& shape, const DimVector& a);
/// Closed-form star expansion of the Tits form, used as a cross-check.
std::int64_t star_tits_expanded(const StarShape& shape, const DimVector& a);

enum class RootClass { NotRoot, RealRoot, ImaginaryRoot };
std::string to_string(RootClass c);

RootClass classify_root(const Quiver& q, const DimVector& a);

}  // namespace dsq
