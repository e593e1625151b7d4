#include "dsq/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "dsq/error.hpp"

namespace dsq {

Quiver::Quiver(std::vector<VertexId> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    bool fresh = index_.emplace(vertices_[v], v).second;
    require(fresh, ErrorCode::InvalidArgument, "duplicate vertex id '" + vertices_[v] + "'");
  }
  for (std::size_t a = 0; a < arrows_.size(); ++a) {
    Arrow& arrow = arrows_[a];
    require(arrow.tail < vertices_.size() && arrow.head < vertices_.size(), ErrorCode::UnknownVertex,
            "arrow endpoint out of range");
    require(arrow.tail != arrow.head, ErrorCode::InvalidArgument, "quiver must be loop-free");
    if (arrow.name.empty()) arrow.name = "a" + std::to_string(a);
  }
}

std::size_t Quiver::index_of(const VertexId& id) const {
  auto it = index_.find(id);
  require(it != index_.end(), ErrorCode::UnknownVertex, "unknown vertex '" + id + "'");
  return it->second;
}

std::optional<std::size_t> Quiver::find(const VertexId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Quiver::find_arrow(const std::string& name) const {
  for (std::size_t a = 0; a < arrows_.size(); ++a) {
    if (arrows_[a].name == name) return a;
  }
  return std::nullopt;
}

Quiver Quiver::doubled() const {
  std::vector<Arrow> arrows = arrows_;
  for (const Arrow& a : arrows_) arrows.push_back({a.head, a.tail, a.name + "_hat"});
  return {vertices_, std::move(arrows)};
}

bool operator==(const Quiver& a, const Quiver& b) {
  if (a.vertices_ != b.vertices_ || a.arrows_.size() != b.arrows_.size()) return false;
  for (std::size_t i = 0; i < a.arrows_.size(); ++i) {
    const Arrow& x = a.arrows_[i];
    const Arrow& y = b.arrows_[i];
    if (x.tail != y.tail || x.head != y.head || x.name != y.name) return false;
  }
  return true;
}

DimVector DimVector::unit(std::size_t n, std::size_t i) {
  DimVector e = zero(n);
  e.entries.at(i) = 1;
  return e;
}

bool DimVector::is_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](std::int64_t x) { return x == 0; });
}

bool DimVector::is_nonnegative() const {
  return std::all_of(entries.begin(), entries.end(), [](std::int64_t x) { return x >= 0; });
}

std::int64_t DimVector::height() const { return std::accumulate(entries.begin(), entries.end(), std::int64_t{0}); }

DimVector operator+(const DimVector& a, const DimVector& b) {
  require(a.size() == b.size(), ErrorCode::VertexMismatch, "dimension vector sizes differ");
  DimVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

DimVector operator-(const DimVector& a, const DimVector& b) {
  require(a.size() == b.size(), ErrorCode::VertexMismatch, "dimension vector sizes differ");
  DimVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

StarLayout::StarLayout(StarShape shape) : shape_(std::move(shape)) {
  for (int wi : shape_.w) {
    require(wi >= 1, ErrorCode::InvalidArgument, "leg lengths must be positive");
    offsets_.push_back(vertex_count_);
    vertex_count_ += static_cast<std::size_t>(wi - 1);
  }
}

std::size_t StarLayout::at(int leg, int step) const {
  require(leg >= 1 && leg <= shape_.legs(), ErrorCode::UnknownVertex, "leg index out of range");
  if (step == 0) return 0;
  require(step >= 1 && step < shape_.w[leg - 1], ErrorCode::UnknownVertex, "leg step out of range");
  return offsets_[leg - 1] + static_cast<std::size_t>(step - 1);
}

VertexId StarLayout::leg_id(int leg, int step) { return std::to_string(leg) + "_" + std::to_string(step); }

Quiver build_star(const StarShape& shape) {
  StarLayout layout(shape);
  std::vector<VertexId> vertices{"0"};
  std::vector<Arrow> arrows;
  for (int i = 1; i <= shape.legs(); ++i) {
    for (int j = 1; j < shape.w[i - 1]; ++j) {
      vertices.push_back(StarLayout::leg_id(i, j));
      arrows.push_back({layout.at(i, j), layout.at(i, j - 1), "c_" + StarLayout::leg_id(i, j)});
    }
  }
  return {std::move(vertices), std::move(arrows)};
}

Quiver build_squid(const SquidShape& shape) {
  require(shape.points.size() == shape.star.w.size(), ErrorCode::InvalidArgument,
          "one marked point per leg is required");
  for (const ProjectivePoint& p : shape.points) {
    require(!(p.l0.is_zero() && p.l1.is_zero()), ErrorCode::InvalidArgument, "(0:0) is not a projective point");
  }
  for (std::size_t a = 0; a < shape.points.size(); ++a) {
    for (std::size_t b = a + 1; b < shape.points.size(); ++b) {
      const ProjectivePoint& x = shape.points[a];
      const ProjectivePoint& y = shape.points[b];
      require(!(x.l0 * y.l1 - x.l1 * y.l0).is_zero(), ErrorCode::DuplicatePoint,
              "marked points " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " coincide");
    }
  }
  Quiver star = build_star(shape.star);
  std::vector<VertexId> vertices = star.vertices();
  std::vector<Arrow> arrows = star.arrows();
  const std::size_t inf = vertices.size();
  vertices.push_back("inf");
  arrows.push_back({0, inf, "b0"});
  arrows.push_back({0, inf, "b1"});
  return {std::move(vertices), std::move(arrows)};
}

Quiver kronecker_quiver() { return {{"0", "inf"}, {{0, 1, "b0"}, {0, 1, "b1"}}}; }

namespace {

void check_dims(const Quiver& q, const DimVector& a) {
  if (a.size() != q.vertex_count())
    throw Error(ErrorCode::VertexMismatch, "dimension vector has " + std::to_string(a.size()) + " entries, quiver has " +
                                               std::to_string(q.vertex_count()) + " vertices");
}

}  // namespace

std::int64_t euler_form(const Quiver& q, const DimVector& a, const DimVector& b) {
  check_dims(q, a);
  check_dims(q, b);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  for (const Arrow& arrow : q.arrows()) sum -= a[arrow.tail] * b[arrow.head];
  return sum;
}

std::int64_t tits_q(const Quiver& q, const DimVector& a) { return euler_form(q, a, a); }

std::int64_t symmetrized_form(const Quiver& q, const DimVector& a, const DimVector& b) {
  return euler_form(q, a, b) + euler_form(q, b, a);
}

double tits_q_real(const Quiver& q, const std::vector<double>& x) {
  require(x.size() == q.vertex_count(), ErrorCode::VertexMismatch, "real vector size");
  double sum = 0;
  for (double xi : x) sum += xi * xi;
  for (const Arrow& arrow : q.arrows()) sum -= x[arrow.tail] * x[arrow.head];
  return sum;
}

DimVector reflect(const Quiver& q, std::size_t vertex, const DimVector& a) {
  require(vertex < q.vertex_count(), ErrorCode::UnknownVertex, "reflection vertex out of range");
  check_dims(q, a);
  DimVector out = a;
  out[vertex] -= symmetrized_form(q, a, DimVector::unit(a.size(), vertex));
  return out;
}

DimVector reflect(const Quiver& q, const VertexId& vertex, const DimVector& a) {
  return reflect(q, q.index_of(vertex), a);
}

bool support_connected(const Quiver& q, const DimVector& a) {
  check_dims(q, a);
  std::vector<std::size_t> parent(a.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Arrow& arrow : q.arrows()) {
    if (a[arrow.tail] != 0 && a[arrow.head] != 0) parent[root(arrow.tail)] = root(arrow.head);
  }
  std::optional<std::size_t> component;
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v] == 0) continue;
    if (!component) {
      component = root(v);
    } else if (root(v) != *component) {
      return false;
    }
  }
  return component.has_value();
}

bool in_fundamental_region(const Quiver& q, const DimVector& a) {
  check_dims(q, a);
  if (a.is_zero() || !a.is_nonnegative()) return false;
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (symmetrized_form(q, a, DimVector::unit(a.size(), v)) > 0) return false;
  }
  return support_connected(q, a);
}

std::int64_t delta(const StarShape& shape, const DimVector& a) {
  StarLayout layout(shape);
  require(a.size() == layout.vertex_count(), ErrorCode::VertexMismatch, "dimension vector does not fit the star");
  std::int64_t d = -2 * a[0];
  for (int i = 1; i <= shape.legs(); ++i) {
    if (shape.w[i - 1] >= 2) d += a[layout.at(i, 1)];
  }
  return d;
}

std::int64_t star_tits_expanded(const StarShape& shape, const DimVector& a) {
  StarLayout layout(shape);
  require(a.size() == layout.vertex_count(), ErrorCode::VertexMismatch, "dimension vector does not fit the star");
  // 2q = 2α₀² − 2Σα₀α_{i1} + Σα_{i1}² + ΣΣ (α_{ij} − α_{i,j+1})², α_{iwᵢ} = 0.
  const std::int64_t a0 = a[0];
  std::int64_t twice = 2 * a0 * a0;
  for (int i = 1; i <= shape.legs(); ++i) {
    const int wi = shape.w[i - 1];
    if (wi < 2) continue;
    auto entry = [&](int j) -> std::int64_t { return j >= wi ? 0 : a[layout.at(i, j)]; };
    twice += -2 * a0 * entry(1) + entry(1) * entry(1);
    for (int j = 1; j < wi; ++j) {
      const std::int64_t diff = entry(j) - entry(j + 1);
      twice += diff * diff;
    }
  }
  return twice / 2;
}

std::string to_string(RootClass c) {
  switch (c) {
    case RootClass::NotRoot: return "NotRoot";
    case RootClass::RealRoot: return "RealRoot";
    case RootClass::ImaginaryRoot: return "ImaginaryRoot";
  }
  return "NotRoot";
}

RootClass classify_root(const Quiver& q, const DimVector& a) {
  check_dims(q, a);
  require(!a.is_zero(), ErrorCode::ZeroVector, "classify_root of the zero vector");
  const bool any_pos = std::any_of(a.entries.begin(), a.entries.end(), [](auto x) { return x > 0; });
  const bool any_neg = std::any_of(a.entries.begin(), a.entries.end(), [](auto x) { return x < 0; });
  if (any_pos && any_neg) return RootClass::NotRoot;

  DimVector cur = a;
  for (auto& x : cur.entries) x = x < 0 ? -x : x;
  const std::size_t n = cur.size();
  while (true) {
    if (cur.height() == 1) return RootClass::RealRoot;
    std::optional<std::size_t> pick;
    for (std::size_t v = 0; v < n; ++v) {
      if (symmetrized_form(q, cur, DimVector::unit(n, v)) > 0) {
        pick = v;
        break;
      }
    }
    if (!pick) return in_fundamental_region(q, cur) ? RootClass::ImaginaryRoot : RootClass::NotRoot;
    cur = reflect(q, *pick, cur);
    // sᵢ maps positive roots other than εᵢ to positive roots.
    if (!cur.is_nonnegative() || cur.is_zero()) return RootClass::NotRoot;
  }
}

}  // namespace dsq
