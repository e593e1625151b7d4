#include "dsq/squid_symplectic.hpp"

#include <cmath>

#include "dsq/error.hpp"

namespace dsq {

namespace {

Eigen::Index dim_of(const DimVector& dims, std::size_t v) { return static_cast<Eigen::Index>(dims[v]); }

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  CMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = normal(gen);
      const double im = normal(gen);
      m(r, c) = Complex(re, im);
    }
  return m;
}

}  // namespace

CotangentSquidPoint CotangentSquidPoint::zero(const StarShape& shape, const DimVector& dims) {
  StarLayout layout(shape);
  require(dims.size() == layout.vertex_count() + 1, ErrorCode::ShapeMismatch, "dims do not fit the squid");
  require(dims.is_nonnegative(), ErrorCode::InvalidArgument, "dims must be nonnegative");
  CotangentSquidPoint x;
  x.shape = shape;
  x.dims = dims;
  const std::size_t inf = dims.size() - 1;
  for (int l = 0; l < 2; ++l) {
    x.b[l] = CMatrix::Zero(dim_of(dims, inf), dim_of(dims, 0));
    x.bhat[l] = CMatrix::Zero(dim_of(dims, 0), dim_of(dims, inf));
  }
  for (int i = 1; i <= shape.legs(); ++i) {
    std::vector<CMatrix> legs;
    std::vector<CMatrix> hats;
    for (int j = 1; j < shape.w[i - 1]; ++j) {
      const auto tail = layout.at(i, j);
      const auto head = layout.at(i, j - 1);
      legs.push_back(CMatrix::Zero(dim_of(dims, head), dim_of(dims, tail)));
      hats.push_back(CMatrix::Zero(dim_of(dims, tail), dim_of(dims, head)));
    }
    x.c.push_back(std::move(legs));
    x.chat.push_back(std::move(hats));
  }
  return x;
}

CotangentSquidPoint CotangentSquidPoint::random(const StarShape& shape, const DimVector& dims, std::mt19937_64& gen) {
  CotangentSquidPoint x = zero(shape, dims);
  for_each_arrow(x, [&](const std::string&, std::size_t, std::size_t, CMatrix& a, CMatrix& ahat) {
    a = random_matrix(a.rows(), a.cols(), gen);
    ahat = random_matrix(ahat.rows(), ahat.cols(), gen);
  });
  return x;
}

void CotangentSquidPoint::validate() const {
  StarLayout layout(shape);
  require(dims.size() == layout.vertex_count() + 1, ErrorCode::ShapeMismatch, "dims do not fit the squid");
  require(c.size() == shape.w.size() && chat.size() == shape.w.size(), ErrorCode::ShapeMismatch,
          "one leg of matrices per class is required");
  for (int i = 1; i <= shape.legs(); ++i) {
    require(c[i - 1].size() == static_cast<std::size_t>(shape.w[i - 1] - 1) && chat[i - 1].size() == c[i - 1].size(),
            ErrorCode::ShapeMismatch, "leg " + std::to_string(i) + " has the wrong number of arrows");
  }
  for_each_arrow(*this, [&](const std::string& name, std::size_t tail, std::size_t head, const CMatrix& a,
                            const CMatrix& ahat) {
    require(a.rows() == dim_of(dims, head) && a.cols() == dim_of(dims, tail), ErrorCode::ShapeMismatch,
            "arrow " + name + " has the wrong shape");
    require(ahat.rows() == dim_of(dims, tail) && ahat.cols() == dim_of(dims, head), ErrorCode::ShapeMismatch,
            "reverse of arrow " + name + " has the wrong shape");
  });
}

std::size_t CotangentSquidPoint::coordinate_count() const {
  std::size_t n = 0;
  for_each_arrow(*this, [&](const std::string&, std::size_t, std::size_t, const CMatrix& a, const CMatrix& ahat) {
    n += static_cast<std::size_t>(a.size() + ahat.size());
  });
  return n;
}

Eigen::VectorXcd CotangentSquidPoint::flatten() const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(coordinate_count()));
  Eigen::Index k = 0;
  for_each_arrow(*this, [&](const std::string&, std::size_t, std::size_t, const CMatrix& a, const CMatrix& ahat) {
    v.segment(k, a.size()) = a.reshaped();
    k += a.size();
    v.segment(k, ahat.size()) = ahat.reshaped();
    k += ahat.size();
  });
  return v;
}

void CotangentSquidPoint::unflatten(const Eigen::VectorXcd& v) {
  require(static_cast<std::size_t>(v.size()) == coordinate_count(), ErrorCode::ShapeMismatch, "coordinate count");
  Eigen::Index k = 0;
  for_each_arrow(*this, [&](const std::string&, std::size_t, std::size_t, CMatrix& a, CMatrix& ahat) {
    a.reshaped() = v.segment(k, a.size());
    k += a.size();
    ahat.reshaped() = v.segment(k, ahat.size());
    k += ahat.size();
  });
}

double CotangentSquidPoint::norm2() const { return flatten().squaredNorm(); }

CotangentSquidPoint operator+(const CotangentSquidPoint& x, const CotangentSquidPoint& y) {
  require(x.dims == y.dims && x.shape == y.shape, ErrorCode::ShapeMismatch, "points of different squids");
  CotangentSquidPoint out = x;
  out.unflatten(x.flatten() + y.flatten());
  return out;
}

CotangentSquidPoint operator*(Complex s, const CotangentSquidPoint& x) {
  CotangentSquidPoint out = x;
  out.unflatten(s * x.flatten());
  return out;
}

namespace {

template <typename Point, typename Fn>
void visit_arrows(Point& x, Fn&& fn) {
  StarLayout layout(x.shape);
  const std::size_t inf = layout.vertex_count();
  fn(std::string("b0"), std::size_t{0}, inf, x.b[0], x.bhat[0]);
  fn(std::string("b1"), std::size_t{0}, inf, x.b[1], x.bhat[1]);
  for (int i = 1; i <= x.shape.legs(); ++i) {
    for (int j = 1; j < x.shape.w[i - 1]; ++j) {
      fn("c_" + StarLayout::leg_id(i, j), layout.at(i, j), layout.at(i, j - 1), x.c[i - 1][j - 1],
         x.chat[i - 1][j - 1]);
    }
  }
}

}  // namespace

void for_each_arrow(const CotangentSquidPoint& x,
                    const std::function<void(const std::string&, std::size_t, std::size_t, const CMatrix&,
                                             const CMatrix&)>& fn) {
  visit_arrows(x, fn);
}

void for_each_arrow(CotangentSquidPoint& x,
                    const std::function<void(const std::string&, std::size_t, std::size_t, CMatrix&, CMatrix&)>& fn) {
  visit_arrows(x, fn);
}

namespace {

VertexMatrices zero_blocks(const DimVector& dims) {
  VertexMatrices out;
  for (std::size_t v = 0; v < dims.size(); ++v) out.push_back(CMatrix::Zero(dim_of(dims, v), dim_of(dims, v)));
  return out;
}

}  // namespace

VertexMatrices moment_map(const CotangentSquidPoint& x) {
  x.validate();
  VertexMatrices mu = zero_blocks(x.dims);
  // μ_v = Σ_{head = v} a·â − Σ_{tail = v} â·a.
  for_each_arrow(x, [&](const std::string&, std::size_t tail, std::size_t head, const CMatrix& a, const CMatrix& ahat) {
    mu[head] += a * ahat;
    mu[tail] -= ahat * a;
  });
  return mu;
}

VertexMatrices moment_map_differential(const CotangentSquidPoint& x, const CotangentSquidPoint& y) {
  x.validate();
  y.validate();
  require(x.dims == y.dims, ErrorCode::ShapeMismatch, "tangent vector over a different squid");
  VertexMatrices dmu = zero_blocks(x.dims);
  std::vector<std::pair<const CMatrix*, const CMatrix*>> ys;
  for_each_arrow(y, [&](const std::string&, std::size_t, std::size_t, const CMatrix& a, const CMatrix& ahat) {
    ys.emplace_back(&a, &ahat);
  });
  std::size_t k = 0;
  for_each_arrow(x, [&](const std::string&, std::size_t tail, std::size_t head, const CMatrix& a, const CMatrix& ahat) {
    const CMatrix& ya = *ys[k].first;
    const CMatrix& yahat = *ys[k].second;
    ++k;
    dmu[head] += ya * ahat + a * yahat;
    dmu[tail] -= yahat * a + ahat * ya;
  });
  return dmu;
}

CMatrix moment_map_jacobian(const CotangentSquidPoint& x) {
  x.validate();
  Eigen::Index rows = 0;
  for (auto d : x.dims.entries) rows += static_cast<Eigen::Index>(d * d);
  const auto cols = static_cast<Eigen::Index>(x.coordinate_count());
  CMatrix jac(rows, cols);
  CotangentSquidPoint dir = CotangentSquidPoint::zero(x.shape, x.dims);
  Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(cols);
  for (Eigen::Index k = 0; k < cols; ++k) {
    unit.setZero();
    unit(k) = 1.0;
    dir.unflatten(unit);
    VertexMatrices d = moment_map_differential(x, dir);
    Eigen::Index r = 0;
    for (const CMatrix& block : d) {
      jac.block(r, k, block.size(), 1) = block.reshaped();
      r += block.size();
    }
  }
  return jac;
}

Complex symplectic_form(const CotangentSquidPoint& x, const CotangentSquidPoint& y) {
  x.validate();
  y.validate();
  require(x.dims == y.dims, ErrorCode::ShapeMismatch, "points of different squids");
  std::vector<std::pair<const CMatrix*, const CMatrix*>> ys;
  for_each_arrow(y, [&](const std::string&, std::size_t, std::size_t, const CMatrix& a, const CMatrix& ahat) {
    ys.emplace_back(&a, &ahat);
  });
  Complex omega = 0;
  std::size_t k = 0;
  // ω(X, X') = Σ tr(a â') − tr(a' â).
  for_each_arrow(x, [&](const std::string&, std::size_t, std::size_t, const CMatrix& a, const CMatrix& ahat) {
    omega += (a * *ys[k].second).trace() - (*ys[k].first * ahat).trace();
    ++k;
  });
  return omega;
}

Complex trace_pairing(const VertexMatrices& m, const VertexMatrices& xi) {
  require(m.size() == xi.size(), ErrorCode::ShapeMismatch, "vertex count");
  Complex s = 0;
  for (std::size_t v = 0; v < m.size(); ++v) {
    require(m[v].rows() == xi[v].rows() && m[v].cols() == xi[v].cols(), ErrorCode::ShapeMismatch, "vertex block");
    s += (m[v] * xi[v]).trace();
  }
  return s;
}

CotangentSquidPoint group_action(const CotangentSquidPoint& x, const VertexMatrices& g) {
  x.validate();
  require(g.size() == x.dims.size(), ErrorCode::ShapeMismatch, "one group element per vertex");
  VertexMatrices ginv;
  for (std::size_t v = 0; v < g.size(); ++v) {
    require(g[v].rows() == dim_of(x.dims, v) && g[v].cols() == dim_of(x.dims, v), ErrorCode::ShapeMismatch,
            "group element block");
    ginv.push_back(g[v].size() == 0 ? g[v] : CMatrix(g[v].inverse()));
  }
  CotangentSquidPoint out = x;
  for_each_arrow(out, [&](const std::string&, std::size_t tail, std::size_t head, CMatrix& a, CMatrix& ahat) {
    a = g[head] * a * ginv[tail];
    ahat = g[tail] * ahat * ginv[head];
  });
  return out;
}

CotangentSquidPoint infinitesimal_action(const CotangentSquidPoint& x, const VertexMatrices& xi) {
  x.validate();
  require(xi.size() == x.dims.size(), ErrorCode::ShapeMismatch, "one Lie algebra element per vertex");
  CotangentSquidPoint out = x;
  for_each_arrow(out, [&](const std::string&, std::size_t tail, std::size_t head, CMatrix& a, CMatrix& ahat) {
    CMatrix na = xi[head] * a - a * xi[tail];
    CMatrix nahat = xi[tail] * ahat - ahat * xi[head];
    a = std::move(na);
    ahat = std::move(nahat);
  });
  return out;
}

Complex CoadjointTarget::weighted_trace(const DimVector& dims) const {
  require(theta.size() == dims.size(), ErrorCode::ShapeMismatch, "target does not fit the squid");
  Complex s = 0;
  for (std::size_t v = 0; v < dims.size(); ++v) s += theta[v] * static_cast<double>(dims[v]);
  return s;
}

ThetaN theta_N(const std::vector<std::vector<Complex>>& zeta, const StarShape& shape, const DimVector& star_alpha,
               std::int64_t N) {
  StarLayout layout(shape);
  require(N >= 0, ErrorCode::InvalidArgument, "N must be nonnegative");
  require(star_alpha.size() == layout.vertex_count(), ErrorCode::VertexMismatch, "α does not fit the star");
  require(zeta.size() == shape.w.size(), ErrorCode::ShapeMismatch, "one ζ row per leg is required");
  const std::int64_t a0 = star_alpha[0];
  auto alpha_at = [&](int i, int j) -> std::int64_t {
    if (j == 0) return a0;
    if (j >= shape.w[i - 1]) return 0;
    return star_alpha[layout.at(i, j)];
  };

  Complex residue_sum = 0;
  Complex first_sum = 0;
  for (int i = 1; i <= shape.legs(); ++i) {
    require(zeta[i - 1].size() == static_cast<std::size_t>(shape.w[i - 1]), ErrorCode::ShapeMismatch,
            "ζ row " + std::to_string(i) + " needs one entry per eigenvalue");
    first_sum += zeta[i - 1][0];
    for (int j = 1; j <= shape.w[i - 1]; ++j) {
      residue_sum += static_cast<double>(alpha_at(i, j - 1) - alpha_at(i, j)) * zeta[i - 1][j - 1];
    }
  }
  const double nearest = std::round(residue_sum.real());
  require(std::abs(residue_sum - Complex(nearest, 0.0)) <= 1e-10, ErrorCode::ResidueConditionViolated,
          "sum of m_ij * zeta_ij is not an integer");
  const auto alpha_inf = static_cast<std::int64_t>(nearest);
  require(alpha_inf + N * a0 >= 0, ErrorCode::InvalidArgument, "negative vertex dimension at infinity; raise N");

  ThetaN out;
  out.alpha_inf = alpha_inf;
  out.squid_dims = star_alpha;
  out.squid_dims[0] = alpha_inf + (N + 1) * a0;
  out.squid_dims.entries.push_back(alpha_inf + N * a0);

  auto& theta = out.target.theta;
  theta.assign(out.squid_dims.size(), 0.0);
  const auto Nd = static_cast<double>(N);
  theta[layout.vertex_count()] = Nd + 1.0 + first_sum;
  theta[0] = -Nd - first_sum;
  for (int i = 1; i <= shape.legs(); ++i) {
    for (int j = 1; j < shape.w[i - 1]; ++j) theta[layout.at(i, j)] = zeta[i - 1][j - 1] - zeta[i - 1][j];
  }

  double scale = 1.0;
  for (std::size_t v = 0; v < theta.size(); ++v) scale += std::abs(theta[v]) * static_cast<double>(out.squid_dims[v]);
  require(std::abs(out.target.weighted_trace(out.squid_dims)) <= kThetaTraceTol * scale,
          ErrorCode::ResidueConditionViolated, "theta^N is not trace-free on the squid dimension vector");
  return out;
}

double residual(const CotangentSquidPoint& x, const CoadjointTarget& target) {
  require(target.theta.size() == x.dims.size(), ErrorCode::ShapeMismatch, "target does not fit the point");
  VertexMatrices mu = moment_map(x);
  double r = 0;
  for (std::size_t v = 0; v < mu.size(); ++v) {
    CMatrix diff = mu[v];
    diff.diagonal().array() -= target.theta[v];
    r += diff.squaredNorm();
  }
  return r;
}

}  // namespace dsq
