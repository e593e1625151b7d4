#include "dsq/pencil.hpp"

#include <algorithm>
#include <random>

#include "dsq/error.hpp"

namespace dsq {

void KroneckerPencil::validate() const {
  require(psi0.rows() == psi1.rows() && psi0.cols() == psi1.cols(), ErrorCode::ShapeMismatch,
          "psi0 and psi1 must have the same shape");
}

void poly_trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int poly_degree(const Poly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (!p[i].is_zero()) return static_cast<int>(i);
  return -1;
}

namespace {

Poly poly_rem(Poly a, const Poly& b) {
  const int db = poly_degree(b);
  const GaussRational lead_inv = b[static_cast<std::size_t>(db)].inverse();
  poly_trim(a);
  while (poly_degree(a) >= db) {
    const int da = poly_degree(a);
    const GaussRational q = a[static_cast<std::size_t>(da)] * lead_inv;
    const int shift = da - db;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= q * b[static_cast<std::size_t>(i)];
    poly_trim(a);
  }
  return a;
}

void make_monic(Poly& p) {
  poly_trim(p);
  if (p.empty()) return;
  const GaussRational inv = p.back().inverse();
  for (auto& c : p) c *= inv;
}

}  // namespace

Poly poly_gcd(Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

Poly interpolate(const std::vector<GaussRational>& values) {
  if (values.empty()) return {};
  // Newton divided differences on nodes 0..n−1, then Horner.
  const std::size_t n = values.size();
  std::vector<GaussRational> coef = values;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      coef[i] = (coef[i] - coef[i - 1]) / GaussRational(static_cast<long>(j));
      if (i == j) break;
    }
  Poly out{coef[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    Poly next(out.size() + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i + 1] += out[i];
      next[i] -= out[i] * GaussRational(static_cast<long>(k));
    }
    next[0] += coef[k];
    out = std::move(next);
  }
  poly_trim(out);
  return out;
}

namespace {

ExactMatrix evaluate(const KroneckerPencil& p, const GaussRational& t) {
  return p.psi0 + scaled(p.psi1, t);
}

ExactMatrix columns(const ExactMatrix& m, const std::vector<std::size_t>& cols) {
  ExactMatrix out(m.rows(), cols.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = m(r, cols[c]);
  return out;
}

}  // namespace

std::vector<Poly> pencil_minors(const KroneckerPencil& p) {
  p.validate();
  const std::size_t v = p.v(), w = p.w();
  require(w <= kMaxMinorSize, ErrorCode::BudgetExceeded, "minor enumeration is capped at w = 8");
  std::vector<Poly> out;
  if (w == 0 || v < w) return out;
  std::vector<ExactMatrix> samples;
  for (std::size_t t = 0; t <= w; ++t) samples.push_back(evaluate(p, GaussRational(static_cast<long>(t))));
  std::vector<std::size_t> cols(w);
  for (std::size_t i = 0; i < w; ++i) cols[i] = i;
  while (true) {
    std::vector<GaussRational> values;
    for (const auto& s : samples) values.push_back(determinant(columns(s, cols)));
    out.push_back(interpolate(values));
    std::size_t i = w;
    while (i > 0 && cols[i - 1] == v - w + i - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t j = i; j < w; ++j) cols[j] = cols[j - 1] + 1;
  }
  return out;
}

bool is_preinjective(const KroneckerPencil& p) {
  p.validate();
  if (p.v() < p.w()) return false;
  if (p.w() == 0) return true;
  const std::vector<Poly> minors = pencil_minors(p);
  const int w = static_cast<int>(p.w());
  Poly g;
  bool root_at_infinity = true;
  for (const Poly& m : minors) {
    g = poly_gcd(g, m);
    if (poly_degree(m) == w) root_at_infinity = false;
  }
  if (g.empty()) return false;  // every minor vanishes identically
  return poly_degree(g) == 0 && !root_at_infinity;
}

std::size_t generic_rank(const KroneckerPencil& p) {
  p.validate();
  // A nonzero minor of size ≤ w has at most w roots, so t = 0..w suffices.
  std::size_t best = 0;
  const std::size_t bound = std::min(p.v(), p.w());
  for (std::size_t t = 0; t <= p.w() && best < bound; ++t)
    best = std::max(best, rank(evaluate(p, GaussRational(static_cast<long>(t)))));
  return best;
}

ExactMatrix section_matrix(const KroneckerPencil& p, std::size_t n) {
  const std::size_t v = p.v(), w = p.w();
  ExactMatrix m((n + 2) * w, (n + 1) * v);
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t r = 0; r < w; ++r)
      for (std::size_t c = 0; c < v; ++c) {
        m((k + 1) * w + r, k * v + c) = p.psi0(r, c);
        m(k * w + r, k * v + c) = -p.psi1(r, c);
      }
  return m;
}

std::size_t h0_twist(const KroneckerPencil& p, std::size_t n) { return nullity(section_matrix(p, n)); }

SplittingType splitting_type(const KroneckerPencil& p) {
  p.validate();
  const std::size_t v = p.v(), w = p.w();
  require(v >= w && generic_rank(p) == w, ErrorCode::NotPreinjective, "pencil is not generically surjective");
  const std::size_t r = v - w;
  SplittingType st;
  std::size_t prev_h0 = 0, prev_a = 0;
  // Degrees lie in [−w, 0], so a_n reaches r by n = w.
  for (std::size_t n = 0; prev_a < r; ++n) {
    require(n <= w, ErrorCode::NotPreinjective, "section counts did not stabilize");
    const std::size_t h = h0_twist(p, n);
    st.h0.push_back(h);
    const std::size_t a = h - prev_h0;
    for (std::size_t i = prev_a; i < a; ++i) st.degrees.push_back(-static_cast<std::int64_t>(n));
    prev_h0 = h;
    prev_a = a;
  }
  std::int64_t sum = 0;
  for (auto d : st.degrees) sum += d;
  require(st.degrees.size() == r, ErrorCode::NotPreinjective, "rank mismatch in splitting type");
  require(sum == -static_cast<std::int64_t>(w), ErrorCode::NotPreinjective,
          "kernel degree exceeds -w: the pencil drops rank somewhere");
  return st;
}

BundleInvariants bundle_invariants(const KroneckerPencil& p) {
  const SplittingType st = splitting_type(p);
  BundleInvariants out;
  out.rank = static_cast<std::int64_t>(st.degrees.size());
  for (auto d : st.degrees) out.degree += d;
  out.dual_globally_generated = std::all_of(st.degrees.begin(), st.degrees.end(), [](auto d) { return d <= 0; });
  return out;
}

KroneckerPencil shift_pencil(std::size_t d) {
  KroneckerPencil p{ExactMatrix(d, d + 1), ExactMatrix(d, d + 1)};
  for (std::size_t i = 0; i < d; ++i) {
    p.psi0(i, i) = GaussRational(1);
    p.psi1(i, i + 1) = GaussRational(1);
  }
  return p;
}

KroneckerPencil direct_sum(const KroneckerPencil& a, const KroneckerPencil& b) {
  a.validate();
  b.validate();
  KroneckerPencil out{ExactMatrix(a.w() + b.w(), a.v() + b.v()), ExactMatrix(a.w() + b.w(), a.v() + b.v())};
  for (std::size_t r = 0; r < a.w(); ++r)
    for (std::size_t c = 0; c < a.v(); ++c) {
      out.psi0(r, c) = a.psi0(r, c);
      out.psi1(r, c) = a.psi1(r, c);
    }
  for (std::size_t r = 0; r < b.w(); ++r)
    for (std::size_t c = 0; c < b.v(); ++c) {
      out.psi0(a.w() + r, a.v() + c) = b.psi0(r, c);
      out.psi1(a.w() + r, a.v() + c) = b.psi1(r, c);
    }
  return out;
}

KroneckerPencil random_pencil(std::size_t v, std::size_t w, std::uint64_t seed, int pool) {
  require(pool >= 1, ErrorCode::InvalidArgument, "pool must be positive");
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<long> dist(-pool, pool);
  KroneckerPencil p{ExactMatrix(w, v), ExactMatrix(w, v)};
  for (auto* m : {&p.psi0, &p.psi1})
    for (std::size_t r = 0; r < w; ++r)
      for (std::size_t c = 0; c < v; ++c) {
        const long re = dist(gen);
        const long im = dist(gen);
        (*m)(r, c) = GaussRational(mpq_class(re), mpq_class(im));
      }
  return p;
}

}  // namespace dsq
