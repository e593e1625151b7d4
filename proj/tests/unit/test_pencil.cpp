#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <random>

#include "dsq/error.hpp"
#include "dsq/pencil.hpp"

using namespace dsq;

namespace {

GaussRational gi(long re, long im = 0) { return GaussRational(mpq_class(re), mpq_class(im)); }

KroneckerPencil from_rows(std::vector<std::vector<long>> p0, std::vector<std::vector<long>> p1) {
  const std::size_t w = p0.size(), v = w ? p0[0].size() : 0;
  KroneckerPencil p{ExactMatrix(w, v), ExactMatrix(w, v)};
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < v; ++j) {
      p.psi0(i, j) = gi(p0[i][j]);
      p.psi1(i, j) = gi(p1[i][j]);
    }
  return p;
}

// h⁰(E(n)) in homogeneous coordinates: degree-n vectors v(λ₀, λ₁) with
// (λ₀Ψ₀ + λ₁Ψ₁)v = 0, solved in floating point.
std::size_t h0_homogeneous(const KroneckerPencil& p, std::size_t n) {
  const auto v = static_cast<Eigen::Index>(p.v()), w = static_cast<Eigen::Index>(p.w());
  const auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero((N + 2) * w, (N + 1) * v);
  auto c = [](const GaussRational& g) { return std::complex<double>(g.re_double(), g.im_double()); };
  // Coefficient k multiplies λ₀^{n−k} λ₁^k; λ₀ keeps k, λ₁ shifts to k + 1.
  for (Eigen::Index k = 0; k <= N; ++k)
    for (Eigen::Index i = 0; i < w; ++i)
      for (Eigen::Index j = 0; j < v; ++j) {
        m(k * w + i, k * v + j) += c(p.psi0(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
        m((k + 1) * w + i, k * v + j) += c(p.psi1(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      }
  if (m.cols() == 0) return 0;
  if (m.rows() == 0) return static_cast<std::size_t>(m.cols());
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<std::size_t>(lu.dimensionOfKernel());
}

// Degrees of E = ⊕ O(−dᵢ) from the homogeneous section counts.
std::vector<std::int64_t> oracle_degrees(const KroneckerPencil& p) {
  const std::size_t r = p.v() - p.w();
  std::vector<std::int64_t> out;
  std::size_t prev_h = 0, prev_a = 0;
  for (std::size_t n = 0; out.size() < r && n <= p.w() + 2; ++n) {
    const std::size_t h = h0_homogeneous(p, n);
    const std::size_t a = h - prev_h;
    for (std::size_t i = prev_a; i < a; ++i) out.push_back(-static_cast<std::int64_t>(n));
    prev_h = h;
    prev_a = a;
  }
  return out;
}

GaussRational poly_eval(const Poly& p, const GaussRational& t) {
  GaussRational acc;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
  return acc;
}

}  // namespace

TEST_CASE("polynomial helpers") {
  Poly z;
  CHECK(poly_degree(z) == -1);
  Poly padded{gi(1), gi(2), gi(0), gi(0)};
  poly_trim(padded);
  CHECK(padded.size() == 2);

  // (t − 1)(t − 2) and (t − 1)(t + 3).
  Poly a{gi(2), gi(-3), gi(1)};
  Poly b{gi(-3), gi(2), gi(1)};
  Poly g = poly_gcd(a, b);
  CHECK(g == Poly{gi(-1), gi(1)});
  CHECK(poly_gcd(a, Poly{}) == Poly{gi(2), gi(-3), gi(1)});
  CHECK(poly_gcd(Poly{}, Poly{}).empty());
  CHECK(poly_degree(poly_gcd(Poly{gi(0, 2), gi(1)}, Poly{gi(5)})) == 0);

  std::mt19937_64 gen(1);
  for (int t = 0; t < 30; ++t) {
    const int deg = static_cast<int>(gen() % 7);
    Poly p;
    for (int i = 0; i <= deg; ++i) p.push_back(gi(static_cast<long>(gen() % 11) - 5, static_cast<long>(gen() % 5) - 2));
    poly_trim(p);
    std::vector<GaussRational> vals;
    for (int x = 0; x <= deg; ++x) vals.push_back(poly_eval(p, gi(x)));
    CHECK(interpolate(vals) == p);
  }
  CHECK(interpolate({}).empty());
}

TEST_CASE("pencil minors") {
  KroneckerPencil p = from_rows({{1, 0}}, {{0, 1}});
  auto minors = pencil_minors(p);
  REQUIRE(minors.size() == 2);
  CHECK(minors[0] == Poly{gi(1)});
  CHECK(minors[1] == Poly{gi(0), gi(1)});

  // Minors interpolated from t = 0..w must agree with direct evaluation past w.
  std::mt19937_64 gen(2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t w = 1 + gen() % 3, v = w + gen() % 3;
    KroneckerPencil q = random_pencil(v, w, gen(), 2);
    auto ms = pencil_minors(q);
    const GaussRational x = gi(7, 2);
    ExactMatrix at(w, v);
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = 0; j < v; ++j) at(i, j) = q.psi0(i, j) + x * q.psi1(i, j);
    std::vector<std::size_t> cols;
    std::vector<bool> sel(v, false);
    std::fill(sel.begin(), sel.begin() + static_cast<long>(w), true);
    std::size_t idx = 0;
    do {
      ExactMatrix sub(w, w);
      std::size_t cc = 0;
      for (std::size_t j = 0; j < v; ++j)
        if (sel[j]) {
          for (std::size_t i = 0; i < w; ++i) sub(i, cc) = at(i, j);
          ++cc;
        }
      REQUIRE(idx < ms.size());
      CHECK(poly_eval(ms[idx], x) == determinant(sub));
      ++idx;
    } while (std::prev_permutation(sel.begin(), sel.end()));
    CHECK(idx == ms.size());
  }
}

TEST_CASE("preinjectivity examples") {
  CHECK(is_preinjective(from_rows({{1, 0}}, {{0, 1}})));
  CHECK_FALSE(is_preinjective(from_rows({{1}}, {{0}})));
  CHECK(is_preinjective(KroneckerPencil{ExactMatrix(0, 3), ExactMatrix(0, 3)}));
  // Fails only at λ₀ = 0 (root at infinity): Ψ₁ has rank 0.
  CHECK_FALSE(is_preinjective(from_rows({{1, 0}}, {{0, 0}})));
  // Fails at t = −1: both minors share the factor (1 + t).
  CHECK_FALSE(is_preinjective(from_rows({{1, 1}}, {{1, 1}})));
  CHECK_FALSE(is_preinjective(from_rows({{1, 0}, {0, 1}}, {{0, 1}, {1, 0}})));
  CHECK_FALSE(is_preinjective(from_rows({{0, 0}}, {{0, 0}})));
  CHECK_FALSE(is_preinjective(from_rows({{1}, {0}}, {{0}, {1}})));

  KroneckerPencil big = random_pencil(10, 9, 3);
  try {
    is_preinjective(big);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }

  KroneckerPencil bad{ExactMatrix(1, 2), ExactMatrix(2, 2)};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("splitting type examples") {
  KroneckerPencil p = from_rows({{1, 0}}, {{0, 1}});
  SplittingType st = splitting_type(p);
  CHECK(st.degrees == std::vector<std::int64_t>{-1});
  CHECK(st.h0 == std::vector<std::size_t>{0, 1});
  CHECK(h0_homogeneous(p, 0) == 0);
  CHECK(h0_homogeneous(p, 1) == 1);

  CHECK(splitting_type(direct_sum(p, p)).degrees == std::vector<std::int64_t>{-1, -1});
  CHECK(splitting_type(KroneckerPencil{ExactMatrix(0, 3), ExactMatrix(0, 3)}).degrees ==
        std::vector<std::int64_t>{0, 0, 0});

  BundleInvariants inv = bundle_invariants(p);
  CHECK(inv.rank == 1);
  CHECK(inv.degree == -1);
  CHECK(inv.dual_globally_generated);
  BundleInvariants triv = bundle_invariants(KroneckerPencil{ExactMatrix(0, 2), ExactMatrix(0, 2)});
  CHECK(triv.rank == 2);
  CHECK(triv.degree == 0);
  CHECK(triv.dual_globally_generated);

  KroneckerPencil g = random_pencil(3, 1, 11);
  REQUIRE(is_preinjective(g));
  CHECK(splitting_type(g).degrees == std::vector<std::int64_t>{0, -1});
  CHECK(bundle_invariants(g).rank == 2);
  CHECK(bundle_invariants(g).degree == -1);

  try {
    splitting_type(from_rows({{1}}, {{0}}));
    FAIL("expected NotPreinjective");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPreinjective);
  }
  CHECK_THROWS_AS(splitting_type(from_rows({{1, 1}}, {{1, 1}})), Error);
  CHECK_THROWS_AS(splitting_type(from_rows({{1}, {0}}, {{0}, {1}})), Error);
}

TEST_CASE("shift pencils and direct sums") {
  std::vector<KroneckerPencil> shifts;
  for (std::size_t d = 0; d <= 5; ++d) {
    KroneckerPencil s = shift_pencil(d);
    CHECK(s.v() == d + 1);
    CHECK(s.w() == d);
    CHECK(is_preinjective(s));
    CHECK(splitting_type(s).degrees == std::vector<std::int64_t>{-static_cast<std::int64_t>(d)});
    CHECK(oracle_degrees(s) == std::vector<std::int64_t>{-static_cast<std::int64_t>(d)});
    shifts.push_back(s);
  }
  for (std::size_t a = 0; a <= 5; ++a)
    for (std::size_t b = 0; b <= 5; ++b) {
      KroneckerPencil s = direct_sum(shifts[a], shifts[b]);
      std::vector<std::int64_t> want{-static_cast<std::int64_t>(a), -static_cast<std::int64_t>(b)};
      std::sort(want.rbegin(), want.rend());
      CHECK(splitting_type(s).degrees == want);
    }
  KroneckerPencil triple = direct_sum(direct_sum(shifts[1], shifts[3]), shifts[2]);
  CHECK(splitting_type(triple).degrees == std::vector<std::int64_t>{-1, -2, -3});
}

TEST_CASE("random pencils agree with the homogeneous oracle") {
  std::mt19937_64 gen(3);
  int pre = 0, not_pre = 0;
  for (int t = 0; t < 80; ++t) {
    const std::size_t w0 = gen() % 4, v0 = w0 + 1 + gen() % 3;
    KroneckerPencil p = random_pencil(v0, w0, gen(), t % 2 ? 1 : 3);
    if (t % 5 == 0) p = direct_sum(shift_pencil(1 + gen() % 3), shift_pencil(gen() % 2));
    // A zero row of Ψ₀ drops the rank at t = 0.
    if (t % 4 == 1 && w0 > 0)
      for (std::size_t j = 0; j < p.v(); ++j) p.psi0(0, j) = GaussRational(0);
    const std::size_t v = p.v(), w = p.w();
    const bool ip = is_preinjective(p);
    std::vector<std::int64_t> oracle = oracle_degrees(p);
    std::int64_t osum = 0;
    for (auto d : oracle) osum += d;
    const bool oracle_pre = oracle.size() == v - w && osum == -static_cast<std::int64_t>(w);
    CHECK(ip == oracle_pre);
    if (ip) {
      ++pre;
      SplittingType st = splitting_type(p);
      CHECK(st.degrees == oracle);
      for (std::size_t n = 0; n < st.h0.size(); ++n) CHECK(st.h0[n] == h0_homogeneous(p, n));
      // Generic splitting is balanced.
      if (t % 5 != 0 && t % 4 != 1 && t % 2 == 0 && !st.degrees.empty())
        CHECK(st.degrees.front() - st.degrees.back() <= 1);
    } else {
      ++not_pre;
      CHECK_THROWS_AS(splitting_type(p), Error);
    }
  }
  CHECK(pre > 10);
  CHECK(not_pre > 3);
}

TEST_CASE("generic rank and section counts") {
  CHECK(generic_rank(from_rows({{1, 1}, {1, 1}}, {{1, 1}, {1, 1}})) == 1);
  CHECK(generic_rank(from_rows({{1, 0}}, {{0, 1}})) == 1);
  CHECK(generic_rank(KroneckerPencil{ExactMatrix(2, 3), ExactMatrix(2, 3)}) == 0);
  KroneckerPencil s = shift_pencil(3);
  for (std::size_t n = 0; n <= 5; ++n) {
    CHECK(h0_twist(s, n) == (n >= 3 ? n - 2 : 0));
    const ExactMatrix m = section_matrix(s, n);
    CHECK(m.rows() == (n + 2) * 3);
    CHECK(m.cols() == (n + 1) * 4);
  }
}

TEST_CASE("random pencil determinism") {
  KroneckerPencil a = random_pencil(4, 2, 5), b = random_pencil(4, 2, 5), c = random_pencil(4, 2, 6);
  CHECK(a.psi0 == b.psi0);
  CHECK(a.psi1 == b.psi1);
  CHECK_FALSE((a.psi0 == c.psi0 && a.psi1 == c.psi1));
  CHECK_THROWS_AS(random_pencil(2, 1, 1, 0), Error);
}
