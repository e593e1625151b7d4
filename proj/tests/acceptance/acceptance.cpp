// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dsq/ds_frontend.hpp"
#include "dsq/error.hpp"
#include "dsq/orbit_solver.hpp"
#include "dsq/pencil.hpp"
#include "dsq/quiver.hpp"
#include "dsq/rep_lab.hpp"
#include "dsq/squid_symplectic.hpp"

using namespace dsq;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // <= 0: none
  std::function<Outcome()> body;
};

Outcome fail(Outcome o, const std::string& why) {
  o.pass = false;
  o.detail += (o.detail.empty() ? "" : "; ") + why;
  return o;
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1 -----------------------------------------------------------------------

Quiver random_quiver(std::mt19937_64& gen) {
  const std::size_t n = 1 + gen() % 6;
  std::vector<VertexId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i));
  std::vector<Arrow> arrows;
  if (n > 1) {
    const std::size_t m = gen() % 11;
    for (std::size_t a = 0; a < m; ++a) {
      std::size_t t = gen() % n, h = gen() % n;
      if (t == h) h = (h + 1) % n;
      arrows.push_back({t, h, "a" + std::to_string(a)});
    }
  }
  return {ids, arrows};
}

DimVector random_dims(std::mt19937_64& gen, std::size_t n) {
  DimVector a = DimVector::zero(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<std::int64_t>(gen() % 4);
  return a;
}

Outcome euler_identity() {
  std::mt19937_64 gen(101);
  Outcome o;
  int bad = 0;
  for (int t = 0; t < 200; ++t) {
    const Quiver q = random_quiver(gen);
    const DimVector a = random_dims(gen, q.vertex_count());
    const DimVector b = random_dims(gen, q.vertex_count());
    const HomExt he = hom_ext_dims(random_rep(q, a, gen(), 3), random_rep(q, b, gen(), 3));
    if (static_cast<std::int64_t>(he.hom) - static_cast<std::int64_t>(he.ext) != euler_form(q, a, b)) ++bad;
  }
  o.detail = fmt("200 random quivers, %d mismatches", bad);
  return bad == 0 ? o : fail(o, "hom - ext differs from the Euler form");
}

// 2 -----------------------------------------------------------------------

Outcome inequality_sweep() {
  const std::vector<SweepCase> cases = inequality_302_cases(5, 10);
  const SweepResult r = sweep_inequality_302(cases, 10);
  Outcome o;
  o.detail = fmt("height <= 10: %zu cases, %zu decompositions, %zu counterexamples", r.cases,
                 r.decompositions_checked, r.counterexamples.size());
  if (cases.empty()) return fail(o, "no cases generated");
  if (!r.counterexamples.empty()) return fail(o, "counterexample found");

  // The region above holds a single case; height 14 adds six more.
  const std::vector<SweepCase> wider = inequality_302_cases(5, 14);
  const SweepResult rw = sweep_inequality_302(wider, 14);
  o.detail += fmt("; height <= 14: %zu cases, %zu decompositions, %zu counterexamples", rw.cases,
                  rw.decompositions_checked, rw.counterexamples.size());
  if (!rw.counterexamples.empty()) return fail(o, "counterexample at height <= 14");
  return o;
}

// 3 -----------------------------------------------------------------------

// Nonincreasing sequences of length len bounded by top.
void monotone_sequences(std::int64_t top, int len, std::vector<std::int64_t>& cur,
                        std::vector<std::vector<std::int64_t>>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  const std::int64_t hi = cur.empty() ? top : cur.back();
  for (std::int64_t v = hi; v >= 0; --v) {
    cur.push_back(v);
    monotone_sequences(top, len, cur, out);
    cur.pop_back();
  }
}

Outcome dimension_ledger() {
  Outcome o;
  std::size_t checked = 0;
  int bad = 0;
  // Leg lengths nonincreasing, up to three legs of length ≤ 5.
  std::vector<StarShape> shapes = {StarShape{}};
  for (int a = 2; a <= 5; ++a) {
    shapes.push_back({{a}});
    for (int b = 2; b <= a; ++b) {
      shapes.push_back({{a, b}});
      for (int c = 2; c <= b; ++c) shapes.push_back({{a, b, c}});
    }
  }
  for (const StarShape& shape : shapes) {
    const Quiver q = build_star(shape);
    const StarLayout layout(shape);
    for (std::int64_t n = 1; n <= 5; ++n) {
      std::vector<std::vector<std::vector<std::int64_t>>> legs;
      for (int w : shape.w) {
        std::vector<std::vector<std::int64_t>> seqs;
        std::vector<std::int64_t> cur;
        monotone_sequences(n, w - 1, cur, seqs);
        legs.push_back(std::move(seqs));
      }
      DimVector alpha = DimVector::zero(layout.vertex_count());
      alpha[0] = n;
      std::function<void(std::size_t)> rec = [&](std::size_t leg) {
        if (leg == legs.size()) {
          const std::int64_t fl = dim_flag_product(alpha, shape);
          const std::int64_t p = p_value(q, alpha);
          if (fl != p + n * n - 1) ++bad;
          if (2 * fl - n * n + 1 != 2 * p + n * n - 1) ++bad;
          ++checked;
          return;
        }
        for (const auto& s : legs[leg]) {
          for (std::size_t j = 0; j < s.size(); ++j) alpha[layout.at(static_cast<int>(leg) + 1, static_cast<int>(j) + 1)] = s[j];
          rec(leg + 1);
        }
      };
      rec(0);
    }
  }
  o.detail = fmt("%zu star vectors, %d mismatches", checked, bad);
  return bad == 0 ? o : fail(o, "dim Fl differs from p + n^2 - 1");
}

// 4, 5 --------------------------------------------------------------------

DSInstance from_spectra(Mode mode, const std::vector<std::vector<Complex>>& spectra) {
  DSInstance inst;
  inst.mode = mode;
  for (const auto& s : spectra) {
    ConjugacyClassSpec c;
    for (const Complex& v : s) c.eigenvalues.push_back({v, 1, std::nullopt});
    inst.classes.push_back(c);
  }
  return inst;
}

Outcome additive_construction() {
  Outcome o;
  std::mt19937_64 gen(404);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  SolverOptions opts;
  opts.starts = 16;
  int ok = 0;
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<Complex>> s;
    for (int i = 0; i < 5; ++i) {
      const Complex a(u(gen), u(gen) - 1.25);
      s.push_back({a, -a});
    }
    const DSInstance inst = from_spectra(Mode::Additive, s);
    opts.seed = gen();
    SolverResult r = solve_additive(inst, opts);
    worst = std::max(worst, r.residual_norm);
    if (!r.converged || r.residual_norm > 1e-8) continue;
    const auto [td, cr] = tangent_dimension(r, inst);
    if (td == 7 && cr == 3 && certify(r, inst, 1e-8)) ++ok;
  }
  o.detail = fmt("rank 2: %d/20 certified td=7 cr=3, worst residual %.1e", ok, worst);
  if (ok != 20) o = fail(o, "rank-2 family");

  std::normal_distribution<double> nd;
  int ok3 = 0;
  const int family = 4;
  for (int t = 0; t < family; ++t) {
    std::vector<std::vector<Complex>> s(4);
    Complex total = 0;
    for (auto& row : s)
      for (int j = 0; j < 3; ++j) {
        row.emplace_back(nd(gen), nd(gen));
        total += row.back();
      }
    for (auto& v : s.back()) v -= total / 3.0;
    const DSInstance inst = from_spectra(Mode::Additive, s);
    const Verdict v = verdict(inst);
    if (v.delta <= 0) continue;
    opts.seed = gen();
    SolverResult r = solve_additive(inst, opts);
    if (!r.converged) continue;
    const auto [td, cr] = tangent_dimension(r, inst);
    if (td == 2 * v.dim_flag - 8 && certify(r, inst, 1e-8)) ++ok3;
  }
  o.detail += fmt("; rank 3, 4 points: %d/%d certified td = 2 dim Fl - 8", ok3, family);
  return ok3 == family ? o : fail(o, "rank-3 family");
}

Outcome multiplicative_construction() {
  Outcome o;
  std::mt19937_64 gen(505);
  std::uniform_real_distribution<double> u(0.05, 0.45);
  SolverOptions opts;
  int ok = 0;
  double worst = 0;
  for (int t = 0; t < 10; ++t) {
    std::vector<std::vector<Complex>> s;
    for (int i = 0; i < 5; ++i) {
      const Complex z = std::exp(Complex(0, 2 * kPi * u(gen)));
      s.push_back({z, 1.0 / z});
    }
    const DSInstance inst = from_spectra(Mode::Multiplicative, s);
    opts.seed = gen();
    SolverResult r = solve_multiplicative(inst, opts);
    worst = std::max(worst, r.residual_norm);
    if (!r.converged || r.residual_norm > 1e-8) continue;
    const auto [td, cr] = tangent_dimension(r, inst);
    if (td == 7 && certify(r, inst, 1e-8)) ++ok;
  }
  o.detail = fmt("%d/10 certified td=7, worst residual %.1e", ok, worst);
  return ok == 10 ? o : fail(o, "multiplicative family");
}

// 6 -----------------------------------------------------------------------

Outcome theta_trace() {
  Outcome o;
  std::mt19937_64 gen(606);
  std::normal_distribution<double> nd;
  double worst = 0;
  int made = 0;
  while (made < 100) {
    StarShape shape;
    const int k = 1 + static_cast<int>(gen() % 4);
    for (int i = 0; i < k; ++i) shape.w.push_back(1 + static_cast<int>(gen() % 3));
    const StarLayout layout(shape);
    DimVector alpha = DimVector::zero(layout.vertex_count());
    alpha[0] = 1 + static_cast<std::int64_t>(gen() % 4);
    std::vector<std::vector<std::int64_t>> mult(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
      std::int64_t prev = alpha[0];
      for (int j = 1; j < shape.w[i - 1]; ++j) {
        const std::int64_t cur = static_cast<std::int64_t>(gen() % (prev + 1));
        alpha[layout.at(i, j)] = cur;
        mult[i - 1].push_back(prev - cur);
        prev = cur;
      }
      mult[i - 1].push_back(prev);
    }
    // Random ζ, then one entry with positive multiplicity absorbs the
    // fractional part of the residue sum.
    std::vector<std::vector<Complex>> zeta;
    Complex sum = 0;
    for (int i = 0; i < k; ++i) {
      std::vector<Complex> row;
      for (int j = 0; j < shape.w[i]; ++j) {
        row.emplace_back(nd(gen), nd(gen));
        sum += double(mult[i][j]) * row.back();
      }
      zeta.push_back(row);
    }
    int fi = -1, fj = -1;
    for (int i = 0; i < k && fi < 0; ++i)
      for (int j = 0; j < shape.w[i]; ++j)
        if (mult[i][j] > 0) {
          fi = i;
          fj = j;
          break;
        }
    const Complex target(std::round(sum.real()) + static_cast<double>(gen() % 3), 0);
    zeta[fi][fj] += (target - sum) / double(mult[fi][fj]);
    const auto N = static_cast<std::int64_t>(gen() % 4);
    try {
      const ThetaN th = theta_N(zeta, shape, alpha, N);
      worst = std::max(worst, std::abs(th.target.weighted_trace(th.squid_dims)));
      ++made;
    } catch (const Error&) {
      // residue sum off an integer after rounding: redraw
    }
  }
  o.detail = fmt("100 instances, max |sum theta_v dim_v| = %.1e", worst);
  return worst <= 1e-12 ? o : fail(o, "trace above 1e-12");
}

// 7 -----------------------------------------------------------------------

double blocks_norm(const VertexMatrices& m) {
  double s = 0;
  for (const auto& b : m) s += b.squaredNorm();
  return std::sqrt(s);
}

Outcome moment_map_checks() {
  Outcome o;
  std::mt19937_64 gen(707);
  std::normal_distribution<double> nd;
  double worst_trace = 0, worst_equiv = 0, worst_fd = 0;
  for (int t = 0; t < 200; ++t) {
    StarShape shape;
    const int k = static_cast<int>(gen() % 4);
    for (int i = 0; i < k; ++i) shape.w.push_back(1 + static_cast<int>(gen() % 3));
    const StarLayout layout(shape);
    DimVector dims = DimVector::zero(layout.vertex_count() + 1);
    for (auto& d : dims.entries) d = static_cast<std::int64_t>(gen() % 3);
    dims[0] = 1 + static_cast<std::int64_t>(gen() % 3);

    const CotangentSquidPoint x = CotangentSquidPoint::random(shape, dims, gen);
    const VertexMatrices mu = moment_map(x);
    Complex tr = 0;
    double scale = 0;
    for (const auto& b : mu) {
      tr += b.trace();
      scale += b.cwiseAbs().sum();
    }
    worst_trace = std::max(worst_trace, std::abs(tr) / std::max(scale, 1e-300));

    VertexMatrices g;
    for (auto d : dims.entries) {
      CMatrix m(d, d);
      for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Complex(nd(gen), nd(gen));
      g.push_back(m + 3.0 * CMatrix::Identity(d, d));
    }
    const VertexMatrices lhs = moment_map(group_action(x, g));
    double diff = 0, ref = 0;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (g[v].size() == 0) continue;
      const CMatrix rhs = g[v] * mu[v] * g[v].inverse();
      diff += (lhs[v] - rhs).squaredNorm();
      ref += rhs.squaredNorm();
    }
    worst_equiv = std::max(worst_equiv, std::sqrt(diff) / std::max(std::sqrt(ref), 1.0));

    const CotangentSquidPoint y = CotangentSquidPoint::random(shape, dims, gen);
    const double h = 1e-5;
    const VertexMatrices plus = moment_map(x + Complex(h) * y);
    const VertexMatrices minus = moment_map(x + Complex(-h) * y);
    const VertexMatrices d = moment_map_differential(x, y);
    VertexMatrices err;
    for (std::size_t v = 0; v < d.size(); ++v) err.push_back((plus[v] - minus[v]) / (2 * h) - d[v]);
    worst_fd = std::max(worst_fd, blocks_norm(err) / std::max(blocks_norm(d), 1e-12));
  }
  o.detail = fmt("200 points: trace %.1e, equivariance %.1e, d(mu) vs FD %.1e (relative)", worst_trace, worst_equiv,
                 worst_fd);
  if (worst_trace > 1e-9 || worst_equiv > 1e-9) o = fail(o, "moment map identity above 1e-9");
  if (worst_fd > 1e-5) o = fail(o, "differential above 1e-5");
  return o;
}

// 8 -----------------------------------------------------------------------

Outcome pencil_correspondence() {
  Outcome o;
  int bad = 0, sums = 0;
  for (std::size_t d = 0; d <= 5; ++d) {
    const KroneckerPencil p = shift_pencil(d);
    if (p.v() != d + 1 || p.w() != d) ++bad;
    if (splitting_type(p).degrees != std::vector<std::int64_t>{-static_cast<std::int64_t>(d)}) ++bad;
  }
  for (std::size_t a = 0; a <= 5; ++a)
    for (std::size_t b = a; b <= 5; ++b)
      for (std::size_t c = b; c <= 5; c += 2) {
        const KroneckerPencil p = direct_sum(direct_sum(shift_pencil(a), shift_pencil(b)), shift_pencil(c));
        std::vector<std::int64_t> want = {-static_cast<std::int64_t>(a), -static_cast<std::int64_t>(b),
                                          -static_cast<std::int64_t>(c)};
        if (splitting_type(p).degrees != want) ++bad;
        ++sums;
      }
  o.detail = fmt("shift pencils d = 0..5 and %d direct sums, %d mismatches", sums, bad);
  return bad == 0 ? o : fail(o, "splitting type mismatch");
}

// 9 -----------------------------------------------------------------------

DSInstance rank2_real(const std::vector<double>& a) {
  std::vector<std::vector<Complex>> s;
  for (double x : a) s.push_back({Complex(x, 0), Complex(-x, 0)});
  return from_spectra(Mode::Additive, s);
}

Outcome negative_controls() {
  Outcome o;
  const Verdict three = verdict(rank2_real({1, 2, 3}));
  const Verdict four = verdict(rank2_real({1, 2, 3, 4}));
  o.detail = fmt("3-point delta=%lld sufficient=%d; 4-point delta=%lld sufficient=%d", (long long)three.delta,
                 int(three.sufficient), (long long)four.delta, int(four.sufficient));
  if (three.delta != -1 || three.sufficient) o = fail(o, "3-point control");
  if (four.delta != 0 || four.sufficient) o = fail(o, "4-point control");

  const StarShape shape{{2, 2, 2}};
  DimVector a = DimVector::zero(StarLayout(shape).vertex_count());
  a[0] = 2;
  const InequalityCheck c = check_inequality_302(shape, a);
  const DimVector e0 = DimVector::unit(a.size(), 0);
  const bool witness_ok = c.witness && c.witness->parts == std::vector<DimVector>{e0, e0};
  o.detail += fmt("; 2e0 holds=%d witness {e0, e0}=%d", int(c.holds), int(witness_ok));
  if (c.holds || !witness_ok) o = fail(o, "2e0 control");
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "hom - ext equals the Euler form", 10, euler_identity},
      {2, "p(a) > sum p(parts) over all decompositions", 600, inequality_sweep},
      {3, "dim Fl = p + n^2 - 1", 1, dimension_ledger},
      {4, "additive construction and tangent dimension", 120, additive_construction},
      {5, "multiplicative construction", 180, multiplicative_construction},
      {6, "theta^N trace vanishes", 0, theta_trace},
      {7, "moment map analytics", 0, moment_map_checks},
      {8, "pencil splitting types", 5, pencil_correspondence},
      {9, "negative controls", 0, negative_controls},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = fail(o, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) o = fail(o, fmt("runtime %.2f s over %.0f s", secs, c.time_limit_s));
    if (!o.pass) ++failures;
    std::printf("criterion %d: %s  %s  (%s) [%.2f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.title.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
