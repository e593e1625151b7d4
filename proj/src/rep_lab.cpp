#include "dsq/rep_lab.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "dsq/error.hpp"
#include "dsq/seeding.hpp"

namespace dsq {

void ExactRep::validate() const {
  require(dims.size() == quiver.vertex_count(), ErrorCode::VertexMismatch, "rep dims do not fit the quiver");
  require(dims.is_nonnegative(), ErrorCode::InvalidArgument, "rep dims must be nonnegative");
  require(mats.size() == quiver.arrow_count(), ErrorCode::ShapeMismatch, "one matrix per arrow is required");
  for (std::size_t a = 0; a < mats.size(); ++a) {
    const Arrow& arrow = quiver.arrows()[a];
    require(mats[a].rows() == static_cast<std::size_t>(dims[arrow.head]) &&
                mats[a].cols() == static_cast<std::size_t>(dims[arrow.tail]),
            ErrorCode::ShapeMismatch, "matrix for arrow " + arrow.name + " has the wrong shape");
  }
}

ExactRep zero_rep(const Quiver& q, const DimVector& a) {
  require(a.size() == q.vertex_count(), ErrorCode::VertexMismatch, "dims do not fit the quiver");
  require(a.is_nonnegative(), ErrorCode::InvalidArgument, "dims must be nonnegative");
  ExactRep rep{q, a, {}};
  for (const Arrow& arrow : q.arrows()) {
    rep.mats.emplace_back(static_cast<std::size_t>(a[arrow.head]), static_cast<std::size_t>(a[arrow.tail]));
  }
  return rep;
}

ExactRep random_rep(const Quiver& q, const DimVector& a, std::uint64_t seed, int pool) {
  require(pool >= 1, ErrorCode::InvalidArgument, "pool must be at least 1");
  ExactRep rep = zero_rep(q, a);
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<long> coeff(-pool, pool);
  for (ExactMatrix& m : rep.mats) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        long re = coeff(gen);
        long im = coeff(gen);
        m(r, c) = GaussRational(re, im);
      }
    }
  }
  return rep;
}

ExactRep direct_sum(const ExactRep& x, const ExactRep& y) {
  require(x.quiver == y.quiver, ErrorCode::QuiverMismatch, "direct sum over different quivers");
  ExactRep out = zero_rep(x.quiver, x.dims + y.dims);
  for (std::size_t a = 0; a < out.mats.size(); ++a) {
    const ExactMatrix& mx = x.mats[a];
    const ExactMatrix& my = y.mats[a];
    for (std::size_t r = 0; r < mx.rows(); ++r)
      for (std::size_t c = 0; c < mx.cols(); ++c) out.mats[a](r, c) = mx(r, c);
    for (std::size_t r = 0; r < my.rows(); ++r)
      for (std::size_t c = 0; c < my.cols(); ++c) out.mats[a](mx.rows() + r, mx.cols() + c) = my(r, c);
  }
  return out;
}

ExactMatrix intertwiner_matrix(const ExactRep& x, const ExactRep& y) {
  require(x.quiver == y.quiver, ErrorCode::QuiverMismatch, "representations of different quivers");
  x.validate();
  y.validate();
  const Quiver& q = x.quiver;
  const std::size_t n = q.vertex_count();
  auto dx = [&](std::size_t v) { return static_cast<std::size_t>(x.dims[v]); };
  auto dy = [&](std::size_t v) { return static_cast<std::size_t>(y.dims[v]); };

  // Column block of vertex v holds f_v (dy(v) × dx(v)) row-major.
  std::vector<std::size_t> col_offset(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) col_offset[v + 1] = col_offset[v] + dy(v) * dx(v);
  // Row block of arrow a holds Hom(V_tail, W_head) row-major.
  std::vector<std::size_t> row_offset(q.arrow_count() + 1, 0);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arrow = q.arrows()[a];
    row_offset[a + 1] = row_offset[a] + dy(arrow.head) * dx(arrow.tail);
  }

  ExactMatrix m(row_offset.back(), col_offset.back());
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arrow = q.arrows()[a];
    const std::size_t h = arrow.head;
    const std::size_t t = arrow.tail;
    const std::size_t out_cols = dx(t);
    // f_h · x_a: entry (r, k) of the block gets Σ_c f_h(r, c) x_a(c, k).
    for (std::size_t r = 0; r < dy(h); ++r)
      for (std::size_t c = 0; c < dx(h); ++c)
        for (std::size_t k = 0; k < out_cols; ++k) {
          const GaussRational& coeff = x.mats[a](c, k);
          if (!coeff.is_zero()) m(row_offset[a] + r * out_cols + k, col_offset[h] + r * dx(h) + c) += coeff;
        }
    // − y_a · f_t: entry (r, k) gets −Σ_c y_a(r, c) f_t(c, k).
    for (std::size_t r = 0; r < dy(h); ++r)
      for (std::size_t c = 0; c < dy(t); ++c)
        for (std::size_t k = 0; k < out_cols; ++k) {
          const GaussRational& coeff = y.mats[a](r, c);
          if (!coeff.is_zero()) m(row_offset[a] + r * out_cols + k, col_offset[t] + c * dx(t) + k) -= coeff;
        }
  }
  return m;
}

HomExt hom_ext_dims(const ExactRep& x, const ExactRep& y) {
  ExactMatrix m = intertwiner_matrix(x, y);
  const std::size_t r = rank(m);
  return {m.cols() - r, m.rows() - r};
}

std::size_t stabilizer_dim(const ExactRep& x) {
  require(!x.dims.is_zero(), ErrorCode::ZeroDims, "stabilizer of the zero representation");
  return hom_ext_dims(x, x).hom - 1;
}

std::int64_t dim_rep_space(const Quiver& q, const DimVector& a) {
  require(a.size() == q.vertex_count(), ErrorCode::VertexMismatch, "dims do not fit the quiver");
  std::int64_t s = 0;
  for (const Arrow& arrow : q.arrows()) s += a[arrow.tail] * a[arrow.head];
  return s;
}

namespace {

CensusResult summarize(const Quiver& q, const DimVector& a, const std::vector<std::int64_t>& stabs) {
  CensusResult out;
  out.samples = stabs.size();
  out.dim_group = dim_group(a);
  out.dim_rep = dim_rep_space(q, a);
  for (std::int64_t s : stabs) ++out.histogram[s];
  auto it = out.histogram.find(0);
  out.fraction_trivial = it == out.histogram.end() ? 0.0 : static_cast<double>(it->second) / out.samples;
  out.max_parameter_estimate = out.histogram.empty() ? 0 : out.dim_rep + out.histogram.rbegin()->first - out.dim_group;
  return out;
}

void check_census_args(const Quiver& q, const DimVector& a, std::size_t samples) {
  require(samples >= 1, ErrorCode::InvalidArgument, "census needs at least one sample");
  require(a.size() == q.vertex_count(), ErrorCode::VertexMismatch, "dims do not fit the quiver");
  require(!a.is_zero(), ErrorCode::ZeroDims, "census of the zero dimension vector");
}

}  // namespace

CensusResult parameter_census(const Quiver& q, const DimVector& a, std::size_t samples, std::uint64_t seed,
                              int pool) {
  check_census_args(q, a, samples);
  std::vector<std::int64_t> stabs(samples);
  const auto count = static_cast<std::int64_t>(samples);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t s = 0; s < count; ++s) {
    ExactRep x = random_rep(q, a, derive_seed(seed, static_cast<std::uint64_t>(s)), pool);
    stabs[static_cast<std::size_t>(s)] = static_cast<std::int64_t>(stabilizer_dim(x));
  }
  return summarize(q, a, stabs);
}

CensusResult parameter_census_serial(const Quiver& q, const DimVector& a, std::size_t samples, std::uint64_t seed,
                                     int pool) {
  check_census_args(q, a, samples);
  std::vector<std::int64_t> stabs;
  stabs.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    stabs.push_back(static_cast<std::int64_t>(stabilizer_dim(random_rep(q, a, derive_seed(seed, s), pool))));
  }
  return summarize(q, a, stabs);
}

namespace {

// All nonzero vectors v with 0 ≤ v ≤ a, in lexicographic order.
std::vector<DimVector> sub_vectors(const DimVector& a) {
  std::vector<DimVector> out;
  DimVector cur = DimVector::zero(a.size());
  while (true) {
    std::size_t i = a.size();
    while (i > 0 && cur[i - 1] == a[i - 1]) {
      cur[i - 1] = 0;
      --i;
    }
    if (i == 0) return out;
    ++cur[i - 1];
    out.push_back(cur);
  }
}

bool fits(const DimVector& part, const DimVector& remaining) {
  for (std::size_t i = 0; i < part.size(); ++i) {
    if (part[i] > remaining[i]) return false;
  }
  return true;
}

struct DecompositionWalker {
  const std::vector<DimVector>& candidates;
  std::size_t min_parts;
  const std::function<bool(const Decomposition&)>& visit;
  Decomposition current;

  // Returns false once the visitor asked to stop.
  bool walk(DimVector& remaining, std::size_t first) {
    if (remaining.is_zero()) {
      if (current.parts.size() >= min_parts) return visit(current);
      return true;
    }
    for (std::size_t c = first; c < candidates.size(); ++c) {
      const DimVector& part = candidates[c];
      if (!fits(part, remaining)) continue;
      for (std::size_t i = 0; i < part.size(); ++i) remaining[i] -= part[i];
      current.parts.push_back(part);
      bool go_on = walk(remaining, c);
      current.parts.pop_back();
      for (std::size_t i = 0; i < part.size(); ++i) remaining[i] += part[i];
      if (!go_on) return false;
    }
    return true;
  }
};

}  // namespace

void for_each_decomposition(const DimVector& a, std::size_t min_parts, bool roots_only, const Quiver& q,
                            const std::function<bool(const Decomposition&)>& visit, std::int64_t budget) {
  require(a.size() == q.vertex_count(), ErrorCode::VertexMismatch, "dims do not fit the quiver");
  require(a.is_nonnegative(), ErrorCode::InvalidArgument, "decompositions need a nonnegative vector");
  require(a.height() <= budget, ErrorCode::BudgetExceeded,
          "entry sum " + std::to_string(a.height()) + " exceeds the enumeration budget " + std::to_string(budget));
  if (a.is_zero()) return;
  std::vector<DimVector> candidates = sub_vectors(a);
  if (roots_only) {
    std::erase_if(candidates, [&](const DimVector& v) { return classify_root(q, v) == RootClass::NotRoot; });
  }
  DecompositionWalker walker{candidates, min_parts, visit, {}};
  DimVector remaining = a;
  walker.walk(remaining, 0);
}

std::vector<Decomposition> enumerate_decompositions(const DimVector& a, std::size_t min_parts, bool roots_only,
                                                    const Quiver& q, std::int64_t budget) {
  std::vector<Decomposition> out;
  for_each_decomposition(
      a, min_parts, roots_only, q,
      [&](const Decomposition& d) {
        out.push_back(d);
        return true;
      },
      budget);
  return out;
}

InequalityCheck check_inequality_302(const StarShape& shape, const DimVector& a, std::int64_t budget) {
  Quiver q = build_star(shape);
  require(a.size() == q.vertex_count(), ErrorCode::VertexMismatch, "dims do not fit the star");
  const std::int64_t p_alpha = p_value(q, a);
  InequalityCheck result;
  for_each_decomposition(
      a, 2, false, q,
      [&](const Decomposition& d) {
        ++result.decompositions_checked;
        std::int64_t sum = 0;
        for (const DimVector& part : d.parts) sum += p_value(q, part);
        if (p_alpha > sum) return true;
        result.holds = false;
        result.witness = d;
        return false;
      },
      budget);
  return result;
}

std::vector<StarShape> star_shapes_up_to(int max_flag_steps) {
  // Nonincreasing sequences of leg lengths wᵢ ≥ 2.
  std::vector<StarShape> out;
  std::vector<int> legs;
  std::function<void(int, int)> rec = [&](int budget, int max_len) {
    out.push_back(StarShape{legs});
    for (int len = std::min(budget, max_len); len >= 1; --len) {
      legs.push_back(len + 1);
      rec(budget - len, len);
      legs.pop_back();
    }
  };
  rec(max_flag_steps, max_flag_steps);
  return out;
}

std::vector<SweepCase> inequality_302_cases(int max_flag_steps, std::int64_t max_height) {
  std::vector<SweepCase> out;
  for (const StarShape& shape : star_shapes_up_to(max_flag_steps)) {
    const Quiver q = build_star(shape);
    const std::size_t n = q.vertex_count();
    DimVector a = DimVector::zero(n);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t v, std::int64_t left) {
      if (v == n) {
        if (a[0] > 0 && delta(shape, a) > 0 && in_fundamental_region(q, a)) out.push_back({shape, a});
        return;
      }
      for (std::int64_t x = 0; x <= left; ++x) {
        a[v] = x;
        rec(v + 1, left - x);
      }
      a[v] = 0;
    };
    rec(0, max_height);
  }
  return out;
}

SweepResult sweep_inequality_302(const std::vector<SweepCase>& cases, std::int64_t budget) {
  std::vector<InequalityCheck> checks(cases.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cases.size(); ++i) checks[i] = check_inequality_302(cases[i].shape, cases[i].alpha, budget);
  SweepResult out;
  out.cases = cases.size();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    out.decompositions_checked += checks[i].decompositions_checked;
    if (!checks[i].holds) out.counterexamples.push_back(cases[i]);
  }
  return out;
}

SweepResult sweep_inequality_302_serial(const std::vector<SweepCase>& cases, std::int64_t budget) {
  SweepResult out;
  out.cases = cases.size();
  for (const SweepCase& c : cases) {
    const InequalityCheck check = check_inequality_302(c.shape, c.alpha, budget);
    out.decompositions_checked += check.decompositions_checked;
    if (!check.holds) out.counterexamples.push_back(c);
  }
  return out;
}

std::int64_t q_tilde(const Quiver& q, const DimVector& a, std::int64_t budget) {
  require(!a.is_zero(), ErrorCode::ZeroVector, "q̃ of the zero vector");
  std::int64_t best = tits_q(q, a);
  for_each_decomposition(
      a, 2, false, q,
      [&](const Decomposition& d) {
        std::int64_t sum = 0;
        for (const DimVector& part : d.parts) sum += tits_q(q, part);
        best = std::min(best, sum);
        return true;
      },
      budget);
  return best;
}

mpq_class king_pairing(const std::vector<mpq_class>& lambda, const DimVector& a) {
  require(lambda.size() == a.size(), ErrorCode::ShapeMismatch, "λ and α have different lengths");
  mpq_class sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += lambda[i] * a[i];
  return sum;
}

bool subrep_certificate_check(const ExactRep& x, const ExactRep& sub, const std::vector<ExactMatrix>& embedding) {
  require(x.quiver == sub.quiver, ErrorCode::QuiverMismatch, "certificate over a different quiver");
  x.validate();
  sub.validate();
  const std::size_t n = x.quiver.vertex_count();
  require(embedding.size() == n, ErrorCode::ShapeMismatch, "one embedding matrix per vertex is required");
  for (std::size_t v = 0; v < n; ++v) {
    require(embedding[v].rows() == static_cast<std::size_t>(x.dims[v]) &&
                embedding[v].cols() == static_cast<std::size_t>(sub.dims[v]),
            ErrorCode::ShapeMismatch, "embedding at vertex " + x.quiver.id(v) + " has the wrong shape");
    if (rank(embedding[v]) != embedding[v].cols()) return false;
  }
  for (std::size_t a = 0; a < x.quiver.arrow_count(); ++a) {
    const Arrow& arrow = x.quiver.arrows()[a];
    if (!(x.mats[a] * embedding[arrow.tail] == embedding[arrow.head] * sub.mats[a])) return false;
  }
  return true;
}

}  // namespace dsq
