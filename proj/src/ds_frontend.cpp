#include "dsq/ds_frontend.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dsq/error.hpp"

namespace dsq {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Additive: return "additive";
    case Mode::Multiplicative: return "multiplicative";
    case Mode::Connection: return "connection";
  }
  return "additive";
}

Mode parse_mode(const std::string& s) {
  if (s == "additive") return Mode::Additive;
  if (s == "multiplicative") return Mode::Multiplicative;
  if (s == "connection") return Mode::Connection;
  throw Error(ErrorCode::ParseError, "unknown mode '" + s + "'");
}

int ConjugacyClassSpec::size() const {
  int n = 0;
  for (const Eigenvalue& e : eigenvalues) n += e.mult;
  return n;
}

int DSInstance::rank() const { return classes.empty() ? 0 : classes.front().size(); }

void DSInstance::validate() const {
  require(!classes.empty(), ErrorCode::InvalidArgument, "an instance needs at least one class");
  const int n = classes.front().size();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& ev = classes[i].eigenvalues;
    require(!ev.empty(), ErrorCode::InvalidArgument, "class " + std::to_string(i + 1) + " has no eigenvalues");
    for (std::size_t a = 0; a < ev.size(); ++a) {
      require(ev[a].mult >= 1, ErrorCode::InvalidArgument, "multiplicities must be positive");
      require(std::isfinite(ev[a].value.real()) && std::isfinite(ev[a].value.imag()), ErrorCode::InvalidArgument,
              "eigenvalues must be finite");
      if (mode == Mode::Multiplicative) {
        require(ev[a].value != std::complex<double>(0.0, 0.0), ErrorCode::InvalidArgument,
                "multiplicative classes cannot have eigenvalue 0");
      }
      for (std::size_t b = a + 1; b < ev.size(); ++b) {
        require(ev[a].value != ev[b].value, ErrorCode::InvalidArgument,
                "class " + std::to_string(i + 1) + " repeats an eigenvalue; merge it into one multiplicity");
      }
    }
    require(classes[i].size() == n, ErrorCode::InconsistentSize,
            "class " + std::to_string(i + 1) + " has size " + std::to_string(classes[i].size()) + ", expected " +
                std::to_string(n));
  }
  if (zeta_override) {
    require(mode == Mode::Connection, ErrorCode::InvalidArgument, "zeta_override is only meaningful in connection mode");
    require(zeta_override->size() == classes.size(), ErrorCode::InconsistentSize, "zeta_override needs one row per class");
    for (std::size_t i = 0; i < classes.size(); ++i) {
      require((*zeta_override)[i].size() == classes[i].eigenvalues.size(), ErrorCode::InconsistentSize,
              "zeta_override row " + std::to_string(i + 1) + " must match the class's eigenvalue count");
    }
  }
}

DSInstance normalize_classes(const DSInstance& inst, std::vector<std::string>* notes) {
  inst.validate();
  DSInstance out = inst;
  for (std::size_t i = 0; i < out.classes.size(); ++i) {
    auto& ev = out.classes[i].eigenvalues;
    std::vector<std::size_t> perm(ev.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
      const Eigenvalue& a = inst.classes[i].eigenvalues[x];
      const Eigenvalue& b = inst.classes[i].eigenvalues[y];
      if (a.mult != b.mult) return a.mult > b.mult;
      if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
      return a.value.imag() < b.value.imag();
    });
    bool moved = false;
    for (std::size_t j = 0; j < perm.size(); ++j) {
      ev[j] = inst.classes[i].eigenvalues[perm[j]];
      moved = moved || perm[j] != j;
    }
    if (out.zeta_override) {
      auto& row = (*out.zeta_override)[i];
      const auto original = row;
      for (std::size_t j = 0; j < perm.size(); ++j) row[j] = original[perm[j]];
    }
    if (moved && notes) {
      std::ostringstream msg;
      msg << "class " << i + 1 << " reordered by multiplicity:";
      for (std::size_t j : perm) msg << ' ' << j + 1;
      notes->push_back(msg.str());
    }
  }
  return out;
}

StarData build_alpha_zeta(const DSInstance& inst) {
  inst.validate();
  StarData data;
  const int n = inst.rank();
  for (std::size_t i = 0; i < inst.classes.size(); ++i) {
    const auto& ev = inst.classes[i].eigenvalues;
    data.shape.w.push_back(static_cast<int>(ev.size()));
    std::vector<std::complex<double>> zeta;
    std::vector<int> mult;
    for (std::size_t j = 0; j < ev.size(); ++j) {
      zeta.push_back(inst.zeta_override ? (*inst.zeta_override)[i][j] : ev[j].value);
      mult.push_back(ev[j].mult);
    }
    data.zeta.push_back(std::move(zeta));
    data.mult.push_back(std::move(mult));
  }
  StarLayout layout(data.shape);
  data.alpha = DimVector::zero(layout.vertex_count());
  data.alpha[0] = n;
  for (int i = 1; i <= data.shape.legs(); ++i) {
    std::int64_t remaining = n;
    for (int j = 1; j < data.shape.w[i - 1]; ++j) {
      remaining -= data.mult[i - 1][j - 1];
      data.alpha[layout.at(i, j)] = remaining;
    }
  }
  return data;
}

namespace {

bool all_exact(const DSInstance& inst) {
  if (inst.zeta_override) return false;
  for (const auto& c : inst.classes)
    for (const auto& e : c.eigenvalues)
      if (!e.exact) return false;
  return true;
}

GaussRational power(GaussRational base, int e) {
  GaussRational out = 1;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

}  // namespace

ResidueCheck residue_condition(const DSInstance& inst, const StarData& data) {
  ResidueCheck out;
  const int n = inst.rank();
  if (all_exact(inst)) {
    out.exact = true;
    GaussRational sum = 0;
    GaussRational prod = 1;
    for (const auto& c : inst.classes) {
      for (const auto& e : c.eigenvalues) {
        sum += GaussRational(e.mult) * *e.exact;
        if (inst.mode == Mode::Multiplicative) prod *= power(*e.exact, e.mult);
      }
    }
    switch (inst.mode) {
      case Mode::Additive:
        out.value = {sum.re_double(), sum.im_double()};
        out.met = sum.is_zero();
        break;
      case Mode::Multiplicative:
        out.value = {prod.re_double(), prod.im_double()};
        out.met = prod == GaussRational(1);
        break;
      case Mode::Connection: {
        out.value = {sum.re_double(), sum.im_double()};
        const bool integral = sgn(sum.im()) == 0 && sum.re().get_den() == 1;
        out.met = integral;
        if (integral) out.integer = sum.re().get_num().get_si();
        break;
      }
    }
    return out;
  }

  std::complex<double> sum{0, 0};
  std::complex<double> prod{1, 0};
  for (std::size_t i = 0; i < data.zeta.size(); ++i) {
    for (std::size_t j = 0; j < data.zeta[i].size(); ++j) {
      sum += static_cast<double>(data.mult[i][j]) * data.zeta[i][j];
      prod *= std::pow(data.zeta[i][j], data.mult[i][j]);
    }
  }
  switch (inst.mode) {
    case Mode::Additive:
      out.value = sum;
      out.met = std::abs(sum) <= kAdditiveResidueTol * n;
      break;
    case Mode::Multiplicative:
      out.value = prod;
      out.met = std::abs(prod - 1.0) <= kMultiplicativeResidueTol;
      break;
    case Mode::Connection: {
      out.value = sum;
      const double nearest = std::round(sum.real());
      out.met = std::abs(sum - std::complex<double>(nearest, 0.0)) <= kConnectionResidueTol;
      if (out.met) out.integer = static_cast<std::int64_t>(nearest);
      break;
    }
  }
  return out;
}

std::int64_t dim_flag_product(const DimVector& alpha, const StarShape& shape) {
  std::size_t vertices = 1;
  for (int wi : shape.w) {
    require(wi >= 1, ErrorCode::InvalidArgument, "leg lengths must be positive");
    vertices += static_cast<std::size_t>(wi - 1);
  }
  require(alpha.size() == vertices, ErrorCode::VertexMismatch, "α does not fit the star");
  const std::int64_t a0 = alpha[0];
  std::int64_t total = 0;
  std::size_t next = 1;  // legs are laid out consecutively after the centre
  for (int i = 1; i <= shape.legs(); ++i) {
    const int wi = shape.w[i - 1];
    std::int64_t prev = a0;
    std::int64_t sum_sq = 0;
    for (int j = 1; j <= wi; ++j) {
      const std::int64_t cur = j < wi ? alpha[next++] : 0;
      if (cur > prev || cur < 0)
        throw Error(ErrorCode::NonMonotoneFlag, "leg " + std::to_string(i) + " is not a flag (entries must weakly decrease)");
      sum_sq += (prev - cur) * (prev - cur);
      prev = cur;
    }
    total += (a0 * a0 - sum_sq) / 2;
  }
  return total;
}

Verdict verdict(const DSInstance& raw) {
  Verdict v;
  DSInstance inst = normalize_classes(raw, &v.notes);
  StarData data = build_alpha_zeta(inst);
  Quiver q = build_star(data.shape);

  v.n = inst.rank();
  v.w = data.shape.w;
  v.alpha = data.alpha;
  v.zeta = data.zeta;
  v.delta = delta(data.shape, data.alpha);
  v.in_fundamental_region = in_fundamental_region(q, data.alpha);
  v.delta_shortcut = v.delta >= 0;
  v.residue = residue_condition(inst, data);
  v.tits_q = tits_q(q, data.alpha);
  v.p = 1 - v.tits_q;
  v.dim_flag = dim_flag_product(data.alpha, data.shape);
  v.sufficient = v.in_fundamental_region && v.delta > 0 && v.residue.met;
  v.expected_dim_solution_space = 2 * v.dim_flag - static_cast<std::int64_t>(v.n) * v.n + 1;
  v.expected_dim_conn_stack = 2 * v.p - 1;

  v.notes.push_back("the criterion is sufficient, not necessary: sufficient=false does not mean no solution exists");
  v.notes.push_back(
      "eigenspace convention: alpha_ij = n - (m_i1 + ... + m_ij), so m_ij = alpha_i,j-1 - alpha_ij (trace-formula "
      "ordering)");
  if (v.in_fundamental_region != v.delta_shortcut) {
    v.notes.push_back("warning: fundamental-region check and the delta >= 0 shortcut disagree");
  }
  if (v.delta == 0) {
    v.notes.push_back("boundary case delta = 0: the criterion requires delta > 0 strictly");
  }
  if (std::any_of(v.w.begin(), v.w.end(), [](int x) { return x == 1; })) {
    v.notes.push_back("scalar classes (w_i = 1) contribute no flag vertex and nothing to delta");
  }
  if (!v.residue.met) {
    v.notes.push_back("residue (trace/determinant) condition violated");
  }
  return v;
}

void StabilityData::validate(const StarShape& shape) const {
  require(theta.size() == shape.w.size(), ErrorCode::InvalidArgument, "one weight row per leg is required");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    require(theta[i].size() == static_cast<std::size_t>(shape.w[i]), ErrorCode::InvalidArgument,
            "leg " + std::to_string(i + 1) + " needs " + std::to_string(shape.w[i]) + " weights");
    for (std::size_t j = 0; j < theta[i].size(); ++j) {
      require(theta[i][j] >= 0 && theta[i][j] < 1, ErrorCode::InvalidArgument, "weights must lie in [0, 1)");
      if (j > 0) require(theta[i][j - 1] < theta[i][j], ErrorCode::InvalidArgument, "weights must increase strictly");
    }
  }
}

mpq_class parabolic_degree(std::int64_t d, const StabilityData& stab, const StarShape& shape, const DimVector& alpha) {
  stab.validate(shape);
  StarLayout layout(shape);
  require(alpha.size() == layout.vertex_count(), ErrorCode::VertexMismatch, "α does not fit the star");
  mpq_class deg = static_cast<long>(d);
  for (int i = 1; i <= shape.legs(); ++i) {
    std::int64_t prev = alpha[0];
    for (int j = 1; j <= shape.w[i - 1]; ++j) {
      const std::int64_t cur = j < shape.w[i - 1] ? alpha[layout.at(i, j)] : 0;
      deg += mpq_class(static_cast<long>(prev - cur)) * stab.theta[i - 1][j - 1];
      prev = cur;
    }
  }
  return deg;
}

mpq_class parabolic_slope(std::int64_t d, const StabilityData& stab, const StarShape& shape, const DimVector& alpha) {
  require(!alpha.entries.empty() && alpha[0] != 0, ErrorCode::ZeroRank, "slope of a rank-zero bundle");
  mpq_class s = parabolic_degree(d, stab, shape, alpha) / mpq_class(static_cast<long>(alpha[0]));
  s.canonicalize();
  return s;
}

std::vector<mpq_class> theta_to_lambda(const StabilityData& stab, const StarShape& shape) {
  stab.validate(shape);
  StarLayout layout(shape);
  std::vector<mpq_class> lambda(layout.vertex_count() + 1);
  mpq_class first_sum = 0;
  for (const auto& row : stab.theta) first_sum += row.front();
  lambda[layout.vertex_count()] = -stab.a + 1 + first_sum;  // ∞
  lambda[0] = stab.a - first_sum;
  for (int i = 1; i <= shape.legs(); ++i) {
    for (int j = 1; j < shape.w[i - 1]; ++j) {
      lambda[layout.at(i, j)] = stab.theta[i - 1][j] - stab.theta[i - 1][j - 1];
    }
  }
  for (auto& x : lambda) x.canonicalize();
  return lambda;
}

DimVector squid_alpha(const DimVector& star_alpha, std::int64_t alpha_inf) {
  DimVector out = star_alpha;
  out[0] += alpha_inf;
  out.entries.push_back(alpha_inf);
  return out;
}

}  // namespace dsq
