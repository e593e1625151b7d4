#include "dsq/exact.hpp"

#include <utility>

#include "dsq/error.hpp"

namespace dsq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::VertexMismatch: return "VertexMismatch";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::QuiverMismatch: return "QuiverMismatch";
    case ErrorCode::ZeroDims: return "ZeroDims";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InconsistentSize: return "InconsistentSize";
    case ErrorCode::NonMonotoneFlag: return "NonMonotoneFlag";
    case ErrorCode::ZeroRank: return "ZeroRank";
    case ErrorCode::ResidueConditionViolated: return "ResidueConditionViolated";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::NotPreinjective: return "NotPreinjective";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRational GaussRational::inverse() const {
  require(!is_zero(), ErrorCode::InvalidArgument, "division by zero");
  mpq_class n = norm2();
  return {re_ / n, -im_ / n};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (sgn(o.im_) == 0) {
    require(sgn(o.re_) != 0, ErrorCode::InvalidArgument, "division by zero");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string GaussRational::str() const {
  std::string out = re_.get_str();
  if (sgn(im_) < 0) {
    out += "-" + mpq_class(-im_).get_str() + "i";
  } else {
    out += "+" + im_.get_str() + "i";
  }
  return out;
}

namespace {

mpq_class parse_rational(const std::string& s) {
  require(!s.empty(), ErrorCode::ParseError, "empty rational");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
  require(q.get_den() != 0, ErrorCode::ParseError, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace

GaussRational GaussRational::parse(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (c != ' ') text.push_back(c);
  }
  require(!text.empty(), ErrorCode::ParseError, "empty scalar");
  if (text.back() != 'i') return {parse_rational(text), 0};
  text.pop_back();
  // Split at the last sign that is not the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if (text[k] == '+' || text[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    if (text.empty() || text == "+") return {0, 1};
    if (text == "-") return {0, -1};
    return {0, parse_rational(text[0] == '+' ? text.substr(1) : text)};
  }
  std::string re_part = text.substr(0, split);
  std::string im_part = text.substr(split);
  mpq_class im;
  if (im_part == "+") {
    im = 1;
  } else if (im_part == "-") {
    im = -1;
  } else {
    im = parse_rational(im_part[0] == '+' ? im_part.substr(1) : im_part);
  }
  return {parse_rational(re_part[0] == '+' ? re_part.substr(1) : re_part), im};
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  require(a.cols() == b.rows(), ErrorCode::ShapeMismatch, "matrix product shape");
  ExactMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const GaussRational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::ShapeMismatch, "matrix sum shape");
  ExactMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::ShapeMismatch, "matrix difference shape");
  ExactMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

ExactMatrix scaled(const ExactMatrix& m, const GaussRational& s) {
  ExactMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= s;
  return out;
}

namespace {

// Reduces m to row echelon form in place; returns the rank and, through
// `sign`, the parity of the row swaps performed.
std::size_t eliminate(ExactMatrix& m, int& sign) {
  sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r) {
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(pivot, j), m(r, j));
      sign = -sign;
    }
    GaussRational inv = m(r, c).inverse();
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      GaussRational factor = m(i, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= factor * m(r, j);
      }
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(ExactMatrix m) {
  int sign = 1;
  return eliminate(m, sign);
}

GaussRational determinant(ExactMatrix m) {
  require(m.rows() == m.cols(), ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  int sign = 1;
  if (eliminate(m, sign) < m.rows()) return 0;
  GaussRational det = sign;
  for (std::size_t i = 0; i < m.rows(); ++i) det *= m(i, i);
  return det;
}

}  // namespace dsq
