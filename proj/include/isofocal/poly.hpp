#ifndef ISOFOCAL_POLY_HPP
#define ISOFOCAL_POLY_HPP

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <utility>

#include "isofocal/core.hpp"

namespace isofocal {

/// Dense univariate polynomial with coefficients in ascending degree order.
///
/// Trailing (highest degree) exact zeros are trimmed on construction, so the
/// leading coefficient is nonzero unless the polynomial is identically zero.
/// The zero polynomial reports degree -1, which stands in for -infinity.
template <typename Scalar>
class BasicPoly {
 public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Real = typename Eigen::NumTraits<Scalar>::Real;

  static constexpr int kZeroDegree = -1;

  BasicPoly() = default;

  explicit BasicPoly(Coeffs c) : c_(std::move(c)) { trim_exact(); }

  BasicPoly(std::initializer_list<Scalar> c) : c_(static_cast<Eigen::Index>(c.size())) {
    std::copy(c.begin(), c.end(), c_.data());
    trim_exact();
  }

  static BasicPoly constant(Scalar c) { return BasicPoly(Coeffs::Constant(1, c)); }

  static BasicPoly monomial(int k, Scalar c = Scalar(1)) {
    Coeffs v = Coeffs::Zero(k + 1);
    v(k) = c;
    return BasicPoly(std::move(v));
  }

  /// Monic polynomial with the given roots (repeated entries give multiplicities).
  template <typename Derived>
  static BasicPoly from_roots(const Eigen::MatrixBase<Derived>& roots) {
    Coeffs c = Coeffs::Zero(roots.size() + 1);
    c(0) = Scalar(1);
    for (Eigen::Index k = 0; k < roots.size(); ++k) {
      for (Eigen::Index i = k + 1; i > 0; --i) c(i) = c(i - 1) - roots(k) * c(i);
      c(0) = -roots(k) * c(0);
    }
    return BasicPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 0; }
  const Coeffs& coeffs() const { return c_; }

  /// Coefficient of z^i; zero outside the stored range.
  Scalar operator[](int i) const { return (i >= 0 && i < c_.size()) ? c_(i) : Scalar(0); }
  Scalar leading() const { return is_zero() ? Scalar(0) : c_(c_.size() - 1); }

  /// Horner evaluation.
  template <typename T>
  auto operator()(const T& z) const {
    using R = decltype(Scalar(0) * z);
    R acc(0);
    for (Eigen::Index i = c_.size() - 1; i >= 0; --i) acc = acc * z + c_(i);
    return acc;
  }

  /// Sum of |c_i| |z|^i, the scale against which a computed value p(z) is small.
  Real abs_eval(Real r) const {
    Real acc(0);
    for (Eigen::Index i = c_.size() - 1; i >= 0; --i) acc = acc * r + std::abs(c_(i));
    return acc;
  }

  BasicPoly derivative(int order = 1) const {
    BasicPoly d = *this;
    for (int o = 0; o < order; ++o) {
      if (d.degree() <= 0) return BasicPoly();
      Coeffs c(d.c_.size() - 1);
      for (Eigen::Index i = 1; i < d.c_.size(); ++i) c(i - 1) = Real(i) * d.c_(i);
      d = BasicPoly(std::move(c));
    }
    return d;
  }

  BasicPoly monic() const {
    if (is_zero()) throw InvalidInput("monic: zero polynomial");
    return BasicPoly(Coeffs(c_ / leading()));
  }

  /// Drop leading coefficients whose magnitude is below rel_tol * max|c|.
  BasicPoly trimmed(Real rel_tol) const {
    if (is_zero()) return *this;
    const Real scale = c_.cwiseAbs().maxCoeff();
    Eigen::Index n = c_.size();
    while (n > 0 && std::abs(c_(n - 1)) <= rel_tol * scale) --n;
    return BasicPoly(Coeffs(c_.head(n)));
  }

  /// Coefficient vector padded with zeros to length len (len >= size).
  Coeffs padded(Eigen::Index len) const {
    Coeffs v = Coeffs::Zero(std::max<Eigen::Index>(len, c_.size()));
    v.head(c_.size()) = c_;
    return v;
  }

  Real norm() const { return c_.size() ? c_.norm() : Real(0); }

  /// z^deg * p(1/z) with deg the formal degree (defaults to degree()).
  BasicPoly reversed(int deg = -2) const {
    if (deg == -2) deg = degree();
    Coeffs v = padded(deg + 1);
    return BasicPoly(Coeffs(v.reverse()));
  }

  BasicPoly& operator+=(const BasicPoly& o) {
    Coeffs v = padded(std::max(c_.size(), o.c_.size()));
    v.head(o.c_.size()) += o.c_;
    c_ = std::move(v);
    trim_exact();
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    Coeffs v = padded(std::max(c_.size(), o.c_.size()));
    v.head(o.c_.size()) -= o.c_;
    c_ = std::move(v);
    trim_exact();
    return *this;
  }
  BasicPoly& operator*=(Scalar s) {
    c_ *= s;
    trim_exact();
    return *this;
  }

  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator-(BasicPoly a) { return a *= Scalar(-1); }
  friend BasicPoly operator*(BasicPoly a, Scalar s) { return a *= s; }
  friend BasicPoly operator*(Scalar s, BasicPoly a) { return a *= s; }
  friend BasicPoly operator/(BasicPoly a, Scalar s) { return a *= (Scalar(1) / s); }

  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    if (a.is_zero() || b.is_zero()) return BasicPoly();
    Coeffs v = Coeffs::Zero(a.c_.size() + b.c_.size() - 1);
    for (Eigen::Index i = 0; i < a.c_.size(); ++i)
      for (Eigen::Index j = 0; j < b.c_.size(); ++j) v(i + j) += a.c_(i) * b.c_(j);
    return BasicPoly(std::move(v));
  }

  friend bool operator==(const BasicPoly& a, const BasicPoly& b) {
    return a.c_.size() == b.c_.size() && (a.c_.size() == 0 || a.c_ == b.c_);
  }

 private:
  void trim_exact() {
    Eigen::Index n = c_.size();
    while (n > 0 && c_(n - 1) == Scalar(0)) --n;
    if (n != c_.size()) c_.conservativeResize(n);
  }

  Coeffs c_;
};

using Poly = BasicPoly<cplx>;
using RealPoly = BasicPoly<double>;

/// Euclidean division p = q*d + r with deg r < deg d.
template <typename Scalar>
std::pair<BasicPoly<Scalar>, BasicPoly<Scalar>> divmod(const BasicPoly<Scalar>& p,
                                                       const BasicPoly<Scalar>& d) {
  using P = BasicPoly<Scalar>;
  if (d.is_zero()) throw InvalidInput("divmod: division by the zero polynomial");
  if (p.degree() < d.degree()) return {P(), p};
  typename P::Coeffs r = p.coeffs();
  const int dn = d.degree();
  typename P::Coeffs q = P::Coeffs::Zero(p.degree() - dn + 1);
  for (int k = p.degree() - dn; k >= 0; --k) {
    const Scalar c = r(k + dn) / d.leading();
    q(k) = c;
    for (int j = 0; j <= dn; ++j) r(k + j) -= c * d[j];
    r(k + dn) = Scalar(0);
  }
  return {P(std::move(q)), P(typename P::Coeffs(r.head(std::max(dn, 0))))};
}

/// (rows x cols) matrix C with C * v = coefficients of p * v for deg v < cols.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> convolution_matrix(
    const BasicPoly<Scalar>& p, int cols) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> c =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(p.degree() + cols, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i <= p.degree(); ++i) c(i + j, j) = p[i];
  return c;
}

/// Max coefficient distance after scaling both to unit leading coefficient; used in tests
/// and certificate checks where polynomials agree only up to a scalar.
inline double monic_distance(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return std::numeric_limits<double>::infinity();
  const Poly am = a.monic(), bm = b.monic();
  return (am.coeffs() - bm.coeffs()).cwiseAbs().maxCoeff();
}

/// Relative distance between a and b after the least-squares scalar alignment
/// min_s |a - s b| / |a|. Zero iff a and b are proportional.
inline double proportionality_residual(const VectorXc& a, const VectorXc& b) {
  const double bb = b.squaredNorm();
  if (bb == 0.0 || a.norm() == 0.0) return (a.norm() == 0.0 && bb == 0.0) ? 0.0 : 1.0;
  const cplx s = b.dot(a) / bb;  // b^H a / b^H b
  return (a - s * b).norm() / a.norm();
}

}  // namespace isofocal

#endif  // ISOFOCAL_POLY_HPP
