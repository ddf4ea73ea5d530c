#include "isofocal/pdcurve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

namespace isofocal {

namespace {

// Monomials z0^i z1^j z2^(d-i-j) in HomogPoly3 index order.
VectorXc monomials(int d, const Vector3c& z) {
  VectorXc v(HomogPoly3::size_for(d));
  int k = 0;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d - i; ++j)
      v(k++) = std::pow(z(0), i) * std::pow(z(1), j) * std::pow(z(2), d - i - j);
  return v;
}

HomogPoly3 from_coeffs(int d, const VectorXc& c) {
  HomogPoly3 h(d);
  h.coeffs() = c;
  return h;
}

// Null vector of the rows (one normalized monomial vector per point). Returns false
// when the null space is not one-dimensional.
bool fit_null(const MatrixXc& rows, VectorXc* out, double rank_tol) {
  Eigen::JacobiSVD<MatrixXc> svd(rows, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  const Eigen::Index cols = rows.cols();
  if (rows.rows() < cols - 1) return false;
  if (s(cols - 2) <= rank_tol * s(0)) return false;
  *out = svd.matrixV().col(cols - 1);
  return true;
}

bool degenerate_conic(const VectorXc& c) {
  // Index order for d = 2: (0,0)=z2^2, (0,1)=z1 z2, (0,2)=z1^2, (1,0)=z0 z2, (1,1)=z0 z1, (2,0)=z0^2.
  Eigen::Matrix3cd m;
  m << c(5), c(4) / 2.0, c(3) / 2.0,
       c(4) / 2.0, c(2), c(1) / 2.0,
       c(3) / 2.0, c(1) / 2.0, c(0);
  const Eigen::Vector3d s = Eigen::JacobiSVD<Eigen::Matrix3cd>(m).singularValues();
  return s(2) < 1e-6 * s(0);
}

}  // namespace

DarbouxPair to_darboux(const ProjPoint& p) {
  const cplx a = p(2), b = p(1), c = p(0);
  const double scale = p.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw InvalidInput("to_darboux: zero point");
  if (std::abs(a) <= 1e-14 * scale) {
    if (std::abs(b) <= 1e-14 * scale) throw InvalidInput("to_darboux: degenerate quadratic");
    // One root at infinity, the other at -c/b.
    return {-c, b, 1.0, 0.0};
  }
  const cplx d = std::sqrt(b * b - 4.0 * a * c);
  // Stable pair of roots.
  const cplx q = -0.5 * (b + (std::real(std::conj(b) * d) >= 0.0 ? d : -d));
  if (q == cplx(0.0)) return DarbouxPair::finite(0.0, 0.0);
  return DarbouxPair::finite(q / a, c / q);
}

ProjPoint from_darboux(const DarbouxPair& d) {
  return ProjPoint(d.rho * d.rho1, -(d.rho * d.rho1_w + d.rho1 * d.rho_w), d.rho_w * d.rho1_w);
}

Vector3c tangent_line(cplx alpha) { return Vector3c(1.0, alpha, alpha * alpha); }

Vector3c tangent_line(cplx s, cplx w) { return Vector3c(w * w, s * w, s * s); }

bool projectively_equal(const ProjPoint& p, const ProjPoint& q, double tol) {
  return proportionality_residual(p, q) <= tol;
}

HomogPoly3::HomogPoly3(int degree) : degree_(degree), c_(VectorXc::Zero(size_for(degree))) {
  if (degree < 0) throw InvalidInput("HomogPoly3: negative degree");
}

int HomogPoly3::index(int i, int j) const {
  return i * (degree_ + 1) - i * (i - 1) / 2 + j;
}

cplx HomogPoly3::operator()(const Vector3c& z) const {
  return (monomials(degree_, z).array() * c_.array()).sum();
}

double HomogPoly3::normalized_value(const Vector3c& z) const {
  const double s = c_.norm() * std::pow(z.norm(), degree_);
  return s == 0.0 ? 0.0 : std::abs((*this)(z)) / s;
}

HomogPoly3 operator*(const HomogPoly3& a, const HomogPoly3& b) {
  HomogPoly3 r(a.degree() + b.degree());
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= a.degree() - i; ++j)
      for (int k = 0; k <= b.degree(); ++k)
        for (int l = 0; l <= b.degree() - k; ++l) r.at(i + k, j + l) += a.at(i, j) * b.at(k, l);
  return r;
}

cplx PDCurve::eval_sym(cplx rho, cplx rho1) const {
  cplx acc(0.0);
  for (int a = 0; a < sym.rows(); ++a)
    for (int b = 0; b < sym.cols(); ++b) acc += sym(a, b) * std::pow(rho, a) * std::pow(rho1, b);
  return acc;
}

PDCurve pd_curve(const Poly& phi, const Poly& f, double tol) {
  const int n = phi.degree();
  if (n < 1) throw InvalidInput("pd_curve: deg phi must be at least 1");
  if (f.is_zero()) throw InvalidInput("pd_curve: f is zero");
  if (f.degree() > n) throw InvalidInput("pd_curve: deg f exceeds deg phi");
  const GcdResult g = poly_gcd(phi, f, tol);
  if (g.degree > 0)
    throw DegenerateError("pd_curve: phi and f have a common root (base point); the curve contains a tangent line");

  MatrixXc a(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) a(i, j) = f[i] * phi[j] - phi[i] * f[j];

  PDCurve c;
  c.n = n;
  c.sym = MatrixXc::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      cplx s(0.0);
      for (int j = 0; j <= p; ++j) {
        const int i = p + q + 1 - j;
        if (i <= n) s += a(i, j);
      }
      c.sym(p, q) = s;
      c.sym(q, p) = s;
    }

  // Power sums rho^d + rho1^d as polynomials in (e1, e2), e[i][j] ~ e1^i e2^j.
  const int d = n - 1;
  using Table = std::vector<MatrixXc>;
  Table pw(n, MatrixXc::Zero(n, n));
  pw[0](0, 0) = 2.0;
  if (n > 1) pw[1](1, 0) = 1.0;
  for (int k = 2; k < n; ++k) {
    pw[k].bottomRows(n - 1) += pw[k - 1].topRows(n - 1);
    pw[k].rightCols(n - 1) -= pw[k - 2].leftCols(n - 1);
  }
  MatrixXc e = MatrixXc::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      if (p == q) {
        e(0, p) += c.sym(p, q);
      } else {
        e.rightCols(n - p) += c.sym(p, q) * pw[q - p].leftCols(n - p);
      }
    }
  c.tri = HomogPoly3(d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; i + j <= d; ++j) c.tri.at(j, i) += (i % 2 == 0 ? 1.0 : -1.0) * e(i, j);
  return c;
}

MatrixXc k_matrix(int n, const Vector3c& z) {
  MatrixXc k = MatrixXc::Zero(n + 1, std::max(n - 1, 0));
  for (int j = 0; j < n - 1; ++j) k.block(j, j, 3, 1) = z;
  return k;
}

MatrixXc annihilator(const Poly& phi, const Poly& f) {
  const int n = std::max(phi.degree(), f.degree());
  MatrixXc m(n + 1, 2);
  m.col(0) = phi.padded(n + 1);
  m.col(1) = f.padded(n + 1);
  Eigen::JacobiSVD<MatrixXc> svd(m, Eigen::ComputeFullU);
  const Eigen::VectorXd s = svd.singularValues();
  if (!(s(1) > 1e-12 * s(0))) throw DegenerateError("annihilator: the pencil is rank deficient");
  return svd.matrixU().rightCols(n - 1).adjoint();
}

HomogPoly3 pd_matrix(const Poly& phi, const Poly& f) {
  const int n = std::max(phi.degree(), f.degree());
  if (n < 1) throw InvalidInput("pd_matrix: degree must be at least 1");
  const MatrixXc a = annihilator(phi, f);
  const int d = n - 1;
  HomogPoly3 out(d);
  if (d == 0) {
    out.at(0, 0) = 1.0;
    return out;
  }
  const int g = n;  // grid size per variable; degree in each variable <= n - 1
  MatrixXc vals(g, g);
  for (int p = 0; p < g; ++p)
    for (int q = 0; q < g; ++q) {
      const Vector3c z(std::polar(1.0, 2.0 * std::numbers::pi * p / g),
                       std::polar(1.0, 2.0 * std::numbers::pi * q / g), 1.0);
      vals(p, q) = (a * k_matrix(n, z)).partialPivLu().determinant();
    }
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      cplx acc(0.0);
      for (int p = 0; p < g; ++p)
        for (int q = 0; q < g; ++q)
          acc += vals(p, q) * std::polar(1.0, -2.0 * std::numbers::pi * (double(i * p) / g + double(j * q) / g));
      out.at(i, j) = acc / double(g * g);
    }
  return out;
}

std::vector<std::vector<ProjPoint>> sample_curve(const Poly& phi, const Poly& f,
                                                 const std::vector<cplx>& ts) {
  const int n = phi.degree();
  std::vector<std::vector<ProjPoint>> out;
  out.reserve(ts.size());
  for (cplx t : ts) {
    const Poly pt = phi + f * t;
    const VectorXc r = pt.is_zero() ? VectorXc() : raw_roots(pt);
    std::vector<std::pair<cplx, cplx>> params;  // [s : w]
    for (Eigen::Index i = 0; i < r.size(); ++i) params.push_back({r(i), 1.0});
    while (static_cast<int>(params.size()) < n) params.push_back({1.0, 0.0});
    std::vector<ProjPoint> pts;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        ProjPoint p = from_darboux({params[i].first, params[i].second, params[j].first, params[j].second});
        pts.push_back(p / p.norm());
      }
    out.push_back(std::move(pts));
  }
  return out;
}

std::vector<cplx> t_grid(const Poly& phi, const Poly& f, int count) {
  const int n = phi.degree();
  const double scale = phi.norm() / f.norm();
  std::vector<cplx> ts;
  constexpr double golden = 0.6180339887498949;
  for (int k = 1; static_cast<int>(ts.size()) < count && k < 50 * count + 50; ++k) {
    const double frac = std::fmod(k * golden, 1.0);
    const cplx t = scale * std::polar(0.3 + 1.7 * frac, 2.399963229728653 * k);
    const Poly pt = phi + f * t;
    if (pt.degree() < n || std::abs(pt.leading()) < 1e-6 * pt.norm()) continue;
    const VectorXc r = raw_roots(pt);
    double sep = std::numeric_limits<double>::infinity();
    double big = 1.0;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      big = std::max(big, std::abs(r(i)));
      for (Eigen::Index j = i + 1; j < r.size(); ++j) sep = std::min(sep, std::abs(r(i) - r(j)));
    }
    if (sep < 1e-3 * big) continue;
    ts.push_back(t);
  }
  return ts;
}

Decomposition decompose_curve(const PDCurve& curve, const Poly& phi, const Poly& f, double tol,
                              int grid) {
  const int n = curve.n;
  Decomposition out;
  out.status = "no decomposition detected";
  const std::vector<cplx> ts = t_grid(phi, f, std::min(std::max(grid, 2), 60));
  const auto pts = sample_curve(phi, f, ts);
  const int T = static_cast<int>(pts.size());
  std::vector<ProjPoint> all;
  std::vector<int> owner;
  for (int k = 0; k < T; ++k)
    for (const auto& p : pts[k]) {
      all.push_back(p);
      owner.push_back(k);
    }
  out.samples = static_cast<int>(all.size());
  out.t_values = T;
  if (out.samples < 6) throw NumericalFailure("decompose_curve: sampling produced fewer than 6 points");

  const double inlier_tol = std::max(100.0 * tol, 1e-10);
  const int seed_t = std::min(T, (5 + n - 1) / n + (n <= 2 ? 1 : 0));
  std::vector<int> pool;
  for (int i = 0; i < out.samples && owner[i] < seed_t; ++i) pool.push_back(i);

  struct Candidate {
    int degree;
    VectorXc eq;
    int inliers;
  };
  std::vector<Candidate> cands;

  auto consider = [&](int degree, const VectorXc& eq) {
    for (const auto& c : cands)
      if (c.degree == degree && proportionality_residual(c.eq, eq) < 1e-6) return;
    const HomogPoly3 h = from_coeffs(degree, eq);
    std::vector<bool> hit(T, false);
    int misses_allowed = T - static_cast<int>(std::ceil(0.8 * T));
    int inl = 0, misses = 0;
    for (int k = 0; k < T; ++k) {
      bool any = false;
      for (const auto& p : pts[k])
        if (h.normalized_value(p) < inlier_tol) {
          any = true;
          ++inl;
        }
      if (!any && ++misses > misses_allowed) return;
    }
    cands.push_back({degree, eq, inl});
  };

  const int np = static_cast<int>(pool.size());
  for (int i = 0; i < np; ++i)
    for (int j = i + 1; j < np; ++j) {
      MatrixXc rows(2, 3);
      rows.row(0) = monomials(1, all[pool[i]]).transpose();
      rows.row(1) = monomials(1, all[pool[j]]).transpose();
      VectorXc eq;
      if (fit_null(rows, &eq, 1e-8)) consider(1, eq);
    }
  if (n >= 3) {
    std::vector<int> idx(5);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == 5) {
        MatrixXc rows(5, 6);
        for (int r = 0; r < 5; ++r) {
          const VectorXc m = monomials(2, all[pool[idx[r]]]);
          rows.row(r) = (m / m.norm()).transpose();
        }
        VectorXc eq;
        if (fit_null(rows, &eq, 1e-8) && !degenerate_conic(eq)) consider(2, eq);
        return;
      }
      for (int s = start; s <= np - (5 - depth); ++s) {
        idx[depth] = s;
        rec(s + 1, depth + 1);
      }
    };
    if (np >= 5) rec(0, 0);
  }

  // Greedy cover of all samples.
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.inliers > b.inliers; });
  std::vector<bool> covered(all.size(), false);
  std::vector<const Candidate*> chosen;
  int total_degree = 0;
  while (true) {
    const Candidate* best = nullptr;
    int gain_best = 0;
    for (const auto& c : cands) {
      const HomogPoly3 h = from_coeffs(c.degree, c.eq);
      int gain = 0;
      for (std::size_t i = 0; i < all.size(); ++i)
        if (!covered[i] && h.normalized_value(all[i]) < inlier_tol) ++gain;
      if (gain > gain_best) {
        gain_best = gain;
        best = &c;
      }
    }
    if (!best) break;
    const HomogPoly3 h = from_coeffs(best->degree, best->eq);
    for (std::size_t i = 0; i < all.size(); ++i)
      if (h.normalized_value(all[i]) < inlier_tol) covered[i] = true;
    chosen.push_back(best);
    total_degree += best->degree;
    if (total_degree >= n - 1) break;
  }
  const bool full = std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
  if (!full || total_degree != n - 1) return out;

  // Least-squares refit on the inliers of each chosen component.
  HomogPoly3 product(0);
  product.at(0, 0) = 1.0;
  out.fit_residual = 0.0;
  for (const Candidate* c : chosen) {
    const HomogPoly3 h0 = from_coeffs(c->degree, c->eq);
    std::vector<int> in;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (h0.normalized_value(all[i]) < inlier_tol) in.push_back(static_cast<int>(i));
    MatrixXc rows(in.size(), HomogPoly3::size_for(c->degree));
    for (std::size_t r = 0; r < in.size(); ++r) {
      const VectorXc m = monomials(c->degree, all[in[r]]);
      rows.row(r) = (m / m.norm()).transpose();
    }
    Eigen::JacobiSVD<MatrixXc> svd(rows, Eigen::ComputeFullV);
    VectorXc eq = svd.matrixV().col(rows.cols() - 1);
    // Fix the phase so the largest coefficient is real positive.
    Eigen::Index big;
    eq.cwiseAbs().maxCoeff(&big);
    eq *= std::abs(eq(big)) / eq(big);
    CurveComponent comp;
    comp.degree = c->degree;
    comp.eq = from_coeffs(c->degree, eq);
    comp.inliers = static_cast<int>(in.size());
    for (int i : in) comp.residual = std::max(comp.residual, comp.eq.normalized_value(all[i]));
    out.fit_residual = std::max(out.fit_residual, comp.residual);
    product = product * comp.eq;
    out.components.push_back(std::move(comp));
  }
  std::stable_sort(out.components.begin(), out.components.end(),
                   [](const CurveComponent& a, const CurveComponent& b) { return a.degree > b.degree; });
  out.product_residual = proportionality_residual(curve.tri.coeffs(), product.coeffs());
  out.status = "decomposed";
  return out;
}

bool transversality_check(const Poly& phi, const Poly& f, double tol) {
  const int n = phi.degree();
  if (poly_gcd(phi, f, tol).degree > 0) throw DegenerateError("transversality_check: phi and f are not coprime");
  // The member at t = infinity is f, with a root at infinity of multiplicity n - deg f.
  if (n - f.degree() >= 3) return false;
  if (f.degree() >= 3 && roots(f, tol).max_multiplicity() >= 3) return false;
  const Poly d = disc_in_t(phi, f);
  if (d.degree() < 1) return true;
  for (const Root& r : roots(d, tol).entries) {
    const Poly pt = (phi + f * r.value).trimmed(tol);
    if (n - pt.degree() >= 3) return false;
    if (pt.degree() >= 3 && roots(pt, tol).max_multiplicity() >= 3) return false;
  }
  return true;
}

int fregier_count(int n) {
  if (n < 2) throw InvalidInput("fregier_count: n must be at least 2");
  auto binom = [](int a, int b) {
    if (b < 0 || b > a) return 0;
    long long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return static_cast<int>(r);
  };
  const int k = (n + 1) / 2;
  int count = binom(k + 2, 2) - 2 - binom(k, 2);  // 2k - 1
  if (n % 2 == 1) count -= 1;                     // a point on the conic is fixed as well
  if (count != n - 1) throw NumericalFailure("fregier_count: binomial identity failed");
  return count;
}

}  // namespace isofocal
