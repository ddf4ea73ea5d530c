#include "isofocal/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace isofocal {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double rel_residual(const Poly& p, cplx z) {
  const double scale = p.abs_eval(std::abs(z));
  return scale == 0.0 ? 0.0 : std::abs(p(z)) / scale;
}

bool lex_less(cplx a, cplx b) {
  // Compare on a coarse grid first so that conjugate pairs with noisy real
  // parts still order by imaginary part.
  const double qa = std::round(a.real() * 1e9), qb = std::round(b.real() * 1e9);
  if (qa != qb) return qa < qb;
  return a.imag() < b.imag();
}

cplx newton_polish(const Poly& p, cplx z, int steps) {
  const Poly dp = p.derivative();
  double best = std::abs(p(z));
  for (int s = 0; s < steps && best > 0.0; ++s) {
    const cplx d = dp(z);
    if (d == cplx(0.0)) break;
    const cplx cand = z - p(z) / d;
    const double r = std::abs(p(cand));
    if (!(r < best)) break;
    z = cand;
    best = r;
  }
  return z;
}

// Verify that the cluster pts is a single root of multiplicity pts.size().
bool verify_cluster(const Poly& p, const std::vector<cplx>& pts, double tol, cplx* centre) {
  const int m = static_cast<int>(pts.size());
  cplx c(0.0);
  for (cplx z : pts) c += z;
  c /= double(m);
  const Poly q = p.derivative(m - 1);
  c = newton_polish(q, c, 30);
  for (int j = 0; j < m; ++j) {
    if (rel_residual(p.derivative(j), c) > tol) return false;
  }
  *centre = c;
  return true;
}

void cluster_into(const Poly& p, const std::vector<cplx>& pts, double radius, double tol,
                  std::vector<Root>& out) {
  const std::size_t n = pts.size();
  std::vector<int> label(n, -1);
  int groups = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = groups;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < n; ++b) {
        if (label[b] >= 0) continue;
        const double scale = std::max({1.0, std::abs(pts[a]), std::abs(pts[b])});
        if (std::abs(pts[a] - pts[b]) <= radius * scale) {
          label[b] = groups;
          stack.push_back(b);
        }
      }
    }
    ++groups;
  }
  for (int g = 0; g < groups; ++g) {
    std::vector<cplx> members;
    for (std::size_t i = 0; i < n; ++i)
      if (label[i] == g) members.push_back(pts[i]);
    if (members.size() == 1) {
      out.push_back({newton_polish(p, members[0], 3), 1});
      continue;
    }
    cplx c;
    if (verify_cluster(p, members, tol, &c)) {
      out.push_back({c, static_cast<int>(members.size())});
    } else if (radius > 1e-14) {
      cluster_into(p, members, radius / 16.0, tol, out);
    } else {
      for (cplx z : members) out.push_back({z, 1});
    }
  }
}

MatrixXc sylvester(const Poly& p, int dp, const Poly& q, int dq) {
  const int s = dp + dq;
  MatrixXc m = MatrixXc::Zero(s, s);
  for (int i = 0; i < dq; ++i)
    for (int k = 0; k <= dp; ++k) m(i, i + k) = p[dp - k];
  for (int j = 0; j < dp; ++j)
    for (int k = 0; k <= dq; ++k) m(dq + j, j + k) = q[dq - k];
  return m;
}

}  // namespace

int RootSet::total_multiplicity() const {
  int s = 0;
  for (const auto& r : entries) s += r.multiplicity;
  return s;
}

int RootSet::max_multiplicity() const {
  int s = 0;
  for (const auto& r : entries) s = std::max(s, r.multiplicity);
  return s;
}

VectorXc RootSet::expand() const {
  VectorXc v(total_multiplicity());
  Eigen::Index k = 0;
  for (const auto& r : entries)
    for (int j = 0; j < r.multiplicity; ++j) v(k++) = r.value;
  return v;
}

VectorXc raw_roots(const Poly& p, int max_iter, int* iterations) {
  if (p.is_zero()) throw InvalidInput("roots: zero polynomial");
  int zeros = 0;
  while (p[zeros] == cplx(0.0)) ++zeros;
  const Poly q(Poly::Coeffs(p.coeffs().tail(p.degree() + 1 - zeros)));
  const int n = q.degree();
  VectorXc z = VectorXc::Zero(p.degree());
  if (iterations) *iterations = 0;
  if (n == 0) return z;
  if (n == 1) {
    z(0) = -q[0] / q[1];
    return z;
  }

  const Poly dq = q.derivative();
  const double r0 = std::pow(std::abs(q[0] / q.leading()), 1.0 / n);
  VectorXc w(n);
  for (int k = 0; k < n; ++k) {
    const double ang = 2.0 * std::numbers::pi * k / n + 0.4;
    w(k) = std::polar(r0, ang);
  }
  std::vector<bool> done(n, false);
  int it = 0;
  for (; it < max_iter; ++it) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const cplx pv = q(w(i));
      if (std::abs(pv) <= 8.0 * n * kEps * q.abs_eval(std::abs(w(i)))) {
        done[i] = true;
        continue;
      }
      all = false;
      const cplx ratio = pv / dq(w(i));
      cplx s(0.0);
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (w(i) - w(j));
      const cplx step = ratio / (1.0 - ratio * s);
      w(i) -= step;
      if (std::abs(step) <= kEps * std::abs(w(i))) done[i] = true;
    }
    if (all) break;
  }
  if (iterations) *iterations = it;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, rel_residual(q, w(i)));
  if (worst > 1e-10) {
    std::ostringstream msg;
    msg << "roots: no convergence after " << it << " iterations";
    throw NumericalFailure(msg.str(), worst);
  }
  z.tail(n) = w;
  return z;
}

RootSet roots(const Poly& p, double tol) {
  if (p.is_zero()) throw InvalidInput("roots: zero polynomial");
  if (!(tol > 0.0)) throw InvalidInput("roots: tolerance must be positive");
  RootSet rs;
  rs.tolerance = tol;
  const VectorXc raw = raw_roots(p, 500, &rs.iterations);
  int zeros = 0;
  while (p[zeros] == cplx(0.0)) ++zeros;
  if (zeros > 0) rs.entries.push_back({cplx(0.0), zeros});
  std::vector<cplx> other(raw.data() + zeros, raw.data() + raw.size());
  cluster_into(p, other, std::pow(tol, 0.25), tol, rs.entries);
  std::sort(rs.entries.begin(), rs.entries.end(),
            [](const Root& a, const Root& b) { return lex_less(a.value, b.value); });

  const Poly rebuilt = Poly::from_roots(rs.expand()) * p.leading();
  rs.residual = (rebuilt.padded(p.degree() + 1) - p.coeffs()).norm() / p.norm();
  return rs;
}

GcdResult poly_gcd(const Poly& p_in, const Poly& q_in, double tol) {
  if (p_in.is_zero() && q_in.is_zero()) throw InvalidInput("poly_gcd: both inputs are zero");
  GcdResult res;
  if (q_in.is_zero() || p_in.is_zero()) {
    res.gcd = (q_in.is_zero() ? p_in : q_in).monic();
    res.degree = res.gcd.degree();
    res.margin = std::numeric_limits<double>::infinity();
    return res;
  }
  const Poly p = p_in / cplx(p_in.norm());
  const Poly q = q_in / cplx(q_in.norm());
  const int m = p.degree(), n = q.degree();
  res.gcd = Poly::constant(1.0);
  res.margin = std::numeric_limits<double>::infinity();
  if (m == 0 || n == 0) return res;

  const MatrixXc s = sylvester(p, m, q, n);
  Eigen::JacobiSVD<MatrixXc> svd(s);
  const Eigen::VectorXd sv = svd.singularValues();
  const double thr = tol * sv(0);
  int d = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) < thr) ++d;
    const double dist = std::abs(std::log10(std::max(sv(i), 1e-300) / thr));
    res.margin = std::min(res.margin, dist);
  }
  if (res.margin < 1.0) {
    std::ostringstream msg;
    msg << "poly_gcd: rank decision within a factor 10 of the threshold (margin " << res.margin
        << " decades)";
    throw AmbiguityError(msg.str(), res.margin);
  }
  res.degree = d;
  if (d == 0) return res;

  // Cofactors from the null vector of [C(p, n-d+1), -C(q, m-d+1)].
  MatrixXc a(m + n - d + 1, m + n - 2 * d + 2);
  a << convolution_matrix(p, n - d + 1), -convolution_matrix(q, m - d + 1);
  Eigen::JacobiSVD<MatrixXc> nsvd(a, Eigen::ComputeFullV);
  const VectorXc nv = nsvd.matrixV().col(a.cols() - 1);
  VectorXc v = nv.head(n - d + 1), u = nv.tail(m - d + 1);

  MatrixXc b(m + n + 2, d + 1);
  b << convolution_matrix(Poly(u), d + 1), convolution_matrix(Poly(v), d + 1);
  VectorXc rhs(m + n + 2);
  rhs << p.padded(m + 1), q.padded(n + 1);
  VectorXc g = b.colPivHouseholderQr().solve(rhs);

  auto residual_of = [&](const VectorXc& gg, const VectorXc& uu, const VectorXc& vv) {
    VectorXc r(m + n + 2);
    r.head(m + 1) = convolution_matrix(Poly(uu), d + 1) * gg - p.padded(m + 1);
    r.tail(n + 1) = convolution_matrix(Poly(vv), d + 1) * gg - q.padded(n + 1);
    return r;
  };

  // Gauss-Newton on (g, u, v) with the linear normalisation r^H g = 1.
  const VectorXc r = g / g.squaredNorm();
  double best = residual_of(g, u, v).norm();
  for (int it = 0; it < 20; ++it) {
    const int ng = d + 1, nu = m - d + 1, nvv = n - d + 1;
    MatrixXc j = MatrixXc::Zero(m + n + 3, ng + nu + nvv);
    const Poly gp(g);
    j.block(0, 0, m + 1, ng) = convolution_matrix(Poly(u), ng);
    j.block(0, ng, m + 1, nu) = convolution_matrix(gp, nu).topRows(m + 1);
    j.block(m + 1, 0, n + 1, ng) = convolution_matrix(Poly(v), ng);
    j.block(m + 1, ng + nu, n + 1, nvv) = convolution_matrix(gp, nvv).topRows(n + 1);
    j.block(m + n + 2, 0, 1, ng) = r.adjoint();
    VectorXc fval(m + n + 3);
    fval.head(m + n + 2) = residual_of(g, u, v);
    fval(m + n + 2) = r.dot(g) - 1.0;
    const VectorXc dx = j.colPivHouseholderQr().solve(-fval);
    const VectorXc g2 = g + dx.head(ng), u2 = u + dx.segment(ng, nu), v2 = v + dx.tail(nvv);
    const double cand = residual_of(g2, u2, v2).norm();
    if (!(cand < best)) break;
    const bool small = best - cand <= 1e-3 * best;
    g = g2;
    u = u2;
    v = v2;
    best = cand;
    if (small) break;
  }
  res.gcd = Poly(g).monic();
  res.residual = best;
  return res;
}

cplx resultant(const Poly& p, const Poly& q, int deg_p, int deg_q) {
  if (deg_p == -2) deg_p = p.degree();
  if (deg_q == -2) deg_q = q.degree();
  if (deg_p < 0 || deg_q < 0) throw InvalidInput("resultant: zero polynomial");
  if (deg_p + deg_q == 0) return 1.0;
  return sylvester(p, deg_p, q, deg_q).partialPivLu().determinant();
}

cplx discriminant(const Poly& p) {
  const int n = p.degree();
  if (n < 1) throw InvalidInput("discriminant: degree must be at least 1");
  if (n == 1) return 1.0;
  const double sign = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return sign * resultant(p, p.derivative(), n, n - 1) / p.leading();
}

Poly disc_in_t(const Poly& phi, const Poly& f) {
  const int n = phi.degree();
  if (n < 1) throw InvalidInput("disc_in_t: deg phi must be at least 1");
  if (f.degree() > n) throw InvalidInput("disc_in_t: deg f exceeds deg phi");
  if (n == 1) return Poly::constant(1.0);
  const double sign = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  double radius = 1.0;
  if (f[n] != cplx(0.0)) {
    const double t0 = std::abs(phi[n] / f[n]);
    if (std::abs(t0 - radius) < 0.25) radius = t0 > 1.0 ? t0 / 1.6 : t0 * 1.6 + 0.5;
  }
  const int samples = 2 * n;
  VectorXc vals(samples);
  for (int k = 0; k < samples; ++k) {
    const cplx t = std::polar(radius, 2.0 * std::numbers::pi * k / samples);
    const Poly pt = phi + f * t;
    const cplx lead = phi[n] + t * f[n];
    vals(k) = sign * resultant(pt, pt.derivative(), n, n - 1) / lead;
  }
  Poly::Coeffs c(2 * n - 1);
  for (int j = 0; j < 2 * n - 1; ++j) {
    cplx acc(0.0);
    for (int k = 0; k < samples; ++k)
      acc += vals(k) * std::polar(1.0, -2.0 * std::numbers::pi * j * k / samples);
    c(j) = acc / double(samples) / std::pow(radius, j);
  }
  const double big = c.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < c.size(); ++j)
    if (std::abs(c(j)) <= 1e-13 * big) c(j) = 0.0;
  return Poly(std::move(c));
}

VectorXc elementary_symmetric(const VectorXc& values) {
  const Eigen::Index n = values.size();
  VectorXc s = VectorXc::Zero(n + 1);
  s(0) = 1.0;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = k + 1; i > 0; --i) s(i) += values(k) * s(i - 1);
  return s;
}

SymTable sym_table(const VectorXc& values) {
  SymTable t;
  const Eigen::Index n = values.size();
  t.values = values;
  t.full = elementary_symmetric(values);
  t.omitted = MatrixXc::Zero(n + 1, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    VectorXc rest(n - 1);
    for (Eigen::Index i = 0, j = 0; i < n; ++i)
      if (i != k) rest(j++) = values(i);
    t.omitted.col(k).head(n) = elementary_symmetric(rest);
  }
  return t;
}

cplx SymTable::bracket(const VectorXc& m, int i) const {
  if (m.size() != values.size()) throw InvalidInput("bracket: size mismatch");
  return (omitted.row(i).transpose().array() * m.array()).sum();
}

}  // namespace isofocal
