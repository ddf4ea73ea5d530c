#include "isofocal/marden.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace isofocal {

namespace {

using cld = std::complex<long double>;
using MatrixXld = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXld = Eigen::Matrix<cld, Eigen::Dynamic, 1>;

}  // namespace

void check_distinct(const VectorXc& a, double sep) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = i + 1; j < a.size(); ++j) {
      const double scale = std::max({1.0, std::abs(a(i)), std::abs(a(j))});
      if (std::abs(a(i) - a(j)) <= sep * scale) {
        std::ostringstream msg;
        msg << "positions " << i << " and " << j << " coincide";
        throw CollisionError(msg.str(), std::abs(a(i) - a(j)));
      }
    }
}

VectorXc brackets(const VectorXc& positions, const VectorXc& masses) {
  const int n = static_cast<int>(positions.size());
  const SymTable s = sym_table(positions);
  VectorXc b(n);
  for (int i = 1; i <= n; ++i) b(i - 1) = s.bracket(masses, n - i);
  return b;
}

MardenPencil build_pencil(const MassedConfig& c) {
  const int n = c.n();
  if (n < 1) throw InvalidInput("build_pencil: empty configuration");
  if (c.masses.size() != n) throw InvalidInput("build_pencil: positions and masses differ in length");
  for (Eigen::Index i = 0; i < n; ++i)
    if (c.masses(i) == cplx(0.0)) throw InvalidInput("build_pencil: zero mass");
  try {
    check_distinct(c.positions);
  } catch (const CollisionError& e) {
    throw InvalidInput(std::string("build_pencil: ") + e.what());
  }
  MardenPencil p;
  p.phi = Poly::from_roots(c.positions);
  p.B = brackets(c.positions, c.masses);
  Poly::Coeffs fc(n);
  for (int i = 1; i <= n; ++i) fc(i - 1) = ((n - i) % 2 == 0 ? 1.0 : -1.0) * p.B(i - 1);
  p.f = Poly(std::move(fc));
  return p;
}

MatrixXc sigma_matrix(const VectorXc& positions) {
  const SymTable s = sym_table(positions);
  return s.omitted.topRows(positions.size());
}

VectorXc recover_masses(const VectorXc& positions, const VectorXc& B) {
  const Eigen::Index n = positions.size();
  if (B.size() != n) throw InvalidInput("recover_masses: size mismatch");
  check_distinct(positions);
  const MatrixXc a = sigma_matrix(positions);
  const VectorXc rhs = B.reverse();
  const MatrixXld al = a.cast<cld>();
  const VectorXld rl = rhs.cast<cld>();
  Eigen::PartialPivLU<MatrixXld> lu(al);
  VectorXld m = lu.solve(rl);
  m += lu.solve(VectorXld(rl - al * m));
  return m.cast<cplx>();
}

VectorXc masses_by_residue(const VectorXc& positions, const Poly& f, const Poly& phi) {
  const Poly d = phi.derivative();
  VectorXc m(positions.size());
  for (Eigen::Index i = 0; i < positions.size(); ++i) {
    const cplx dv = d(positions(i));
    if (dv == cplx(0.0)) throw CollisionError("masses_by_residue: multiple root of phi");
    m(i) = f(positions(i)) / dv;
  }
  return m;
}

FocalData foci_and_tangency(const MassedConfig& config, double tol) {
  const MardenPencil p = build_pencil(config);
  FocalData out;
  if (p.f.degree() >= 1) {
    out.foci = roots(p.f, tol);
  } else {
    out.foci.tolerance = tol;
    out.note = "f is constant: no finite foci (circle case for n = 3)";
  }
  const int n = config.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Contact c{i, j, cplx(0.0), true};
      const cplx mi = config.masses(i), mj = config.masses(j);
      if (mi + mj == cplx(0.0)) {
        c.finite = false;
      } else {
        c.point = config.positions(i) + mi / (mi + mj) * (config.positions(j) - config.positions(i));
      }
      out.contacts.push_back(c);
    }
  return out;
}

SteinerConic steiner_oracle(const std::array<cplx, 3>& t) {
  const cplx g = (t[0] + t[1] + t[2]) / 3.0;
  const double area2 = std::imag(std::conj(t[1] - t[0]) * (t[2] - t[0]));
  const double size = std::max({std::abs(t[1] - t[0]), std::abs(t[2] - t[0]), std::abs(t[2] - t[1])});
  if (std::abs(area2) <= 1e-12 * size * size) throw InvalidInput("steiner_oracle: collinear points");

  // Real-linear L with L e_k = t_k - g for e_k the vertices of the unit equilateral
  // triangle; the inscribed circle of radius 1/2 maps onto the Steiner inellipse.
  Eigen::Matrix2d e, v;
  for (int k = 0; k < 2; ++k) {
    const cplx ek = std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0);
    e.col(k) << ek.real(), ek.imag();
    v.col(k) << (t[k] - g).real(), (t[k] - g).imag();
  }
  const Eigen::Matrix2d l = v * e.inverse();
  const Eigen::Matrix2d li = l.inverse();
  const Eigen::Matrix2d m = li.transpose() * li;  // (p-g)^T m (p-g) = 1/4
  const double gx = g.real(), gy = g.imag();
  SteinerConic out;
  out.centre = g;
  out.coeffs = {m(0, 0),
                2.0 * m(0, 1),
                m(1, 1),
                -2.0 * (m(0, 0) * gx + m(0, 1) * gy),
                -2.0 * (m(0, 1) * gx + m(1, 1) * gy),
                m(0, 0) * gx * gx + 2.0 * m(0, 1) * gx * gy + m(1, 1) * gy * gy - 0.25};
  double big = 0.0;
  for (double c : out.coeffs) big = std::max(big, std::abs(c));
  for (double& c : out.coeffs) c /= big;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(l * l.transpose() / 4.0);
  const double a2 = es.eigenvalues()(1), b2 = es.eigenvalues()(0);
  const Eigen::Vector2d u = es.eigenvectors().col(1);
  const double c = std::sqrt(std::max(0.0, a2 - b2));
  out.focus1 = g + c * cplx(u(0), u(1));
  out.focus2 = g - c * cplx(u(0), u(1));
  return out;
}

double conic_eval(const std::array<double, 6>& c, cplx p) {
  const double x = p.real(), y = p.imag();
  return c[0] * x * x + c[1] * x * y + c[2] * y * y + c[3] * x + c[4] * y + c[5];
}

cplx conic_gradient(const std::array<double, 6>& c, cplx p) {
  const double x = p.real(), y = p.imag();
  return {2.0 * c[0] * x + c[1] * y + c[3], c[1] * x + 2.0 * c[2] * y + c[4]};
}

cplx marden_curve_eval(const MassedConfig& config, cplx lambda, cplx mu) {
  const int n = config.n();
  VectorXc l(n);
  for (int k = 0; k < n; ++k)
    l(k) = lambda * config.positions(k).real() + mu * config.positions(k).imag() - 1.0;
  cplx total(0.0);
  for (int j = 0; j < n; ++j) {
    cplx prod = config.masses(j);
    for (int k = 0; k < n; ++k)
      if (k != j) prod *= l(k);
    total += prod;
  }
  return total;
}

}  // namespace isofocal
