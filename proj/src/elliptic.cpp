#include "isofocal/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

namespace isofocal {

namespace {

double real_modulus(cplx k) {
  if (std::abs(k.imag()) > 1e-14 * std::max(1.0, std::abs(k)))
    throw InvalidInput("jacobi: complex modulus not supported");
  const double kr = std::abs(k.real());
  if (kr >= 1.0) throw InvalidInput("jacobi: modulus must satisfy |k| < 1");
  return kr;
}

// Descending Landen / AGM scheme for real argument.
void jacobi_real(double u, double k, double& sn, double& cn, double& dn) {
  const double m = k * k;
  if (m == 0.0) {
    sn = std::sin(u);
    cn = std::cos(u);
    dn = 1.0;
    return;
  }
  double a[32], c[32];
  a[0] = 1.0;
  c[0] = k;
  double b = std::sqrt(1.0 - m);
  int last = 0;
  while (last < 30 && std::abs(c[last]) > 1e-16 * a[last]) {
    a[last + 1] = 0.5 * (a[last] + b);
    c[last + 1] = 0.5 * (a[last] - b);
    b = std::sqrt(a[last] * b);
    ++last;
  }
  double phi = std::ldexp(a[last] * u, last);
  for (int j = last; j >= 1; --j) phi = 0.5 * (phi + std::asin(c[j] * std::sin(phi) / a[j]));
  sn = std::sin(phi);
  cn = std::cos(phi);
  dn = std::sqrt(1.0 - m * sn * sn);
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

cplx agm(cplx a, cplx b) {
  for (int it = 0; it < 100; ++it) {
    if (std::abs(a - b) <= 4e-16 * std::abs(a)) break;
    const cplx an = 0.5 * (a + b);
    cplx g = std::sqrt(a * b);
    if (std::abs(an - g) > std::abs(an + g)) g = -g;
    a = an;
    b = g;
  }
  return a;
}

EllipticModulus agm_K(cplx k) {
  if (std::abs(k * k - 1.0) < 1e-15) throw InvalidInput("agm_K: k^2 = 1");
  EllipticModulus e;
  e.k = k;
  const double half_pi = std::numbers::pi / 2.0;
  e.K = half_pi / agm(1.0, std::sqrt(1.0 - k * k));
  e.Kprime = k == cplx(0.0) ? cplx(std::numeric_limits<double>::infinity()) : half_pi / agm(1.0, k);
  return e;
}

JacobiTriple jacobi(cplx u, cplx k) {
  const double kr = real_modulus(k);
  double s, c, d;
  jacobi_real(u.real(), kr, s, c, d);
  if (u.imag() == 0.0) return {s, c, d};
  const double kc = std::sqrt(1.0 - kr * kr);
  double s1, c1, d1;
  jacobi_real(u.imag(), kc, s1, c1, d1);
  const double den = c1 * c1 + kr * kr * s * s * s1 * s1;
  return {cplx(s * d1, c * d * s1 * c1) / den, cplx(c * c1, -s * d * s1 * d1) / den,
          cplx(d * c1 * d1, -kr * kr * s * c * s1) / den};
}

cplx jacobi_sn(cplx u, cplx k) { return jacobi(u, k).sn; }

OddTransform transform_odd(int n, int m, int m_prime, cplx k) {
  if (n < 3 || n % 2 == 0) throw InvalidInput("transform_odd: n must be odd and at least 3");
  if (std::gcd(std::gcd(m, m_prime), n) != 1)
    throw InvalidInput("transform_odd: m, m' share a divisor with n");
  real_modulus(k);
  OddTransform t;
  t.n = n;
  t.m = m;
  t.m_prime = m_prime;
  t.k = k;
  t.modulus = agm_K(k);
  if (m_prime != 0 && !std::isfinite(std::abs(t.modulus.Kprime)))
    throw DegenerateError("transform_odd: K' is infinite for k = 0");
  t.omega = (static_cast<double>(m) * t.modulus.K +
             (m_prime == 0 ? cplx(0.0) : cplx(0.0, 1.0) * static_cast<double>(m_prime) * t.modulus.Kprime)) /
            static_cast<double>(n);

  const int h = (n - 1) / 2;
  t.s.resize(h);
  Poly p{0.0, 1.0}, phi = Poly::constant(1.0), phi_lit = Poly::constant(1.0);
  cplx nprod = h % 2 == 0 ? 1.0 : -1.0, nlit = nprod, lam = std::pow(k, n), lam_lit = 1.0;
  for (int r = 1; r <= h; ++r) {
    const cplx s = jacobi_sn(4.0 * r * t.omega, k);
    const cplx c = jacobi_sn(t.modulus.K - 4.0 * r * t.omega, k);
    if (!std::isfinite(std::abs(s)) || std::abs(s) < 1e-12 || std::abs(s) > 1e12)
      throw DegenerateError("transform_odd: sn(4 r omega) is zero or a pole", std::abs(s));
    t.s(r - 1) = s;
    p = p * Poly{1.0, 0.0, -1.0 / (s * s)};
    phi = phi * Poly{1.0, 0.0, -k * k * s * s};
    phi_lit = phi_lit * Poly{1.0, 0.0, -s * s};
    nprod *= c * c / (s * s);
    nlit *= 1.0 - c / (s * s);
    lam *= std::pow(c, 4);
    lam_lit *= std::pow(c, 4);
  }
  t.N = p(1.0) / phi(1.0);
  t.f = p / t.N;
  t.phi = phi;
  t.phi_literal = phi_lit;
  t.N_product = nprod;
  t.N_literal = nlit;
  t.lambda = lam;
  t.lambda_literal = lam_lit;
  if (k != cplx(0.0)) t.lambda_by_value = phi(1.0 / k) / t.f(1.0 / k);
  return t;
}

std::vector<std::pair<int, int>> admissible_classes(int n) {
  if (n < 1) throw InvalidInput("admissible_classes: n must be positive");
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> out;
  for (int m = 0; m < n; ++m)
    for (int mp = 0; mp < n; ++mp) {
      if (std::gcd(std::gcd(m, mp), n) != 1) continue;
      std::pair<int, int> key{n, n};
      for (int j = 1; j <= std::max(1, n - 1); ++j)
        if (std::gcd(j, n) == 1) key = std::min(key, {(j * m) % n, (j * mp) % n});
      if (seen.insert(key).second) out.push_back(key);
    }
  return out;
}

std::pair<Poly, Poly> transform_even(const Poly& P, const Poly& Q, cplx k) {
  for (int i = 1; i <= P.degree(); i += 2)
    if (P[i] != cplx(0.0)) throw InvalidInput("transform_even: P must be even");
  for (int i = 1; i <= Q.degree(); i += 2)
    if (Q[i] != cplx(0.0)) throw InvalidInput("transform_even: Q must be even");
  const Poly z{0.0, 1.0};
  const Poly T = P + z * Q, Tp = P - z * Q;
  const Poly a = Poly{1.0, 1.0} * Poly{1.0, k} * T * T;
  const Poly b = Poly{1.0, -1.0} * Poly{1.0, -k} * Tp * Tp;
  return {(a + b) / cplx(2.0), (a - b) / cplx(2.0)};
}

ArithTriple arith_functions(std::uint64_t n) {
  if (n < 1) throw InvalidInput("arith_functions: n must be positive");
  ArithTriple a;
  a.n = n;
  std::uint64_t rest = n;
  for (std::uint64_t p = 2; p * p <= rest || rest > 1; ++p) {
    if (p * p > rest) p = rest;
    if (rest % p) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    a.t *= (p * p - 1) * ipow(p, 2 * (e - 1));
    a.euler_phi *= (p - 1) * ipow(p, e - 1);
    a.sigma_prime *= p == 2 ? ipow(2, e + 1) - 1 : (p + 1) * ipow(p, e - 1);
  }
  return a;
}

}  // namespace isofocal
