#ifndef ISOFOCAL_ELLIPTIC_HPP
#define ISOFOCAL_ELLIPTIC_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "isofocal/poly.hpp"

namespace isofocal {

struct EllipticModulus {
  cplx k = 0.0;
  cplx K = 0.0;       ///< quarter period
  cplx Kprime = 0.0;  ///< K of the complementary modulus; infinite for k = 0
};

/// Arithmetic-geometric mean with the principal ("right") choice of square roots.
cplx agm(cplx a, cplx b);

/// Complete quarter periods. Throws InvalidInput for k^2 = 1.
EllipticModulus agm_K(cplx k);

struct JacobiTriple {
  cplx sn = 0.0, cn = 1.0, dn = 1.0;
};

/// sn, cn, dn for real modulus 0 <= |k| < 1. Real u goes through descending Landen
/// transformations; complex u through the addition formula with the complementary
/// modulus. Throws InvalidInput for non-real or |k| >= 1 moduli.
JacobiTriple jacobi(cplx u, cplx k);
cplx jacobi_sn(cplx u, cplx k);

/// Jacobi's transformation of odd order n for the torsion point
/// omega = (m K + m' i K') / n, in the squared-modulus normal form
///   y = f(x) / phi(x),  x = sn(u, k),  y = sn(u / N, lambda).
struct OddTransform {
  int n = 0, m = 0, m_prime = 0;
  cplx k = 0.0;
  EllipticModulus modulus;
  cplx omega = 0.0;
  VectorXc s;  ///< sn(4 r omega), r = 1 .. (n-1)/2
  Poly f;      ///< degree n, odd
  Poly phi;    ///< degree n - 1, even
  cplx N = 0.0;               ///< from f(1) = phi(1)
  cplx N_product = 0.0;       ///< (-1)^h prod sn^2(K - 4 r omega) / sn^2(4 r omega)
  cplx lambda = 0.0;          ///< k^n prod sn^4(K - 4 r omega)
  cplx lambda_by_value = 0.0; ///< phi(1/k) / f(1/k), since x = 1/k maps to y = 1/lambda
  cplx N_literal = 0.0;       ///< (-1)^h prod (1 - sn(K - 4 r omega) / sn^2(4 r omega))
  cplx lambda_literal = 0.0;  ///< prod sn^4(K - 4 r omega)
  Poly phi_literal;           ///< prod (1 - x^2 sn^2(4 r omega)), no k^2
};

OddTransform transform_odd(int n, int m, int m_prime, cplx k);

/// One (m, m') per class of torsion points generating the same cyclic subgroup.
std::vector<std::pair<int, int>> admissible_classes(int n);

/// phi = ((1+z)(1+kz)T^2 + (1-z)(1-kz)T'^2)/2, f with a minus, T = P + zQ, T' = P - zQ.
/// P and Q must be even.
std::pair<Poly, Poly> transform_even(const Poly& P, const Poly& Q, cplx k);

struct ArithTriple {
  std::uint64_t n = 1;
  std::uint64_t t = 1;            ///< primitive n-torsion points
  std::uint64_t sigma_prime = 1;
  std::uint64_t euler_phi = 1;
};

ArithTriple arith_functions(std::uint64_t n);

}  // namespace isofocal

#endif  // ISOFOCAL_ELLIPTIC_HPP
