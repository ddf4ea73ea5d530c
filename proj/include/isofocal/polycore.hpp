#ifndef ISOFOCAL_POLYCORE_HPP
#define ISOFOCAL_POLYCORE_HPP

#include <vector>

#include "isofocal/poly.hpp"

namespace isofocal {

struct Root {
  cplx value;
  int multiplicity = 1;
};

/// Roots with multiplicities. Entries are sorted by (Re, Im).
struct RootSet {
  std::vector<Root> entries;
  double tolerance = kDefaultTol;
  /// Relative coefficient error of lc * prod (z - r)^m against the input.
  double residual = 0.0;
  int iterations = 0;

  int total_multiplicity() const;
  int max_multiplicity() const;
  /// Roots repeated according to multiplicity.
  VectorXc expand() const;
};

/// Simultaneous (Aberth-Ehrlich) approximations of all roots, unclustered.
VectorXc raw_roots(const Poly& p, int max_iter = 500, int* iterations = nullptr);

/// Roots with multiplicities decided at tolerance tol.
///
/// A cluster of approximations is reported as one root of multiplicity m when
/// a point c exists with |p^(j)(c)| <= tol * (sum |coef| |c|^i of p^(j)) for j < m.
RootSet roots(const Poly& p, double tol = kDefaultTol);

struct GcdResult {
  Poly gcd;  ///< monic
  int degree = 0;
  double residual = 0.0;  ///< relative error of gcd * cofactors vs inputs
  /// log10 distance of the nearest singular value to the rank threshold.
  double margin = 0.0;
};

GcdResult poly_gcd(const Poly& p, const Poly& q, double tol = kDefaultTol);

/// Discriminant of phi + t f with respect to z, as a polynomial in t.
Poly disc_in_t(const Poly& phi, const Poly& f);

/// Discriminant of a single polynomial (b^2 - 4ac convention for quadratics).
cplx discriminant(const Poly& p);

/// Resultant via the Sylvester determinant with formal degrees.
cplx resultant(const Poly& p, const Poly& q, int deg_p = -2, int deg_q = -2);

/// Elementary symmetric functions of a_1..a_n and of the n-1 rest quantities.
struct SymTable {
  VectorXc values;
  VectorXc full;     ///< sigma_0..sigma_n
  MatrixXc omitted;  ///< (n+1) x n, omitted(i, k) = sigma_i^k (a_k left out)

  int n() const { return static_cast<int>(values.size()); }
  /// The vector (sigma_i^1, ..., sigma_i^n).
  VectorXc vec(int i) const { return omitted.row(i).transpose(); }
  /// <m, sigma_i> = sum_k m_k sigma_i^k.
  cplx bracket(const VectorXc& m, int i) const;
};

SymTable sym_table(const VectorXc& values);

/// Coefficients sigma_0..sigma_n of prod (1 + a_k x).
VectorXc elementary_symmetric(const VectorXc& values);

}  // namespace isofocal

#endif  // ISOFOCAL_POLYCORE_HPP
