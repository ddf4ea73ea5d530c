#ifndef ISOFOCAL_FLASCHKA_HPP
#define ISOFOCAL_FLASCHKA_HPP

#include <utility>

#include "isofocal/poly.hpp"

namespace isofocal {

/// Tridiagonal data of the continued fraction
///   (f / scale) / phi = 1 / (z - b_n - a_{n-1}^2 / (z - b_{n-1} - ... - a_1^2 / (z - b_1))).
struct FlaschkaCoords {
  VectorXc a_sq;  ///< a_1^2 .. a_{n-1}^2
  VectorXc b;     ///< b_1 .. b_n
  cplx scale = 1.0;  ///< total mass B_n

  int n() const { return static_cast<int>(b.size()); }
};

/// Continued-fraction expansion of f / phi by descending Euclidean division.
/// phi is made monic first (f is divided by the same factor).
FlaschkaCoords to_flaschka(const Poly& f, const Poly& phi, double split_tol = 1e-12);

/// delta_0 = 1, delta_k = (z - b_k) delta_{k-1} - a_{k-1}^2 delta_{k-2}.
std::vector<Poly> delta_chain(const FlaschkaCoords& c);

/// (scale * delta_{n-1}, delta_n).
std::pair<Poly, Poly> from_flaschka(const FlaschkaCoords& c);

/// The isofocal flow: b_n <- b_n - scale * t.
FlaschkaCoords evolve_flaschka(const FlaschkaCoords& c, cplx t);

/// Symmetric tridiagonal L_k with a_i = principal sqrt(a_i^2).
MatrixXc lax_matrix(const FlaschkaCoords& c, int k = -1);

}  // namespace isofocal

#endif  // ISOFOCAL_FLASCHKA_HPP
