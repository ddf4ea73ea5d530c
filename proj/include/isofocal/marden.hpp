#ifndef ISOFOCAL_MARDEN_HPP
#define ISOFOCAL_MARDEN_HPP

#include <array>
#include <string>
#include <vector>

#include "isofocal/polycore.hpp"

namespace isofocal {

/// Point masses m_i at distinct positions alpha_i.
struct MassedConfig {
  VectorXc positions;
  VectorXc masses;

  int n() const { return static_cast<int>(positions.size()); }
};

/// phi = prod (z - alpha_i), f = sum m_i prod_{j != i} (z - alpha_j),
/// B(i-1) = B_i = <m, sigma_{n-i}>, so that coef of z^(i-1) in f is (-1)^(n-i) B_i.
struct MardenPencil {
  Poly phi;
  Poly f;
  VectorXc B;
};

/// Throws CollisionError when two positions agree to relative precision `sep`.
void check_distinct(const VectorXc& positions, double sep = 1e-12);

MardenPencil build_pencil(const MassedConfig& config);

/// Bracket vector B_1..B_n of the masses at the given positions.
VectorXc brackets(const VectorXc& positions, const VectorXc& masses);

/// The matrix a(alpha) with row r equal to sigma_r (r = 0..n-1); a m = (B_n, ..., B_1).
MatrixXc sigma_matrix(const VectorXc& positions);

/// Solves a(alpha) m = (B_n, ..., B_1).
VectorXc recover_masses(const VectorXc& positions, const VectorXc& B);

/// m_i = f(alpha_i) / phi'(alpha_i), the residues of f / phi.
VectorXc masses_by_residue(const VectorXc& positions, const Poly& f, const Poly& phi);

struct Contact {
  int i = 0;
  int j = 0;
  cplx point;
  bool finite = true;  ///< false when m_i + m_j = 0
};

struct FocalData {
  RootSet foci;
  std::vector<Contact> contacts;
  std::string note;
};

/// Foci (zeros of f) and the contact point on each segment [alpha_i, alpha_j],
/// alpha_i + m_i / (m_i + m_j) (alpha_j - alpha_i).
FocalData foci_and_tangency(const MassedConfig& config, double tol = kDefaultTol);

/// Inscribed conic of a triangle touching the sides at their midpoints.
struct SteinerConic {
  /// A x^2 + B xy + C y^2 + D x + E y + F = 0
  std::array<double, 6> coeffs;
  cplx focus1;
  cplx focus2;
  cplx centre;
};

SteinerConic steiner_oracle(const std::array<cplx, 3>& triangle);

double conic_eval(const std::array<double, 6>& c, cplx p);
/// Gradient of the conic form at p as the complex number dx + i dy.
cplx conic_gradient(const std::array<double, 6>& c, cplx p);

/// Line-coordinate numerator of the Marden curve at the line lambda x + mu y = 1.
cplx marden_curve_eval(const MassedConfig& config, cplx lambda, cplx mu);

}  // namespace isofocal

#endif  // ISOFOCAL_MARDEN_HPP
