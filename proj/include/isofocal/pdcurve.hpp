#ifndef ISOFOCAL_PDCURVE_HPP
#define ISOFOCAL_PDCURVE_HPP

#include <string>
#include <vector>

#include "isofocal/polycore.hpp"

namespace isofocal {

/// Homogeneous point (z0 : z1 : z2); (z0, z1, z2) are the coefficients of the
/// quadratic z2 s^2 + z1 s + z0.
using ProjPoint = Vector3c;

/// Darboux parameters as homogeneous pairs [s : w]; w = 0 is the parameter infinity.
struct DarbouxPair {
  cplx rho = 0.0, rho_w = 1.0;
  cplx rho1 = 0.0, rho1_w = 1.0;

  static DarbouxPair finite(cplx a, cplx b) { return {a, 1.0, b, 1.0}; }
  bool rho_finite() const { return rho_w != cplx(0.0); }
  bool rho1_finite() const { return rho1_w != cplx(0.0); }
};

/// Roots of z2 s^2 + z1 s + z0.
DarbouxPair to_darboux(const ProjPoint& p);

/// (rho rho1 : -(rho w1 + rho1 w) : w w1).
ProjPoint from_darboux(const DarbouxPair& d);
inline ProjPoint from_darboux(cplx rho, cplx rho1) {
  return from_darboux(DarbouxPair::finite(rho, rho1));
}

/// Coefficients (l0, l1, l2) of the line l . z = 0 tangent to z1^2 = 4 z0 z2
/// made of the points with alpha among their Darboux parameters.
Vector3c tangent_line(cplx alpha);
/// Tangent line for a homogeneous parameter [s : w].
Vector3c tangent_line(cplx s, cplx w);

/// True when p and q agree up to a nonzero scalar (relative tolerance tol).
bool projectively_equal(const ProjPoint& p, const ProjPoint& q, double tol = 1e-10);

/// Dense homogeneous polynomial in (z0, z1, z2) of a fixed degree.
class HomogPoly3 {
 public:
  HomogPoly3() = default;
  explicit HomogPoly3(int degree);

  int degree() const { return degree_; }
  /// Coefficient of z0^i z1^j z2^(d-i-j).
  cplx& at(int i, int j) { return c_(index(i, j)); }
  cplx at(int i, int j) const { return c_(index(i, j)); }
  const VectorXc& coeffs() const { return c_; }
  VectorXc& coeffs() { return c_; }

  cplx operator()(const Vector3c& z) const;
  /// Value divided by |coeffs| |z|^d; scale-free incidence measure.
  double normalized_value(const Vector3c& z) const;

  friend HomogPoly3 operator*(const HomogPoly3& a, const HomogPoly3& b);

  static int size_for(int degree) { return (degree + 1) * (degree + 2) / 2; }

 private:
  int index(int i, int j) const;

  int degree_ = 0;
  VectorXc c_;
};

/// Poncelet-Darboux curve: S(rho, rho1) = sum sym(a, b) rho^a rho1^b and its
/// trivariate form of degree n - 1.
struct PDCurve {
  int n = 0;
  MatrixXc sym;  ///< n x n, sym(a, b) = sym(b, a)
  HomogPoly3 tri;

  cplx eval_sym(cplx rho, cplx rho1) const;
};

PDCurve pd_curve(const Poly& phi, const Poly& f, double tol = kDefaultTol);

/// det(A K(z)) for A an annihilator of the pencil and K(z) the banded matrix whose
/// columns are the coefficient vectors of s^j (z2 s^2 + z1 s + z0).
HomogPoly3 pd_matrix(const Poly& phi, const Poly& f);

/// The banded (n+1) x (n-1) matrix K(z).
MatrixXc k_matrix(int n, const Vector3c& z);

/// Orthonormal (n-1) x (n+1) annihilator of span{phi, f}.
MatrixXc annihilator(const Poly& phi, const Poly& f);

struct CurveComponent {
  int degree = 0;  ///< 1 (line) or 2 (conic)
  HomogPoly3 eq;
  int inliers = 0;
  double residual = 0.0;  ///< max normalized value over its inliers after refit
};

struct Decomposition {
  std::string status;  ///< "decomposed" or "no decomposition detected"
  std::vector<CurveComponent> components;
  int samples = 0;
  int t_values = 0;
  double fit_residual = 0.0;      ///< max over components
  double product_residual = 1.0;  ///< proportionality residual of the product vs curve.tri
  bool decomposed() const { return status == "decomposed"; }
};

/// Sample points on the curve: all pairwise intersections of the tangents at the
/// roots of phi + t f for each t in ts. Returned per t.
std::vector<std::vector<ProjPoint>> sample_curve(const Poly& phi, const Poly& f,
                                                 const std::vector<cplx>& ts);

/// Deterministic parameter grid avoiding collision moments.
std::vector<cplx> t_grid(const Poly& phi, const Poly& f, int count);

Decomposition decompose_curve(const PDCurve& curve, const Poly& phi, const Poly& f,
                              double tol = kDefaultTol, int grid = 60);

bool transversality_check(const Poly& phi, const Poly& f, double tol = kDefaultTol);

int fregier_count(int n);

}  // namespace isofocal

#endif  // ISOFOCAL_PDCURVE_HPP
