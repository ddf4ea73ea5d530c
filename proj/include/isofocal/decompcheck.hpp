#ifndef ISOFOCAL_DECOMPCHECK_HPP
#define ISOFOCAL_DECOMPCHECK_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "isofocal/polycore.hpp"

namespace isofocal {

/// Periods of a holomorphic differential. rank 1 for nodal models.
struct Lattice {
  int rank = 0;
  std::array<cplx, 2> gens{};  ///< gens[1] unused when rank == 1
};

/// Period lattice of dz / y on y^2 = prod (z - e_i), four roots. Distinct roots use the
/// complex AGM after sending e_4 to infinity; a double root gives the rank-1 residue lattice.
/// Throws DegenerateError for a root of multiplicity >= 3.
Lattice quartic_lattice(const std::array<cplx, 4>& e, double cluster_tol = 1e-6);

/// Lattice generators of dx / y on y^2 = (x - e_1)(x - e_2)(x - e_3), distinct roots.
std::array<cplx, 2> cubic_periods(const std::array<cplx, 3>& e);

/// A critical member of the pencil: phi + t f with a multiple root.
struct CriticalValue {
  cplx t = 0.0;
  int gcd_degree = 0;
  double gcd_margin = 0.0;
  bool ambiguous = false;
  double spread = 0.0;  ///< spread of t over the refined double roots
  std::vector<cplx> double_roots;
};

/// Roots of disc_in_t refined by Newton on (phi + t f, phi' + t f') in (z, t).
std::vector<CriticalValue> critical_values(const Poly& phi, const Poly& f, double tol = kDefaultTol);

struct DecompCertificate {
  int n = 0;
  std::string parity_shape;  ///< "odd" or "even"
  std::array<cplx, 4> t_values{};
  std::array<int, 4> gcd_degrees{};
  std::array<cplx, 4> contacts{};  ///< a_1..a_4 (simple factors)
  std::array<Poly, 4> Q_factors;   ///< monic
  std::array<cplx, 4> gamma1;      ///< y^2 = prod (z - a_i)
  std::array<cplx, 4> gamma2;      ///< Y^2 = prod (X + t_i), stored as the roots -t_i
  cplx N = 0.0;
  double shape_residual = 0.0;
};

/// Factor phi + t_i f into the shape of the certificate. t values may repeat; a root
/// of odd multiplicity contributes one simple factor.
DecompCertificate assemble_certificate(const Poly& phi, const Poly& f, const std::array<cplx, 4>& t,
                                       double tol = kDefaultTol);

struct CriterionReport {
  std::string status;  ///< "certificate", "absent" or "ambiguous"
  std::vector<CriticalValue> critical;
  std::optional<DecompCertificate> certificate;
  std::string reason;
};

/// Searches the critical members for four values with gcd degrees k, k, k, k (n = 2k+1)
/// or k, k, k-1, k-1 (n = 2k). Throws DegenerateError when the pencil is not transversal.
CriterionReport criterion(const Poly& phi, const Poly& f, double tol = kDefaultTol);

struct VerifyReport {
  bool shape_ok = false;
  double shape_residual = 0.0;
  cplx N = 0.0;  ///< least squares from prod Q = N (phi' f - phi f')
  double N_residual = 0.0;
  Lattice lattice1, lattice2;
  bool inclusion_ok = false;  ///< (1/N) Lambda_1 is a sublattice of Lambda_2
  int index = 0;
  std::array<std::array<double, 2>, 2> coords{};  ///< generators of (1/N) Lambda_1 in the basis of Lambda_2
  double inclusion_residual = 0.0;
  cplx N_period = 0.0;  ///< N refitted from the integer coordinates
  double a_value = 0.0; ///< |n N|
  int a = 0;            ///< nearest integer when admissible (1 <= a <= 2n), else 0
  bool a_admissible = false;
  bool a_inclusion = false;  ///< a Lambda_2 inside Lambda_1
  std::vector<std::string> messages;

  bool ok() const { return shape_ok && inclusion_ok; }
};

VerifyReport verify_certificate(const DecompCertificate& cert, const Poly& phi, const Poly& f,
                                double tol = kDefaultTol);

enum class Sufficiency { Guaranteed, NeedsCyclicityCheck };
Sufficiency sufficiency_class(int n);
std::string to_string(Sufficiency s);

/// phi + t f = (z - a) Q^2 S with deg Q = 1: one double root, the rest simple.
struct TTMatch {
  cplx t = 0.0;
  cplx double_root = 0.0;
  Poly Q;                  ///< z - double_root
  VectorXc simple_roots;   ///< every admissible a
  /// S for the choice a = simple_roots(i).
  Poly S(const Poly& phi, const Poly& f, int i) const;
};

std::vector<TTMatch> toma_trautmann_shape(const Poly& phi, const Poly& f, double tol = kDefaultTol);

}  // namespace isofocal

#endif  // ISOFOCAL_DECOMPCHECK_HPP
