#ifndef ISOFOCAL_FAMILIES_HPP
#define ISOFOCAL_FAMILIES_HPP

#include <string>
#include <vector>

#include "isofocal/marden.hpp"

namespace isofocal {

/// n = 3: (alpha, beta); n = 5: (alpha, beta, gamma); n = 7: (alpha, beta, gamma, delta).
struct FamilyParams {
  int n = 3;
  std::vector<cplx> params;
};

struct FamilyResult {
  int n = 0;
  Poly odd_poly;   ///< degree n, as displayed
  Poly even_poly;  ///< degree n - 1, as displayed
  /// From phi = P^2 + 2 x^2 P Q + Q^2 x^2 and f = x (P^2 + 2 P Q + Q^2 x^2).
  Poly corrected_odd, corrected_even;
  /// Pencil with the degree-n member as phi (monic) and the other scaled alike.
  Poly pencil_phi, pencil_f;

  MassedConfig literal;        ///< displayed positions and masses
  VectorXc positions;          ///< roots of pencil_phi, matched to the literal order
  VectorXc corrected_masses;   ///< residues of pencil_f / pencil_phi at `positions`
  double position_residual = 0.0;  ///< literal positions vs roots of pencil_phi
  double mass_residual = 0.0;      ///< proportionality of the literal pencil to pencil_f
  bool literal_positions_valid = false;
  bool literal_masses_valid = false;
  cplx N_displayed = 0.0;  ///< 1 / (1 + 2 beta / alpha)
  std::vector<std::string> notes;
};

FamilyResult family(const FamilyParams& p);

}  // namespace isofocal

#endif  // ISOFOCAL_FAMILIES_HPP
