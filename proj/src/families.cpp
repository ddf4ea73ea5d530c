#include "isofocal/families.hpp"

#include <cmath>

namespace isofocal {

namespace {

void nonzero(cplx v, const char* what) {
  if (std::abs(v) < 1e-14) throw InvalidInput(std::string("family: vanishing denominator ") + what);
}

Poly in_x_squared(std::initializer_list<cplx> c) {
  Poly::Coeffs v = Poly::Coeffs::Zero(2 * static_cast<Eigen::Index>(c.size()) - 1);
  int i = 0;
  for (cplx x : c) v(2 * i++) = x;
  return Poly(std::move(v));
}

}  // namespace

FamilyResult family(const FamilyParams& fp) {
  const int n = fp.n;
  const std::size_t want = n == 3 ? 2 : n == 5 ? 3 : n == 7 ? 4 : 0;
  if (!want) throw InvalidInput("family: n must be 3, 5 or 7");
  if (fp.params.size() != want) throw InvalidInput("family: wrong number of parameters");
  const cplx al = fp.params[0], be = fp.params[1];
  const cplx ga = want > 2 ? fp.params[2] : 0.0, de = want > 3 ? fp.params[3] : 0.0;
  const Poly x{0.0, 1.0};

  FamilyResult r;
  r.n = n;
  nonzero(al, "alpha");
  nonzero(al + 2.0 * be, "alpha + 2 beta");
  r.N_displayed = 1.0 / (1.0 + 2.0 * be / al);

  const Poly P = in_x_squared({al, ga}), Q = in_x_squared({be, de});
  r.corrected_odd = x * (P * P + P * Q * 2.0 + Q * Q * x * x);
  r.corrected_even = P * P + x * x * P * Q * 2.0 + Q * Q * x * x;

  VectorXc pos(n), mass(n);
  if (n == 3) {
    nonzero(be, "beta");
    const cplx c1 = al * al + 2.0 * al * be;
    nonzero(c1, "alpha^2 + 2 alpha beta");
    r.odd_poly = x * in_x_squared({c1, be * be});
    r.even_poly = in_x_squared({al * al, 2.0 * al * be + be * be});
    const cplx s = std::sqrt(-c1 / (be * be));
    pos << 0.0, s, -s;
    const cplx m1 = -be * be * (2.0 * al * be + be * be) / c1;
    const cplx m2 = (al * al * c1 + be * be * (2.0 * al * be + be * be)) / (2.0 * c1);
    mass << m1, m2, m2;
  } else if (n == 5) {
    nonzero(ga, "gamma");
    const cplx lin = 2.0 * al * ga + 2.0 * ga * be + be * be;
    r.odd_poly = x * in_x_squared({al * al + 2.0 * al * be, be * be + 2.0 * al * ga + 2.0 * ga * be, ga});
    r.even_poly = in_x_squared({al * al, 2.0 * al * be + 2.0 * al * ga + be * be, ga * ga + 2.0 * be * ga});
    const cplx D = lin - 4.0 * ga * ga * (al * al + 2.0 * al * be);
    const cplx A = (-lin + std::sqrt(D)) / (2.0 * ga * ga);
    const cplx B = (-lin - std::sqrt(D)) / (2.0 * ga * ga);
    nonzero(A * B, "A B");
    nonzero(B - A, "B - A");
    r.notes.push_back("sqrt(D) on the principal branch; the other branch swaps A and B");
    pos << 0.0, std::sqrt(A), -std::sqrt(A), std::sqrt(B), -std::sqrt(B);
    const cplx g = ga * ga + 2.0 * al * ga;
    const cplx common = 2.0 * al * ga + 2.0 * be * al + be * be + (A + B) / (A * B) * g;
    const cplx m2 = (common - A * al * al + g / B) / (2.0 * (B - A));
    const cplx m4 = (common - B * al * al + g / A) / (2.0 * (B - A));
    mass << g / (A * B), m2, m2, m4, m4;
  } else {
    nonzero(de, "delta");
    // The degree-7 member is displayed as phi here.
    const Poly cubic{al * al + 2.0 * al * be, 2.0 * (al * ga + ga * be + al * de),
                     ga * ga + 2.0 * (ga * de + be * de), de * de};
    r.odd_poly = x * in_x_squared({cubic[0], cubic[1], cubic[2], cubic[3]});
    r.even_poly = in_x_squared({al * al, 2.0 * (al * ga + al * be) + be * be,
                                ga * ga + 2.0 * (ga * be + al * de + be * de), 2.0 * ga * de + de * de});
    r.notes.push_back("the degree-7 polynomial is displayed as phi and the even one as f; roles normalized by degree");
    const VectorXc a = raw_roots(cubic);
    const VectorXc s = a.array().sqrt();
    pos << 0.0, s(0), -s(0), s(1), -s(1), s(2), -s(2);
    const cplx m1 = (2.0 * ga * de + de * de) / (al * al);
    const cplx d1 = al * al - m1;
    const cplx d2 = (ga * ga + 2.0 * (ga * be + al * de) + 2.0 * be * de) -
                    al * al * (ga * ga + 2.0 * ga * de + 2.0 * be * de);
    const cplx d3 = (ga * ga + 2.0 * (ga * be + al * de)) -
                    m1 * (2.0 * (al * ga + ga * be + al * de) + be * be);
    const VectorXc q = a;  // alpha_{2,4,6}^2
    Eigen::Matrix3cd mz, mh;
    mz << 1.0, 1.0, 1.0, q(0), q(1), q(2), q(0) * (q(1) + q(2)), q(1) * (q(0) + q(2)), q(2) * (q(1) + q(0));
    mh << s(0), s(1), s(2), s(0) * (q(1) + q(2)), s(1) * (q(0) + q(2)), s(2) * (q(1) + q(0)),
        s(0) * q(1) * q(2), s(1) * q(0) * q(2), s(2) * q(1) * q(0);
    Eigen::FullPivLU<Eigen::Matrix3cd> lz(mz), lh(mh);
    if (!lz.isInvertible()) throw InvalidInput("family: singular weight system");
    const Eigen::Vector3cd Z = lz.solve(Eigen::Vector3cd(d1, d2, d3));
    Eigen::Vector3cd Zh = Eigen::Vector3cd::Zero();
    if (!lh.isInvertible()) r.notes.push_back("difference system is singular; its zero solution is used");
    mass(0) = m1;
    for (int i = 0; i < 3; ++i) {
      mass(1 + 2 * i) = (Z(i) + Zh(i)) / 2.0;
      mass(2 + 2 * i) = (Z(i) - Zh(i)) / 2.0;
    }
  }
  r.literal.positions = pos;
  r.literal.masses = mass;

  const cplx lc = r.odd_poly.leading();
  r.pencil_phi = r.odd_poly / lc;
  r.pencil_f = r.even_poly / lc;

  // Match each literal position to the nearest true root.
  const VectorXc roots_phi = raw_roots(r.pencil_phi);
  r.positions.resize(n);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    int best = -1;
    for (int j = 0; j < n; ++j)
      if (!used[j] && (best < 0 || std::abs(roots_phi(j) - pos(i)) < std::abs(roots_phi(best) - pos(i)))) best = j;
    used[best] = true;
    r.positions(i) = roots_phi(best);
    r.position_residual = std::max(r.position_residual, std::abs(roots_phi(best) - pos(i)) / std::max(1.0, std::abs(pos(i))));
  }
  r.literal_positions_valid = r.position_residual < 1e-8;
  r.corrected_masses = masses_by_residue(r.positions, r.pencil_f, r.pencil_phi);

  try {
    const MardenPencil lp = build_pencil(r.literal);
    const Eigen::Index len = std::max(lp.f.coeffs().size(), r.pencil_f.coeffs().size());
    r.mass_residual = proportionality_residual(VectorXc(r.pencil_f.padded(len)), VectorXc(lp.f.padded(len)));
  } catch (const Error& e) {
    r.mass_residual = 1.0;
    r.notes.push_back(std::string("literal configuration rejected: ") + e.what());
  }
  r.literal_masses_valid = r.literal_positions_valid && r.mass_residual < 1e-8;
  if (!r.literal_masses_valid)
    r.notes.push_back("literal masses do not reproduce the family pencil; corrected_masses are the residues");
  return r;
}

}  // namespace isofocal
