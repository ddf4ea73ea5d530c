#include <numbers>

#include "doctest.h"
#include "isofocal/marden.hpp"
#include "isofocal/pdcurve.hpp"
#include "oracles.hpp"

using namespace isofocal;

namespace {

// Conic z1^2 = c z0 z2 as a HomogPoly3.
HomogPoly3 k_conic(cplx c) {
  HomogPoly3 h(2);
  h.at(0, 2) = 1.0;
  h.at(1, 0) = -c;
  return h;
}

double conic_det(const HomogPoly3& h) {
  Eigen::Matrix3cd m;
  m << h.at(2, 0), h.at(1, 1) / 2.0, h.at(1, 0) / 2.0,
       h.at(1, 1) / 2.0, h.at(0, 2), h.at(0, 1) / 2.0,
       h.at(1, 0) / 2.0, h.at(0, 1) / 2.0, h.at(0, 0);
  return std::abs(m.determinant()) / std::pow(h.coeffs().norm(), 3);
}

}  // namespace

TEST_CASE("darboux coordinates") {
  const DarbouxPair d = to_darboux(ProjPoint(-1.0, 0.0, 1.0));
  CHECK(std::abs(d.rho * d.rho1 + 1.0) < 1e-15);
  CHECK(std::abs(d.rho + d.rho1) < 1e-15);
  const DarbouxPair k = to_darboux(ProjPoint(1.0, 2.0, 1.0));
  CHECK(std::abs(k.rho + 1.0) < 1e-7);
  CHECK(std::abs(k.rho1 + 1.0) < 1e-7);
  CHECK(projectively_equal(from_darboux(2.0, 3.0), ProjPoint(6.0, -5.0, 1.0), 1e-15));
  CHECK(projectively_equal(from_darboux(1.0, -1.0), ProjPoint(-1.0, 0.0, 1.0), 1e-15));
  for (cplx t : {cplx(0.3, 1.0), cplx(-2.0, 0.0)}) {
    const ProjPoint p = from_darboux(t, t);
    CHECK(std::abs(p(1) * p(1) - 4.0 * p(0) * p(2)) < 1e-14);
  }

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const ProjPoint p(oracle::rand_cplx(rng), oracle::rand_cplx(rng), oracle::rand_cplx(rng));
    CHECK(projectively_equal(from_darboux(to_darboux(p)), p, 1e-12));
  }
  // z2 = 0: one parameter at infinity.
  const ProjPoint inf(2.0, 1.0, 0.0);
  CHECK(projectively_equal(from_darboux(to_darboux(inf)), inf, 1e-14));
}

TEST_CASE("tangent lines") {
  CHECK((tangent_line(0.0) - Vector3c(1.0, 0.0, 0.0)).norm() == 0.0);
  const Vector3c l1 = tangent_line(1.0);
  CHECK((l1 - Vector3c(1.0, 1.0, 1.0)).norm() == 0.0);
  // Touches K at (1, -2, 1): on the line and on K, double intersection.
  const Vector3c touch(1.0, -2.0, 1.0);
  CHECK(std::abs(l1.dot(touch.conjugate())) < 1e-15);
  const Vector3c x = l1.cross(tangent_line(-1.0));
  CHECK(projectively_equal(x, ProjPoint(-1.0, 0.0, 1.0), 1e-15));
  // The K point with parameter s = (s^2, 2s, 1) lies on tangent_line(-s).
  for (double s : {0.5, -2.0, 3.0}) {
    const Vector3c p(s * s, 2.0 * s, 1.0);
    CHECK(std::abs((tangent_line(-s).array() * p.array()).sum()) < 1e-13);
  }
}

TEST_CASE("pd_curve examples") {
  const PDCurve c = pd_curve(Poly{-1.0, 0.0, 1.0}, Poly{0.0, 1.0});
  // S = -(rho rho1 + 1), the trivariate form -(z0 + z2).
  CHECK(std::abs(c.sym(0, 0) + 1.0) < 1e-15);
  CHECK(std::abs(c.sym(1, 1) + 1.0) < 1e-15);
  CHECK(std::abs(c.sym(0, 1)) < 1e-15);
  CHECK(c.tri.degree() == 1);
  CHECK(std::abs(c.tri.at(1, 0) + 1.0) < 1e-15);
  CHECK(std::abs(c.tri.at(0, 0) + 1.0) < 1e-15);
  CHECK(std::abs(c.tri.at(0, 1)) < 1e-15);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const Poly phi = oracle::rand_poly(rng, n), f = oracle::rand_poly(rng, n - 1);
    const PDCurve pc = pd_curve(phi, f);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) CHECK(pc.sym(a, b) == pc.sym(b, a));
    for (int k = 0; k < 3; ++k) {
      const cplx r = oracle::rand_cplx(rng), r1 = oracle::rand_cplx(rng);
      const cplx direct = (f(r) * phi(r1) - phi(r) * f(r1)) / (r - r1);
      CHECK(std::abs(pc.eval_sym(r, r1) - direct) < 1e-10 * std::max(1.0, std::abs(direct)));
      const cplx diag = phi(r) * f.derivative()(r) - f(r) * phi.derivative()(r);
      CHECK(std::abs(pc.eval_sym(r, r) - diag) < 1e-10 * std::max(1.0, std::abs(diag)));
      // Trivariate form agrees with S up to z2^(n-1).
      const ProjPoint p = from_darboux(r, r1);
      CHECK(std::abs(pc.tri(p) - pc.eval_sym(r, r1)) < 1e-10 * std::max(1.0, std::abs(direct)));
    }
  }

  const MardenPencil mp = build_pencil({VectorXc((VectorXc(3) << 0.0, 1.0, cplx(0, 1)).finished()), VectorXc::Ones(3)});
  const PDCurve tri = pd_curve(mp.phi, mp.f);
  CHECK(tri.tri.degree() == 2);
  CHECK(conic_det(tri.tri) > 1e-3);

  CHECK_THROWS_AS(pd_curve(Poly{-1.0, 0.0, 1.0}, Poly{-1.0, 1.0}), DegenerateError);
}

TEST_CASE("pd_matrix") {
  const HomogPoly3 h = pd_matrix(Poly{-1.0, 0.0, 1.0}, Poly{0.0, 1.0});
  const MatrixXc a = annihilator(Poly{-1.0, 0.0, 1.0}, Poly{0.0, 1.0});
  CHECK(a.rows() == 1);
  CHECK(proportionality_residual(a.row(0).transpose(), Vector3c(1.0, 0.0, 1.0)) < 1e-14);
  HomogPoly3 line(1);
  line.at(1, 0) = 1.0;
  line.at(0, 0) = 1.0;
  CHECK(proportionality_residual(h.coeffs(), line.coeffs()) < 1e-14);

  std::mt19937_64 rng(17);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    const Poly phi = oracle::rand_poly(rng, n), f = oracle::rand_poly(rng, n - trial % 2);
    worst = std::max(worst, proportionality_residual(pd_matrix(phi, f).coeffs(), pd_curve(phi, f).tri.coeffs()));
  }
  CHECK(worst < 1e-9);
  const Poly phi{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(pd_matrix(phi, phi * cplx(2.0)), DegenerateError);
}

TEST_CASE("grid incidence") {
  std::mt19937_64 rng(23);
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 5;
    const Poly phi = oracle::rand_poly(rng, n), f = oracle::rand_poly(rng, n - 1);
    const PDCurve c = pd_curve(phi, f);
    const auto pts = sample_curve(phi, f, t_grid(phi, f, 10));
    for (const auto& row : pts)
      for (const auto& p : row) worst = std::max(worst, c.tri.normalized_value(p));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("decompose_curve") {
  SUBCASE("n = 2 line") {
    const Poly phi{-1.0, 0.0, 1.0}, f{0.0, 1.0};
    const Decomposition d = decompose_curve(pd_curve(phi, f), phi, f);
    REQUIRE(d.decomposed());
    REQUIRE(d.components.size() == 1);
    CHECK(d.components[0].degree == 1);
    HomogPoly3 line(1);
    line.at(1, 0) = 1.0;
    line.at(0, 0) = 1.0;
    CHECK(proportionality_residual(d.components[0].eq.coeffs(), line.coeffs()) < 1e-9);
  }
  SUBCASE("n = 3 single conic") {
    std::mt19937_64 rng(5);
    const Poly phi = oracle::rand_poly(rng, 3), f = oracle::rand_poly(rng, 2);
    const PDCurve c = pd_curve(phi, f);
    const Decomposition d = decompose_curve(c, phi, f);
    REQUIRE(d.decomposed());
    REQUIRE(d.components.size() == 1);
    CHECK(d.components[0].degree == 2);
    CHECK(d.product_residual < 1e-8);
  }
  SUBCASE("regular pentagons split into two conics") {
    const Poly phi{0.0, 0.0, 0.0, 0.0, 0.0, 1.0}, f{1.0};
    const PDCurve c = pd_curve(phi, f);
    const Decomposition d = decompose_curve(c, phi, f);
    REQUIRE(d.decomposed());
    REQUIRE(d.components.size() == 2);
    const double c1 = 2.0 + 2.0 * std::cos(2.0 * std::numbers::pi / 5.0);
    const double c2 = 2.0 + 2.0 * std::cos(4.0 * std::numbers::pi / 5.0);
    int matched = 0;
    for (const auto& comp : d.components) {
      CHECK(comp.degree == 2);
      if (proportionality_residual(comp.eq.coeffs(), k_conic(c1).coeffs()) < 1e-8 ||
          proportionality_residual(comp.eq.coeffs(), k_conic(c2).coeffs()) < 1e-8)
        ++matched;
    }
    CHECK(matched == 2);
    CHECK(d.fit_residual < 1e-7);
    CHECK(d.product_residual < 1e-6);
  }
  SUBCASE("random quintic pencil does not split") {
    std::mt19937_64 rng(8);
    const Poly phi = oracle::rand_poly(rng, 5), f = oracle::rand_poly(rng, 4);
    const Decomposition d = decompose_curve(pd_curve(phi, f), phi, f);
    CHECK(!d.decomposed());
    CHECK(d.status == "no decomposition detected");
  }
}

TEST_CASE("transversality") {
  CHECK(transversality_check(Poly{0.0, -1.0, 0.0, 1.0}, Poly{-1.0, 0.0, 3.0}));
  CHECK(!transversality_check(Poly{0.0, 0.0, 0.0, 1.0}, Poly{1.0}));
  CHECK(transversality_check(Poly{-1.0, 0.0, 1.0}, Poly{0.0, 1.0}));
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Poly phi = oracle::rand_poly(rng, 4), f = oracle::rand_poly(rng, 3);
    CHECK(transversality_check(phi, f));
  }
  // (z-1)^3 (z+2) + t (z - 5)
  const Poly l{-1.0, 1.0};
  CHECK(!transversality_check(l * l * l * Poly{2.0, 1.0}, Poly{-5.0, 1.0}));
}

TEST_CASE("fregier count") {
  CHECK(fregier_count(4) == 3);
  CHECK(fregier_count(3) == 2);
  CHECK(fregier_count(7) == 6);
  for (int n = 2; n <= 40; ++n) CHECK(fregier_count(n) == n - 1);
}
