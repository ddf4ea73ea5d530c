#include <algorithm>
#include <numbers>

#include "doctest.h"
#include "isofocal/marden.hpp"
#include "oracles.hpp"

using namespace isofocal;

namespace {

VectorXc vec(std::initializer_list<cplx> v) {
  VectorXc out(v.size());
  std::copy(v.begin(), v.end(), out.data());
  return out;
}

// f by direct expansion of sum m_i prod_{j != i} (z - a_j).
Poly f_by_expansion(const VectorXc& a, const VectorXc& m) {
  Poly f;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    Poly term = Poly::constant(m(i));
    for (Eigen::Index j = 0; j < a.size(); ++j)
      if (j != i) term = term * Poly{-a(j), 1.0};
    f += term;
  }
  return f;
}

// Contact point of the conic with foci f1, f2 on the line through p, q:
// reflect f2 across the line, join to f1 and intersect.
cplx focal_contact(cplx f1, cplx f2, cplx p, cplx q) {
  const cplx d = (q - p) / std::abs(q - p);
  const cplx r = p + d * d * std::conj(f2 - p);
  // Solve f1 + s (r - f1) = p + u d for real s, u.
  Eigen::Matrix2d a;
  a << (r - f1).real(), -d.real(), (r - f1).imag(), -d.imag();
  const Eigen::Vector2d b((p - f1).real(), (p - f1).imag());
  const Eigen::Vector2d x = a.partialPivLu().solve(b);
  return p + x(1) * d;
}

bool contains(const RootSet& rs, cplx z, double eps) {
  return std::any_of(rs.entries.begin(), rs.entries.end(),
                     [&](const Root& r) { return std::abs(r.value - z) < eps; });
}

}  // namespace

TEST_CASE("build_pencil examples") {
  SUBCASE("unit masses give f = phi'") {
    const MardenPencil p = build_pencil({vec({1.0, -1.0, 0.0}), VectorXc::Ones(3)});
    CHECK(oracle::coeff_dist(p.phi, Poly{0.0, -1.0, 0.0, 1.0}) < 1e-15);
    CHECK(oracle::coeff_dist(p.f, Poly{-1.0, 0.0, 3.0}) < 1e-15);
  }
  SUBCASE("constant f") {
    const MardenPencil p = build_pencil({vec({0.0, 1.0}), vec({1.0, -1.0})});
    CHECK(p.f.degree() == 0);
    CHECK(std::abs(p.f[0] + 1.0) < 1e-15);
    CHECK(std::abs(p.B(1)) < 1e-15);
  }
  SUBCASE("masses (1,2,3) on (0,1,i)") {
    const VectorXc a = vec({0.0, 1.0, cplx(0, 1)}), m = vec({1.0, 2.0, 3.0});
    const MardenPencil p = build_pencil({a, m});
    const Poly expected{cplx(0, 1), cplx(-4, -3), 6.0};
    CHECK(oracle::coeff_dist(f_by_expansion(a, m), expected) < 1e-14);
    CHECK(oracle::coeff_dist(p.f, expected) < 1e-14);
  }
  CHECK_THROWS_AS(build_pencil({vec({0.0, 0.0}), vec({1.0, 1.0})}), InvalidInput);
}

TEST_CASE("sign convention of the brackets") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 8;
    const VectorXc a = oracle::rand_vec(rng, n), m = oracle::rand_vec(rng, n);
    const MardenPencil p = build_pencil({a, m});
    CHECK(oracle::coeff_dist(p.f, f_by_expansion(a, m)) < 1e-10);
    for (int i = 1; i <= n; ++i) {
      const double s = (n - i) % 2 == 0 ? 1.0 : -1.0;
      CHECK(std::abs(p.f[i - 1] - s * p.B(i - 1)) < 1e-12);
    }
    CHECK(oracle::coeff_dist(p.phi, Poly::from_roots(oracle::companion_roots(p.phi))) < 1e-9);
  }
}

TEST_CASE("recover_masses") {
  const VectorXc a = vec({0.0, 1.0, cplx(0, 1)}), m = vec({1.0, 2.0, 3.0});
  const MardenPencil p = build_pencil({a, m});
  const VectorXc back = recover_masses(a, p.B);
  CHECK((back - m).norm() < 1e-13);
  CHECK_THROWS_AS(recover_masses(vec({0.0, 0.0, 1.0}), p.B), CollisionError);

  const VectorXc r = masses_by_residue(vec({1.0, -1.0}), Poly{0.0, 1.0}, Poly{-1.0, 0.0, 1.0});
  CHECK(std::abs(r(0) - 0.5) < 1e-15);
  CHECK(std::abs(r(1) - 0.5) < 1e-15);

  std::mt19937_64 rng(9);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 8;
    const VectorXc pos = oracle::rand_vec(rng, n), ms = oracle::rand_vec(rng, n);
    const MardenPencil pp = build_pencil({pos, ms});
    const VectorXc rec = recover_masses(pos, pp.B);
    worst = std::max(worst, (rec - ms).norm() / ms.norm());
    const VectorXc res = masses_by_residue(pos, pp.f, pp.phi);
    CHECK((res - ms).norm() / ms.norm() < 1e-9);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("constant f, both directions") {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 7; ++n) {
    const VectorXc a = oracle::rand_vec(rng, n);
    const Poly phi = Poly::from_roots(a);
    // Residues of c / phi give a constant f.
    const VectorXc m = masses_by_residue(a, Poly::constant(cplx(2.0, -1.0)), phi);
    const MardenPencil p = build_pencil({a, m});
    const SymTable s = sym_table(a);
    for (int i = 0; i <= n - 2; ++i) CHECK(std::abs(s.bracket(m, i)) < 1e-10);
    CHECK(p.f.trimmed(1e-10).degree() == 0);

    const VectorXc m2 = oracle::rand_vec(rng, n);
    const MardenPencil p2 = build_pencil({a, m2});
    double mx = 0.0;
    for (int i = 0; i <= n - 2; ++i) mx = std::max(mx, std::abs(s.bracket(m2, i)));
    CHECK(mx > 1e-6);
    CHECK(p2.f.trimmed(1e-10).degree() > 0);
  }
  std::mt19937_64 rng2(8);
  for (int n = 1; n <= 8; ++n) {
    const VectorXc a = oracle::rand_vec(rng2, n);
    const MardenPencil p = build_pencil({a, VectorXc::Ones(n)});
    CHECK(oracle::coeff_dist(p.f, p.phi.derivative()) < 1e-12);
  }
}

TEST_CASE("foci and tangency") {
  const MassedConfig eq{vec({0.0, 1.0}), vec({1.0, 1.0})};
  CHECK(std::abs(foci_and_tangency(eq).contacts[0].point - 0.5) < 1e-15);

  const MassedConfig tri{vec({0.0, 1.0, cplx(0, 1)}), VectorXc::Ones(3)};
  const FocalData fd = foci_and_tangency(tri);
  const RootSet expected = roots(Poly{cplx(0, 1.0 / 3.0), cplx(-2.0 / 3.0, -2.0 / 3.0), 1.0});
  REQUIRE(fd.foci.entries.size() == 2);
  for (const Root& r : expected.entries) CHECK(contains(fd.foci, r.value, 1e-12));

  const MassedConfig un{vec({0.0, 1.0}), vec({1.0, 2.0})};
  CHECK(std::abs(foci_and_tangency(un).contacts[0].point - 1.0 / 3.0) < 1e-15);

  // Orientation check against the conic with the computed foci: for positive
  // masses at a triangle the Marden curve is the inscribed conic with these foci.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const VectorXc a = oracle::rand_vec(rng, 3);
    const VectorXc m = vec({u(rng), u(rng), u(rng)});
    const FocalData d = foci_and_tangency({a, m});
    REQUIRE(d.foci.entries.size() == 2);
    const cplx f1 = d.foci.entries[0].value, f2 = d.foci.entries[1].value;
    for (const Contact& c : d.contacts) {
      const cplx o = focal_contact(f1, f2, a(c.i), a(c.j));
      CHECK(std::abs(o - c.point) < 1e-8);
    }
  }

  const FocalData circ = foci_and_tangency({vec({0.0, 1.0}), vec({1.0, -1.0})});
  CHECK(circ.foci.entries.empty());
  CHECK(!circ.note.empty());
  CHECK(!circ.contacts[0].finite);
}

TEST_CASE("steiner oracle") {
  const SteinerConic s = steiner_oracle({0.0, 1.0, cplx(0, 1)});
  for (cplx mid : {cplx(0.5, 0), cplx(0.5, 0.5), cplx(0, 0.5)}) CHECK(std::abs(conic_eval(s.coeffs, mid)) < 1e-14);
  const RootSet expected = roots(Poly{cplx(0, 1.0 / 3.0), cplx(-2.0 / 3.0, -2.0 / 3.0), 1.0});
  for (const Root& r : expected.entries)
    CHECK((std::abs(s.focus1 - r.value) < 1e-12 || std::abs(s.focus2 - r.value) < 1e-12));

  const cplx w = std::polar(1.0, std::numbers::pi / 3.0);
  const SteinerConic e = steiner_oracle({0.0, 1.0, w});
  CHECK(std::abs(e.focus1 - e.centre) < 1e-7);
  CHECK(std::abs(e.focus2 - e.centre) < 1e-7);
  CHECK(std::abs(e.centre - (1.0 + w) / 3.0) < 1e-15);

  CHECK_THROWS_AS(steiner_oracle({0.0, 1.0, 2.0}), InvalidInput);
}

TEST_CASE("siebeck property on random triangles") {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const VectorXc a = oracle::rand_vec(rng, 3);
    const std::array<cplx, 3> t{a(0), a(1), a(2)};
    const SteinerConic s = steiner_oracle(t);
    const RootSet crit = roots(Poly::from_roots(a).derivative());
    REQUIRE(crit.total_multiplicity() == 2);
    const cplx r1 = crit.expand()(0), r2 = crit.expand()(1);
    const double d = std::min(std::abs(s.focus1 - r1) + std::abs(s.focus2 - r2),
                              std::abs(s.focus1 - r2) + std::abs(s.focus2 - r1));
    CHECK(d < 1e-9);
    for (int k = 0; k < 3; ++k) {
      const cplx p = t[k], q = t[(k + 1) % 3], mid = (p + q) / 2.0;
      CHECK(std::abs(conic_eval(s.coeffs, mid)) < 1e-10);
      const cplx g = conic_gradient(s.coeffs, mid);
      const cplx dir = q - p;
      CHECK(std::abs(g.real() * dir.real() + g.imag() * dir.imag()) < 1e-9 * std::abs(g) * std::abs(dir));
    }
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("marden curve numerator") {
  const MassedConfig tri{vec({1.0, cplx(0, 1), cplx(1, 1)}), VectorXc::Ones(3)};
  CHECK(std::abs(marden_curve_eval(tri, 1.0, 1.0)) < 1e-15);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const VectorXc a = oracle::rand_vec(rng, 3);
    const SteinerConic s = steiner_oracle({a(0), a(1), a(2)});
    const MassedConfig c{a, VectorXc::Ones(3)};
    for (int k = 0; k < 8; ++k) {
      // A conic point from the parametrisation through the midpoints.
      const double th = 0.3 + 0.7 * k;
      const cplx m0 = (a(0) + a(1)) / 2.0 - s.centre, m1 = (a(1) + a(2)) / 2.0 - s.centre;
      // Points centre + cos th * m0 + sin th * v lie on the ellipse for the conjugate v.
      const cplx v = (m1 - m0 * std::cos(2.0 * std::numbers::pi / 3.0)) / std::sin(2.0 * std::numbers::pi / 3.0);
      const cplx p = s.centre + std::cos(th) * m0 + std::sin(th) * v;
      REQUIRE(std::abs(conic_eval(s.coeffs, p)) < 1e-9);
      const cplx g = conic_gradient(s.coeffs, p);
      const double rhs = g.real() * p.real() + g.imag() * p.imag();
      const cplx val = marden_curve_eval(c, g.real() / rhs, g.imag() / rhs);
      CHECK(std::abs(val) < 1e-9);
    }
    const cplx off = marden_curve_eval(c, 0.31, -0.77);
    CHECK(std::abs(off) > 1e-6);
  }
}
