#include <algorithm>
#include <set>

#include "doctest.h"
#include "isofocal/polycore.hpp"
#include "oracles.hpp"

using namespace isofocal;

namespace {

bool has_root(const RootSet& rs, cplx z, int mult, double eps = 1e-9) {
  return std::any_of(rs.entries.begin(), rs.entries.end(), [&](const Root& r) {
    return std::abs(r.value - z) < eps && r.multiplicity == mult;
  });
}

}  // namespace

TEST_CASE("poly basics") {
  const Poly p{1.0, 0.0, 2.0, 0.0, 0.0};
  CHECK(p.degree() == 2);
  CHECK(Poly().degree() == -1);
  CHECK(p(cplx(2.0)) == cplx(9.0));
  const Poly d = p.derivative();
  CHECK(d == Poly{0.0, 4.0});
  const Poly a{-1.0, 1.0}, b{1.0, 1.0};
  CHECK((a * b) == Poly{-1.0, 0.0, 1.0});
  auto [q, r] = divmod(Poly{-1.0, 0.0, 1.0}, a);
  CHECK(oracle::coeff_dist(q, b) < 1e-15);
  CHECK(r.is_zero());
}

TEST_CASE("roots examples") {
  SUBCASE("z^2+1") {
    const RootSet rs = roots(Poly{1.0, 0.0, 1.0});
    REQUIRE(rs.entries.size() == 2);
    CHECK(has_root(rs, {0, 1}, 1));
    CHECK(has_root(rs, {0, -1}, 1));
  }
  SUBCASE("(z-1)^2(z+2)") {
    const Poly p = Poly{-1.0, 1.0} * Poly{-1.0, 1.0} * Poly{2.0, 1.0};
    const RootSet rs = roots(p);
    REQUIRE(rs.entries.size() == 2);
    CHECK(has_root(rs, 1.0, 2));
    CHECK(has_root(rs, -2.0, 1));
    CHECK(rs.total_multiplicity() == 3);
  }
  SUBCASE("z(z-1)(z-i)") {
    const Poly p{0.0, cplx(0, 1), cplx(-1, -1), 1.0};
    const RootSet rs = roots(p);
    REQUIRE(rs.entries.size() == 3);
    CHECK(has_root(rs, 0.0, 1));
    CHECK(has_root(rs, 1.0, 1));
    CHECK(has_root(rs, {0, 1}, 1));
  }
  SUBCASE("triple and quadruple roots") {
    const Poly l{-0.5, 1.0};
    const Poly p = l * l * l * Poly{1.0, 0.0, 1.0};
    CHECK(has_root(roots(p), 0.5, 3));
    const Poly s{cplx(1, 1), 1.0};
    const Poly q = s * s * s * s * Poly{3.0, 1.0};
    CHECK(has_root(roots(q), cplx(-1, -1), 4, 1e-7));
  }
  CHECK_THROWS_AS(roots(Poly()), InvalidInput);
}

TEST_CASE("roots reconstruction property") {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int deg = 1 + trial % 10;
    Poly p = oracle::rand_poly(rng, deg);
    p = p.monic();
    const RootSet rs = roots(p);
    CHECK(rs.total_multiplicity() == deg);
    const Poly back = Poly::from_roots(rs.expand());
    worst = std::max(worst, oracle::coeff_dist(back, p));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("poly_gcd examples") {
  SUBCASE("gcd(z^2-1, z-1)") {
    const GcdResult g = poly_gcd(Poly{-1.0, 0.0, 1.0}, Poly{-1.0, 1.0});
    CHECK(g.degree == 1);
    CHECK(oracle::coeff_dist(g.gcd, Poly{-1.0, 1.0}) < 1e-12);
  }
  SUBCASE("gcd with derivative, exact oracle") {
    using oracle::Rat;
    const oracle::RatPoly p{Rat(0), Rat(1), Rat(0), Rat(2), Rat(0), Rat(1)};  // z(z^2+1)^2
    const oracle::RatPoly exact = oracle::rgcd(p, oracle::rderiv(p));
    const Poly expected = oracle::to_poly(exact);
    CHECK(expected.degree() == 2);
    const Poly pz = oracle::to_poly(p);
    const GcdResult g = poly_gcd(pz, pz.derivative());
    CHECK(g.degree == 2);
    CHECK(oracle::coeff_dist(g.gcd, expected) < 1e-10);
    CHECK(oracle::coeff_dist(g.gcd, Poly{1.0, 0.0, 1.0}) < 1e-10);
  }
  SUBCASE("coprime") {
    const GcdResult g = poly_gcd(Poly{1.0, 0.0, 1.0}, Poly{-1.0, 1.0});
    CHECK(g.degree == 0);
    CHECK(g.gcd == Poly::constant(1.0));
  }
  CHECK_THROWS_AS(poly_gcd(Poly(), Poly()), InvalidInput);
}

TEST_CASE("poly_gcd exactness property") {
  std::mt19937_64 rng(5);
  int hits = 0, trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const int dw = 1 + trial % 4;
    const Poly w = Poly::from_roots(oracle::rand_vec(rng, dw));
    const Poly u = oracle::rand_poly(rng, 1 + trial % 3);
    const Poly v = oracle::rand_poly(rng, 1 + (trial / 3) % 3);
    try {
      const GcdResult g = poly_gcd(u * w, v * w, 1e-8);
      if (g.degree == dw && oracle::coeff_dist(g.gcd, w) < 1e-6) ++hits;
    } catch (const AmbiguityError&) {
    }
  }
  CHECK(hits >= 0.99 * trials);
}

TEST_CASE("disc_in_t examples") {
  SUBCASE("(z^2-1, z)") {
    const Poly d = disc_in_t(Poly{-1.0, 0.0, 1.0}, Poly{0.0, 1.0});
    CHECK(oracle::coeff_dist(d, Poly{4.0, 0.0, 1.0}) < 1e-12);
    const RootSet rs = roots(d);
    CHECK(has_root(rs, {0, 2}, 1));
    CHECK(has_root(rs, {0, -2}, 1));
  }
  SUBCASE("(z^2, 1)") {
    const Poly d = disc_in_t(Poly{0.0, 0.0, 1.0}, Poly{1.0});
    CHECK(d.degree() == 1);
    CHECK(std::abs(d(cplx(0.0))) < 1e-14);
    CHECK(oracle::coeff_dist(d, Poly{0.0, -4.0}) < 1e-12);
  }
  SUBCASE("(z^3-z, 3z^2-1) against the root-product oracle") {
    const Poly phi{0.0, -1.0, 0.0, 1.0}, f{-1.0, 0.0, 3.0};
    const Poly d = disc_in_t(phi, f);
    // Frozen from the oracle: 108 t^4 + 36 t^2 + 4.
    const Poly frozen{4.0, 0.0, 36.0, 0.0, 108.0};
    for (double t : {0.0, 0.3, -1.1, 2.0}) {
      const cplx o = oracle::disc_by_roots(phi + f * cplx(t));
      CHECK(std::abs(frozen(cplx(t)) - o) < 1e-9 * std::max(1.0, std::abs(o)));
    }
    CHECK(d.degree() == 4);
    CHECK(oracle::coeff_dist(d, frozen) < 1e-10);
    const RootSet rs = roots(d);
    CHECK(rs.entries.size() == 4);
    CHECK(rs.max_multiplicity() == 1);
  }
}

TEST_CASE("disc_in_t roots are collision moments") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    const Poly phi = oracle::rand_poly(rng, n);
    const Poly f = oracle::rand_poly(rng, n - 1 - trial % 2);
    const Poly d = disc_in_t(phi, f);
    for (const Root& r : roots(d).entries) {
      const RootSet pr = roots(phi + f * r.value, 1e-7);
      CHECK(pr.max_multiplicity() >= 2);
    }
    const RootSet generic = roots(phi + f * cplx(0.37, 0.11));
    CHECK(generic.max_multiplicity() == 1);
  }
}

TEST_CASE("sym_table") {
  VectorXc v(3);
  v << 1.0, 2.0, 3.0;
  const SymTable s = sym_table(v);
  CHECK(std::abs(s.full(1) - 6.0) < 1e-15);
  CHECK(std::abs(s.full(2) - 11.0) < 1e-15);
  CHECK(std::abs(s.full(3) - 6.0) < 1e-15);
  CHECK(std::abs(s.omitted(2, 1) - 3.0) < 1e-15);
  CHECK(std::abs(s.omitted(1, 1) - 4.0) < 1e-15);
  CHECK(std::abs(s.bracket(VectorXc::Ones(3), 0) - 3.0) < 1e-15);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 8;
    const SymTable t = sym_table(oracle::rand_vec(rng, n));
    for (int k = 0; k < n; ++k) {
      CHECK(t.omitted(0, k) == cplx(1.0));
      for (int i = 1; i <= n; ++i) {
        const cplx lhs = t.omitted(i, k) + t.values(k) * t.omitted(i - 1, k);
        CHECK(std::abs(lhs - t.full(i)) < 1e-13 * std::max(1.0, std::abs(t.full(i))));
      }
    }
  }
}
