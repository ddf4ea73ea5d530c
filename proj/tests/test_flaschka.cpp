#include "doctest.h"
#include "isofocal/flaschka.hpp"
#include "oracles.hpp"

using namespace isofocal;

TEST_CASE("flaschka examples") {
  const FlaschkaCoords c = to_flaschka(Poly{0.0, 1.0}, Poly{-1.0, 0.0, 1.0});
  CHECK(c.n() == 2);
  CHECK(std::abs(c.a_sq(0) - 1.0) < 1e-15);
  CHECK(c.b.norm() < 1e-15);
  CHECK(std::abs(c.scale - 1.0) < 1e-15);

  const FlaschkaCoords d = to_flaschka(Poly{-1.0, 0.0, 3.0}, Poly{0.0, -1.0, 0.0, 1.0});
  CHECK(std::abs(d.scale - 3.0) < 1e-15);
  CHECK(std::abs(d.a_sq(0) - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(d.a_sq(1) - 2.0 / 3.0) < 1e-15);
  CHECK(d.b.norm() < 1e-15);

  const cplx z0(0.7, -0.2);
  const FlaschkaCoords e = to_flaschka(Poly{1.0}, Poly{-z0, 1.0});
  CHECK(e.n() == 1);
  CHECK(std::abs(e.b(0) - z0) < 1e-15);

  CHECK_THROWS_AS(to_flaschka(Poly{0.0, 0.0, 1.0}, Poly{-1.0, 0.0, 1.0}), InvalidInput);
  CHECK_THROWS_AS(to_flaschka(Poly{1.0}, Poly{-1.0, 0.0, 1.0}), DegenerateError);
  // f shares the factor z with phi: the chain stops early.
  CHECK_THROWS_AS(to_flaschka(Poly{0.0, 0.0, 1.0}, Poly{0.0, -1.0, 0.0, 1.0}), DegenerateError);
}

TEST_CASE("flaschka round trips") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 8;
    const Poly phi = oracle::rand_poly(rng, n), f = oracle::rand_poly(rng, n - 1);
    const auto [g, p] = from_flaschka(to_flaschka(f, phi));
    const cplx lc = phi.leading();
    CHECK(oracle::coeff_dist(p, phi / lc) < 1e-10 * std::max(1.0, phi.norm() / std::abs(lc)));
    CHECK(oracle::coeff_dist(g, f / lc) < 1e-10 * std::max(1.0, f.norm() / std::abs(lc)));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 8;
    FlaschkaCoords c;
    c.b = oracle::rand_vec(rng, n);
    c.a_sq = oracle::rand_vec(rng, n - 1);
    c.scale = oracle::rand_cplx(rng);
    const auto [g, p] = from_flaschka(c);
    const FlaschkaCoords back = to_flaschka(g, p);
    CHECK((back.b - c.b).norm() < 1e-10 * std::max(1.0, c.b.norm()));
    CHECK((back.a_sq - c.a_sq).norm() < 1e-10 * std::max(1.0, c.a_sq.norm()));
    CHECK(std::abs(back.scale - c.scale) < 1e-10 * std::abs(c.scale));
  }
}

TEST_CASE("flow trivializes") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 6;
    const Poly phi = oracle::rand_poly(rng, n), f = oracle::rand_poly(rng, n - 1);
    const FlaschkaCoords c = to_flaschka(f, phi);
    for (double t : {-1.0, -0.1, 0.1, 1.0}) {
      // phi + t f, normalized the same way, has the same data except b_n.
      const FlaschkaCoords ct = to_flaschka(f, phi + f * cplx(t));
      const FlaschkaCoords ev = evolve_flaschka(c, t);
      CHECK((ct.b - ev.b).norm() < 1e-9 * std::max(1.0, c.b.norm()));
      CHECK((ct.a_sq - c.a_sq).norm() < 1e-9 * std::max(1.0, c.a_sq.norm()));
      CHECK(std::abs(ct.scale - c.scale) < 1e-12 * std::abs(c.scale));
      for (int k = 0; k + 1 < n; ++k) CHECK(std::abs(ct.b(k) - c.b(k)) < 1e-9 * std::max(1.0, c.b.norm()));
    }
  }
}

TEST_CASE("delta is the characteristic polynomial of the Lax matrix") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 6;
    FlaschkaCoords c;
    c.b = oracle::rand_vec(rng, n);
    c.a_sq = oracle::rand_vec(rng, n - 1);
    const auto d = delta_chain(c);
    for (int k = 1; k <= n; ++k) {
      const MatrixXc l = lax_matrix(c, k);
      CHECK((l - l.transpose()).norm() == 0.0);
      for (int s = 0; s < 3; ++s) {
        const cplx z = oracle::rand_cplx(rng);
        const cplx det = (z * MatrixXc::Identity(k, k) - l).determinant();
        CHECK(std::abs(d[k](z) - det) < 1e-10 * std::max(1.0, std::abs(det)));
      }
    }
  }
}

TEST_CASE("evolve example") {
  const Poly f{-1.0, 0.0, 3.0}, phi{0.0, -1.0, 0.0, 1.0};
  const FlaschkaCoords c = to_flaschka(f, phi);
  const FlaschkaCoords same = evolve_flaschka(c, 0.0);
  CHECK((same.b - c.b).norm() == 0.0);
  const cplx t(0.4, -0.3);
  const FlaschkaCoords e = evolve_flaschka(c, t);
  CHECK(std::abs(e.b(2) + 3.0 * t) < 1e-15);
  const auto [g, p] = from_flaschka(e);
  CHECK(oracle::coeff_dist(p, phi + f * t) < 1e-14);
  CHECK(oracle::coeff_dist(g, f) < 1e-14);
  const auto d0 = delta_chain(c), dt = delta_chain(e);
  CHECK(oracle::coeff_dist(d0[2], dt[2]) == 0.0);
  CHECK(oracle::coeff_dist(dt[3], d0[3] + d0[2] * (3.0 * t)) < 1e-14);
}
