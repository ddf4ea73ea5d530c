#include "isofocal/flaschka.hpp"

#include <sstream>

namespace isofocal {

FlaschkaCoords to_flaschka(const Poly& f, const Poly& phi_in, double split_tol) {
  const int n = phi_in.degree();
  if (n < 1) throw InvalidInput("to_flaschka: deg phi must be at least 1");
  if (f.degree() >= n) throw InvalidInput("to_flaschka: f / phi must be proper");
  const cplx lc = phi_in.leading();
  const Poly phi = phi_in / lc;
  const Poly g = f / lc;
  if (g.degree() != n - 1)
    throw DegenerateError("to_flaschka: total mass B_n is zero, normalization impossible");

  FlaschkaCoords c;
  c.scale = g.leading();
  c.b.resize(n);
  c.a_sq.resize(n - 1);
  Poly hi = phi, lo = g / c.scale;
  for (int k = n; k >= 1; --k) {
    auto [q, r] = divmod(hi, lo);
    // q = z - b_k
    c.b(k - 1) = -q[0];
    if (k == 1) break;
    const cplx lead = r[k - 2];
    if (std::abs(lead) <= split_tol * std::max(1.0, hi.norm())) {
      std::ostringstream msg;
      msg << "to_flaschka: the chain splits, a_" << k - 1 << "^2 = 0";
      throw DegenerateError(msg.str(), std::abs(lead));
    }
    c.a_sq(k - 2) = -lead;
    hi = lo;
    lo = r / lead;
  }
  return c;
}

std::vector<Poly> delta_chain(const FlaschkaCoords& c) {
  const int n = c.n();
  std::vector<Poly> d;
  d.reserve(n + 1);
  d.push_back(Poly::constant(1.0));
  for (int k = 1; k <= n; ++k) {
    Poly next = Poly{-c.b(k - 1), 1.0} * d[k - 1];
    if (k >= 2) next -= d[k - 2] * c.a_sq(k - 2);
    d.push_back(std::move(next));
  }
  return d;
}

std::pair<Poly, Poly> from_flaschka(const FlaschkaCoords& c) {
  if (c.n() < 1 || c.a_sq.size() != c.n() - 1) throw InvalidInput("from_flaschka: malformed coordinates");
  const auto d = delta_chain(c);
  return {d[c.n() - 1] * c.scale, d[c.n()]};
}

FlaschkaCoords evolve_flaschka(const FlaschkaCoords& c, cplx t) {
  FlaschkaCoords out = c;
  out.b(c.n() - 1) -= c.scale * t;
  return out;
}

MatrixXc lax_matrix(const FlaschkaCoords& c, int k) {
  if (k < 0) k = c.n();
  MatrixXc l = MatrixXc::Zero(k, k);
  for (int i = 0; i < k; ++i) l(i, i) = c.b(i);
  for (int i = 0; i + 1 < k; ++i) {
    const cplx a = std::sqrt(c.a_sq(i));
    l(i, i + 1) = a;
    l(i + 1, i) = a;
  }
  return l;
}

}  // namespace isofocal
