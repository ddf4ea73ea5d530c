#include "isofocal/decompcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "isofocal/elliptic.hpp"
#include "isofocal/pdcurve.hpp"

namespace isofocal {

namespace {

constexpr double kShapeTol = 1e-6;
constexpr double kIntTol = 1e-5;

void reduce(std::array<cplx, 2>& g) {
  for (int it = 0; it < 100; ++it) {
    if (std::abs(g[0]) > std::abs(g[1])) std::swap(g[0], g[1]);
    const double mu = std::round(std::real(g[1] * std::conj(g[0])) / std::norm(g[0]));
    if (mu == 0.0) break;
    g[1] -= mu * g[0];
  }
}

// Coordinates of w in the real basis (b0, b1).
std::array<double, 2> real_coords(cplx w, const std::array<cplx, 2>& b) {
  Eigen::Matrix2d m;
  m << b[0].real(), b[1].real(), b[0].imag(), b[1].imag();
  const Eigen::Vector2d x = m.fullPivLu().solve(Eigen::Vector2d(w.real(), w.imag()));
  return {x(0), x(1)};
}

double relative(const Poly& a, const Poly& b) {
  const Eigen::Index len = std::max(a.coeffs().size(), b.coeffs().size());
  return (a.padded(len) - b.padded(len)).norm() / std::max(a.norm(), 1e-300);
}

Poly linear(cplx r) { return Poly{-r, 1.0}; }

// Integer matrix C and residual for rows of `us` expressed in `basis`.
struct Coords {
  std::array<std::array<double, 2>, 2> x{};
  double residual = 0.0;
  long det = 0;
};

Coords express(const std::array<cplx, 2>& us, const std::array<cplx, 2>& basis) {
  Coords c;
  for (int j = 0; j < 2; ++j) {
    c.x[j] = real_coords(us[j], basis);
    for (double v : c.x[j]) c.residual = std::max(c.residual, std::abs(v - std::round(v)));
  }
  c.det = std::lround(c.x[0][0]) * std::lround(c.x[1][1]) - std::lround(c.x[0][1]) * std::lround(c.x[1][0]);
  return c;
}

}  // namespace

std::array<cplx, 2> cubic_periods(const std::array<cplx, 3>& e) {
  const double two_pi = 2.0 * std::numbers::pi;
  std::array<cplx, 2> g{two_pi / agm(std::sqrt(e[0] - e[2]), std::sqrt(e[0] - e[1])),
                        two_pi / agm(std::sqrt(e[1] - e[2]), std::sqrt(e[1] - e[0]))};
  reduce(g);
  return g;
}

Lattice quartic_lattice(const std::array<cplx, 4>& e, double cluster_tol) {
  // Group coincident roots.
  std::vector<std::vector<cplx>> groups;
  for (const cplx r : e) {
    bool placed = false;
    for (auto& grp : groups)
      if (std::abs(grp[0] - r) <= cluster_tol * std::max({1.0, std::abs(r), std::abs(grp[0])})) {
        grp.push_back(r);
        placed = true;
        break;
      }
    if (!placed) groups.push_back({r});
  }
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  auto mean = [](const std::vector<cplx>& g) {
    cplx s = 0.0;
    for (cplx v : g) s += v;
    return s / static_cast<double>(g.size());
  };

  Lattice lat;
  if (groups[0].size() >= 3) throw DegenerateError("quartic_lattice: root of multiplicity >= 3");
  if (groups[0].size() == 2) {
    const cplx c = mean(groups[0]);
    cplx prod = 1.0;
    for (std::size_t g = 1; g < groups.size(); ++g)
      for (cplx v : groups[g]) prod *= c - v;
    lat.rank = 1;
    lat.gens[0] = cplx(0.0, 2.0 * std::numbers::pi) / std::sqrt(prod);
    return lat;
  }
  // dz / y = -dw / sqrt(c prod (w - 1/d_i)) under z = e_4 + 1/w.
  std::array<cplx, 3> r;
  cplx c = -1.0;
  for (int i = 0; i < 3; ++i) {
    const cplx d = e[i] - e[3];
    r[i] = 1.0 / d;
    c *= d;
  }
  std::array<cplx, 2> g = cubic_periods(r);
  const cplx s = std::sqrt(c);
  lat.rank = 2;
  lat.gens = {g[0] / s, g[1] / s};
  reduce(lat.gens);
  return lat;
}

std::vector<CriticalValue> critical_values(const Poly& phi, const Poly& f, double tol) {
  std::vector<CriticalValue> out;
  const Poly d = disc_in_t(phi, f);
  if (d.degree() < 1) return out;
  const RootSet rd = roots(d, tol);
  const Poly dphi = phi.derivative(), df = f.derivative();
  const Poly ddphi = dphi.derivative(), ddf = df.derivative();

  for (const Root& r : rd.entries) {
    CriticalValue cv;
    const VectorXc z = raw_roots(phi + f * r.value);
    // Greedy disjoint closest pairs, one per order of vanishing.
    std::vector<std::tuple<double, int, int>> pairs;
    for (int i = 0; i < z.size(); ++i)
      for (int j = i + 1; j < z.size(); ++j) pairs.emplace_back(std::abs(z(i) - z(j)), i, j);
    std::sort(pairs.begin(), pairs.end());
    std::vector<bool> used(z.size(), false);
    std::vector<cplx> ts;
    for (const auto& [dist, i, j] : pairs) {
      if (static_cast<int>(ts.size()) == r.multiplicity) break;
      if (used[i] || used[j]) continue;
      used[i] = used[j] = true;
      cplx zz = 0.5 * (z(i) + z(j)), t = r.value;
      for (int it = 0; it < 30; ++it) {
        const cplx g1 = phi(zz) + t * f(zz), g2 = dphi(zz) + t * df(zz);
        const cplx j11 = g2, j12 = f(zz), j21 = ddphi(zz) + t * ddf(zz), j22 = df(zz);
        const cplx det = j11 * j22 - j12 * j21;
        if (det == cplx(0.0)) break;
        const cplx dz = (g1 * j22 - j12 * g2) / det;
        const cplx dt = (j11 * g2 - j21 * g1) / det;
        if (!std::isfinite(std::abs(dz)) || !std::isfinite(std::abs(dt))) break;
        zz -= dz;
        t -= dt;
        if (std::abs(dz) <= 1e-15 * (1.0 + std::abs(zz)) && std::abs(dt) <= 1e-15 * (1.0 + std::abs(t))) break;
      }
      cv.double_roots.push_back(zz);
      ts.push_back(t);
    }
    cplx mean = 0.0;
    for (cplx t : ts) mean += t;
    cv.t = ts.empty() ? r.value : mean / static_cast<double>(ts.size());
    for (cplx t : ts) cv.spread = std::max(cv.spread, std::abs(t - cv.t));

    const Poly p = phi + f * cv.t;
    try {
      const GcdResult g = poly_gcd(p, p.derivative(), tol);
      cv.gcd_degree = g.degree;
      cv.gcd_margin = g.margin;
    } catch (const AmbiguityError& e) {
      cv.ambiguous = true;
      cv.gcd_degree = r.multiplicity;
      cv.gcd_margin = e.residual();
    }
    out.push_back(std::move(cv));
  }
  return out;
}

DecompCertificate assemble_certificate(const Poly& phi, const Poly& f, const std::array<cplx, 4>& t,
                                       double tol) {
  DecompCertificate c;
  c.n = phi.degree();
  if (c.n < 3) throw InvalidInput("assemble_certificate: n must be at least 3");
  c.parity_shape = c.n % 2 ? "odd" : "even";

  struct Part {
    cplx t;
    std::vector<cplx> simple;
    Poly Q;
    int gcd_degree = 0;
  };
  std::array<Part, 4> parts;
  for (int i = 0; i < 4; ++i) {
    const Poly p = phi + f * t[i];
    const RootSet rs = roots(p, tol);
    Part& part = parts[i];
    part.t = t[i];
    part.Q = Poly::constant(std::sqrt(p.leading()));
    for (const Root& r : rs.entries) {
      if (r.multiplicity % 2) part.simple.push_back(r.value);
      for (int k = 0; k < r.multiplicity / 2; ++k) part.Q = part.Q * linear(r.value);
      part.gcd_degree += r.multiplicity - 1;
    }
  }

  if (c.n % 2) {
    for (const Part& p : parts)
      if (p.simple.size() != 1) {
        std::ostringstream msg;
        msg << "assemble_certificate: shape mismatch, phi + t f at t = " << p.t << " has " << p.simple.size()
            << " simple factors, expected 1";
        throw DegenerateError(msg.str());
      }
  } else {
    std::stable_sort(parts.begin(), parts.end(),
                     [](const Part& a, const Part& b) { return a.simple.size() > b.simple.size(); });
    if (parts[0].simple.size() != 2 || parts[1].simple.size() != 2 || !parts[2].simple.empty() ||
        !parts[3].simple.empty())
      throw DegenerateError("assemble_certificate: shape mismatch, expected two members with two simple factors and two squares");
  }

  int a = 0;
  Poly prod = Poly::constant(1.0);
  for (int i = 0; i < 4; ++i) {
    c.t_values[i] = parts[i].t;
    c.gcd_degrees[i] = parts[i].gcd_degree;
    c.Q_factors[i] = parts[i].Q;
    for (cplx s : parts[i].simple) c.contacts[a++] = s;
    prod = prod * parts[i].Q;
  }
  for (int i = 0; i < 4; ++i) {
    c.gamma1[i] = c.contacts[i];
    c.gamma2[i] = -c.t_values[i];
  }

  const Poly dd = phi.derivative() * f - phi * f.derivative();
  const Eigen::Index len = std::max(dd.coeffs().size(), prod.coeffs().size());
  const VectorXc dv = dd.padded(len), pv = prod.padded(len);
  c.N = dv.dot(pv) / dv.squaredNorm();

  for (int i = 0; i < 4; ++i) {
    Poly model = c.Q_factors[i] * c.Q_factors[i];
    if (c.n % 2)
      model = model * linear(c.contacts[i]);
    else if (i < 2)
      model = model * linear(c.contacts[2 * i]) * linear(c.contacts[2 * i + 1]);
    c.shape_residual = std::max(c.shape_residual, relative(phi + f * c.t_values[i], model));
  }
  return c;
}

CriterionReport criterion(const Poly& phi, const Poly& f, double tol) {
  const int n = phi.degree();
  if (n < 3) throw InvalidInput("criterion: n must be at least 3");
  if (!transversality_check(phi, f, tol)) throw DegenerateError("criterion: pencil is not transversal");
  CriterionReport rep;
  rep.critical = critical_values(phi, f, tol);
  for (const CriticalValue& cv : rep.critical)
    if (cv.ambiguous) {
      rep.status = "ambiguous";
      std::ostringstream msg;
      msg << "gcd degree at t = " << cv.t << " is ambiguous at tolerance " << tol;
      rep.reason = msg.str();
      return rep;
    }

  const int k = n / 2;
  std::vector<cplx> hi, lo;
  for (const CriticalValue& cv : rep.critical) {
    if (cv.gcd_degree == k) hi.push_back(cv.t);
    if (n % 2 == 0 && cv.gcd_degree == k - 1) lo.push_back(cv.t);
  }
  std::array<cplx, 4> ts;
  std::ostringstream why;
  if (n % 2) {
    if (hi.size() != 4) {
      why << hi.size() << " critical values with gcd degree " << k << ", need 4";
      rep.status = "absent";
      rep.reason = why.str();
      return rep;
    }
    std::copy(hi.begin(), hi.end(), ts.begin());
  } else {
    if (hi.size() != 2 || lo.size() != 2) {
      why << hi.size() << " critical values with gcd degree " << k << " and " << lo.size() << " with " << k - 1
          << ", need 2 and 2";
      rep.status = "absent";
      rep.reason = why.str();
      return rep;
    }
    ts = {lo[0], lo[1], hi[0], hi[1]};
  }
  try {
    rep.certificate = assemble_certificate(phi, f, ts, tol);
    rep.status = "certificate";
  } catch (const DegenerateError& e) {
    rep.status = "absent";
    rep.reason = e.what();
  }
  return rep;
}

VerifyReport verify_certificate(const DecompCertificate& cert, const Poly& phi, const Poly& f, double tol) {
  VerifyReport rep;
  const int n = phi.degree();
  const double shape_tol = std::max(kShapeTol, 100.0 * tol);
  if (cert.n != n) throw InvalidInput("verify_certificate: certificate is for another degree");
  const bool odd = n % 2;

  for (int i = 0; i < 4; ++i) {
    Poly model = cert.Q_factors[i] * cert.Q_factors[i];
    int want = odd ? (n - 1) / 2 : (i < 2 ? n / 2 - 1 : n / 2);
    if (odd)
      model = model * linear(cert.contacts[i]);
    else if (i < 2)
      model = model * linear(cert.contacts[2 * i]) * linear(cert.contacts[2 * i + 1]);
    const double r = relative(phi + f * cert.t_values[i], model);
    rep.shape_residual = std::max(rep.shape_residual, r);
    if (cert.Q_factors[i].degree() != want || r > shape_tol) {
      std::ostringstream msg;
      msg << "shape mismatch at t_" << i + 1 << " = " << cert.t_values[i] << " (residual " << r << ")";
      rep.messages.push_back(msg.str());
    }
  }
  rep.shape_ok = rep.messages.empty();

  Poly prod = Poly::constant(1.0);
  for (const Poly& q : cert.Q_factors) prod = prod * q;
  const Poly dd = phi.derivative() * f - phi * f.derivative();
  const Eigen::Index len = std::max(dd.coeffs().size(), prod.coeffs().size());
  const VectorXc dv = dd.padded(len), pv = prod.padded(len);
  rep.N = dv.dot(pv) / dv.squaredNorm();
  rep.N_residual = (pv - rep.N * dv).norm() / pv.norm();

  try {
    rep.lattice1 = quartic_lattice(cert.gamma1);
    rep.lattice2 = quartic_lattice(cert.gamma2);
  } catch (const DegenerateError& e) {
    rep.messages.push_back(e.what());
    return rep;
  }
  const Lattice& l1 = rep.lattice1;
  const Lattice& l2 = rep.lattice2;
  if (l1.rank != l2.rank) {
    rep.messages.push_back("period lattices have different ranks");
    return rep;
  }

  const cplx N = rep.N;
  if (l1.rank == 2) {
    const std::array<cplx, 2> scaled{l1.gens[0] / N, l1.gens[1] / N};
    const Coords c = express(scaled, l2.gens);
    rep.coords = c.x;
    rep.inclusion_residual = c.residual;
    rep.index = static_cast<int>(std::labs(c.det));
    cplx num = 0.0;
    double den = 0.0;
    for (int j = 0; j < 2; ++j) {
      const cplx w = std::round(c.x[j][0]) * l2.gens[0] + std::round(c.x[j][1]) * l2.gens[1];
      num += std::conj(w) * l1.gens[j];
      den += std::norm(w);
    }
    rep.N_period = num / den;
  } else {
    const cplx q = l1.gens[0] / N / l2.gens[0];
    rep.coords = {{{q.real(), 0.0}, {0.0, 0.0}}};
    rep.inclusion_residual = std::max(std::abs(q.real() - std::round(q.real())), std::abs(q.imag()));
    rep.index = static_cast<int>(std::abs(std::lround(q.real())));
    rep.N_period = l1.gens[0] / (std::round(q.real()) * l2.gens[0]);
  }
  rep.inclusion_ok = rep.inclusion_residual < kIntTol && rep.index == n;
  if (!rep.inclusion_ok) {
    std::ostringstream msg;
    msg << "(1/N) Lambda_1 is not an index-" << n << " sublattice of Lambda_2 (index " << rep.index
        << ", residual " << rep.inclusion_residual << ")";
    rep.messages.push_back(msg.str());
  }

  const cplx nN = static_cast<double>(n) * N;
  rep.a_value = std::abs(nN);
  const long a = std::lround(rep.a_value);
  rep.a_admissible = a >= 1 && a <= 2 * n &&
                     std::min(std::abs(nN - static_cast<double>(a)), std::abs(nN + static_cast<double>(a))) <
                         1e-6 * static_cast<double>(a);
  if (rep.a_admissible) {
    rep.a = static_cast<int>(a);
    if (l1.rank == 2) {
      const std::array<cplx, 2> scaled{static_cast<double>(a) * l2.gens[0], static_cast<double>(a) * l2.gens[1]};
      rep.a_inclusion = express(scaled, l1.gens).residual < kIntTol;
    } else {
      const cplx q = static_cast<double>(a) * l2.gens[0] / l1.gens[0];
      rep.a_inclusion = std::abs(q.real() - std::round(q.real())) < kIntTol && std::abs(q.imag()) < kIntTol;
    }
  } else {
    rep.messages.push_back("n N is not an integer a with 1 <= a <= 2n");
  }
  return rep;
}

Sufficiency sufficiency_class(int n) {
  if (n < 3) throw InvalidInput("sufficiency_class: n must be at least 3");
  return n % 4 == 0 ? Sufficiency::NeedsCyclicityCheck : Sufficiency::Guaranteed;
}

std::string to_string(Sufficiency s) {
  return s == Sufficiency::Guaranteed ? "Guaranteed" : "NeedsCyclicityCheck";
}

Poly TTMatch::S(const Poly& phi, const Poly& f, int i) const {
  const Poly p = phi + f * t;
  return divmod(p, Q * Q * linear(simple_roots(i))).first;
}

std::vector<TTMatch> toma_trautmann_shape(const Poly& phi, const Poly& f, double tol) {
  std::vector<TTMatch> out;
  const int n = phi.degree();
  if (n < 3) return out;
  if (f.degree() >= 1 && poly_gcd(phi, f, tol).degree > 0)
    throw InvalidInput("toma_trautmann_shape: f and phi share a root");
  for (const CriticalValue& cv : critical_values(phi, f, tol)) {
    if (cv.ambiguous || cv.gcd_degree != 1) continue;
    const RootSet rs = roots(phi + f * cv.t, tol);
    if (rs.max_multiplicity() != 2) continue;
    TTMatch m;
    m.t = cv.t;
    std::vector<cplx> simple;
    for (const Root& r : rs.entries) {
      if (r.multiplicity == 2)
        m.double_root = r.value;
      else
        simple.push_back(r.value);
    }
    m.Q = linear(m.double_root);
    m.simple_roots = Eigen::Map<VectorXc>(simple.data(), static_cast<Eigen::Index>(simple.size()));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace isofocal
