#include "isofocal/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isofocal {

namespace {

FlowState state_at(const FlowSpec& spec, cplx t, const Poly& h, double tol) {
  FlowState s;
  s.t = t;
  const Poly phi_t = spec.phi_t(t);
  const RootSet rs = roots(phi_t, tol);
  s.config.positions = rs.expand();
  if (rs.max_multiplicity() > 1) {
    s.collided = true;
  } else {
    s.config.masses = masses_by_residue(s.config.positions, h, phi_t);
  }
  return s;
}

FlowState state_for(const FlowSpec& spec, cplx t, double tol) {
  FlowState s = state_at(spec, t, spec.numerator(t), tol);
  if (spec.g) {
    const Poly h = spec.numerator(t);
    if (h.degree() >= 1) s.foci = raw_roots(h);
  }
  return s;
}

std::vector<cplx> segment(cplx a, cplx b, int count) {
  std::vector<cplx> ts(count);
  for (int k = 0; k < count; ++k) ts[k] = a + (b - a) * (static_cast<double>(k) / (count - 1));
  return ts;
}

VectorXc sorted_roots(const Poly& p) {
  VectorXc r = raw_roots(p);
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return r;
}

VectorXc match(const VectorXc& prev, const VectorXc& next) {
  const Eigen::Index n = prev.size();
  std::vector<std::tuple<double, Eigen::Index, Eigen::Index>> pairs;
  pairs.reserve(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) pairs.emplace_back(std::abs(prev(i) - next(j)), i, j);
  std::sort(pairs.begin(), pairs.end());
  VectorXc out(n);
  std::vector<bool> used_i(n, false), used_j(n, false);
  for (const auto& [d, i, j] : pairs) {
    if (used_i[i] || used_j[j]) continue;
    used_i[i] = used_j[j] = true;
    out(i) = next(j);
  }
  return out;
}

// f at each root of phi against the size of its terms there.
bool share_root(const Poly& phi, const Poly& f, double tol) {
  const VectorXc r = raw_roots(phi);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    double terms = 0.0;
    for (int k = 0; k <= f.degree(); ++k) terms += std::abs(f[k]) * std::pow(std::abs(r(i)), k);
    if (std::abs(f(r(i))) <= std::sqrt(tol) * terms) return true;
  }
  return false;
}

}  // namespace

void validate(const FlowSpec& spec, double tol) {
  const int n = spec.phi.degree();
  if (n < 1) throw InvalidInput("flow: deg phi must be at least 1");
  if (std::abs(spec.phi.leading() - 1.0) > 1e-12) throw InvalidInput("flow: phi must be monic");
  if (spec.f.is_zero()) throw InvalidInput("flow: f is zero");
  if (spec.f.degree() > n - 1) throw InvalidInput("flow: deg f must be below deg phi");
  if (spec.g && spec.g->degree() > n - 1) throw InvalidInput("flow: deg g must be below deg phi");
  if (spec.f.degree() >= 1 && share_root(spec.phi, spec.f, tol))
    throw InvalidInput("flow: f and phi share a root");
}

FlowState isofocal_state(const FlowSpec& spec, cplx t, double tol) {
  if (spec.g) throw InvalidInput("isofocal_state: spec carries g, use bifocal_state");
  validate(spec, tol);
  return state_for(spec, t, tol);
}

FlowState bifocal_state(const FlowSpec& spec, cplx t, double tol) {
  if (!spec.g) throw InvalidInput("bifocal_state: spec has no g");
  validate(spec, tol);
  return state_for(spec, t, tol);
}

FlowState flow_state(const FlowSpec& spec, cplx t, double tol) {
  validate(spec, tol);
  return state_for(spec, t, tol);
}

MatrixXc track_roots(const FlowSpec& spec, const std::vector<cplx>& ts) {
  const int n = spec.n();
  MatrixXc out(n, static_cast<Eigen::Index>(ts.size()));
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const VectorXc r = sorted_roots(spec.phi_t(ts[k]));
    out.col(k) = k == 0 ? r : match(out.col(k - 1), r);
  }
  return out;
}

std::vector<CollisionEvent> collisions(const FlowSpec& spec, double tol) {
  validate(spec, tol);
  std::vector<CollisionEvent> out;
  const Poly d = disc_in_t(spec.phi, spec.f);
  if (d.degree() < 1) return out;
  const RootSet rd = roots(d, tol);
  for (const Root& r : rd.entries) {
    CollisionEvent e;
    e.t_star = r.value;
    e.disc_multiplicity = r.multiplicity;
    const RootSet rz = roots(spec.phi_t(r.value), tol);
    int clusters = 0;
    for (const Root& z : rz.entries) {
      if (z.multiplicity < 2) continue;
      ++clusters;
      if (z.multiplicity > e.multiplicity) {
        e.multiplicity = z.multiplicity;
        e.point = z.value;
      }
    }
    if (clusters == 0) {
      // Unresolved cluster: take the closest pair.
      const VectorXc z = rz.expand();
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < z.size(); ++i)
        for (Eigen::Index j = i + 1; j < z.size(); ++j)
          if (std::abs(z(i) - z(j)) < best) {
            best = std::abs(z(i) - z(j));
            e.point = (z(i) + z(j)) / 2.0;
          }
      e.multiplicity = 2;
      clusters = 1;
    }
    e.simple = clusters == 1 && e.multiplicity == 2;

    VectorXc labels;
    if (std::abs(e.t_star) < 1e-9) {
      labels = sorted_roots(spec.phi);
    } else {
      const MatrixXc path = track_roots(spec, segment(0.0, e.t_star * (1.0 - 1e-3), 200));
      labels = path.col(path.cols() - 1);
    }
    std::vector<int> idx(labels.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return std::abs(labels(a) - e.point) < std::abs(labels(b) - e.point);
    });
    idx.resize(e.multiplicity);
    std::sort(idx.begin(), idx.end());
    e.indices = idx;
    out.push_back(std::move(e));
  }
  return out;
}

Velocity eom_field(const FlowState& state, const FlowSpec& spec) {
  if (state.collided) throw CollisionError("eom_field: collided state");
  const VectorXc& a = state.config.positions;
  const VectorXc& m = state.config.masses;
  const int n = static_cast<int>(a.size());
  if (m.size() != n) throw InvalidInput("eom_field: masses missing");
  check_distinct(a);

  Velocity v;
  v.alpha_dot.resize(n);
  for (int i = 0; i < n; ++i) {
    cplx d(1.0);
    for (int j = 0; j < n; ++j)
      if (j != i) d *= a(i) - a(j);
    v.alpha_dot(i) = -spec.f(a(i)) / d;
  }

  const MatrixXc s = sigma_matrix(a);
  MatrixXc sdot = MatrixXc::Zero(n, n);
  VectorXc pair(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      // sigma_k with both i and j left out
      pair(0) = 1.0;
      for (int k = 1; k < n; ++k) pair(k) = s(k, i) - a(j) * pair(k - 1);
      for (int k = 1; k < n; ++k) sdot(k, i) += v.alpha_dot(j) * pair(k - 1);
    }

  VectorXc cdot = VectorXc::Zero(n);
  if (spec.g)
    for (int k = 0; k < n; ++k) cdot(k) = (k % 2 == 0 ? 1.0 : -1.0) * (*spec.g)[n - k - 1];
  v.m_dot = s.partialPivLu().solve(VectorXc(cdot - sdot * m));
  return v;
}

VectorXc eom_literal_alpha(const FlowState& state) {
  if (state.collided) throw CollisionError("eom_literal_alpha: collided state");
  const MatrixXc s = sigma_matrix(state.config.positions);
  const VectorXc c = s * state.config.masses;
  return s.partialPivLu().solve(c);
}

Trajectory integrate(const FlowSpec& spec, cplx t0, cplx t1, int steps, double tol) {
  validate(spec, tol);
  if (steps < 1) throw InvalidInput("integrate: steps must be positive");
  Trajectory out;
  const FlowState start = state_for(spec, t0, tol);
  out.states.push_back(start);
  if (start.collided) {
    out.halted = true;
    CollisionEvent e;
    e.t_star = t0;
    out.event = e;
    return out;
  }
  if (t0 == t1) return out;

  const cplx dir = t1 - t0;
  double stop = 2.0;
  for (const CollisionEvent& e : collisions(spec, tol)) {
    const double s = std::real((e.t_star - t0) * std::conj(dir)) / std::norm(dir);
    if (s < 0.0 || s > 1.0) continue;
    if (std::abs(t0 + s * dir - e.t_star) > 1e-8 * (1.0 + std::abs(e.t_star))) continue;
    if (s < stop) {
      stop = s;
      out.event = e;
    }
  }

  const int n = spec.n();
  const cplx h = dir / static_cast<double>(steps);
  auto field = [&](cplx t, const VectorXc& y) {
    FlowState st;
    st.t = t;
    st.config.positions = y.head(n);
    st.config.masses = y.tail(n);
    const Velocity v = eom_field(st, spec);
    VectorXc dy(2 * n);
    dy << v.alpha_dot, v.m_dot;
    return dy;
  };

  VectorXc y(2 * n);
  y << start.config.positions, start.config.masses;
  for (int k = 0; k < steps; ++k) {
    if (static_cast<double>(k + 1) / steps >= stop) {
      out.halted = true;
      break;
    }
    const cplx t = t0 + h * static_cast<double>(k);
    try {
      const VectorXc k1 = field(t, y);
      const VectorXc k2 = field(t + h / 2.0, y + h / 2.0 * k1);
      const VectorXc k3 = field(t + h / 2.0, y + h / 2.0 * k2);
      const VectorXc k4 = field(t + h, y + h * k3);
      y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const CollisionError&) {
      out.halted = true;
      if (!out.event) {
        CollisionEvent e;
        e.t_star = t;
        out.event = e;
      }
      break;
    }
    FlowState st;
    st.t = t0 + h * static_cast<double>(k + 1);
    st.config.positions = y.head(n);
    st.config.masses = y.tail(n);
    out.states.push_back(std::move(st));
  }
  return out;
}

PositivityReport positivity_intervals(const FlowSpec& spec, double t_lo, double t_hi, int grid,
                                      double tol) {
  validate(spec, tol);
  if (grid < 1 || !(t_lo < t_hi)) throw InvalidInput("positivity_intervals: bad range or grid");
  PositivityReport rep;
  for (const CollisionEvent& e : collisions(spec, tol)) {
    const double re = e.t_star.real();
    if (std::abs(e.t_star.imag()) <= 1e-9 * (1.0 + std::abs(re)) && re >= t_lo && re <= t_hi)
      rep.collision_times.push_back(re);
  }
  std::sort(rep.collision_times.begin(), rep.collision_times.end());

  auto positive = [&](double t) {
    const FlowState s = state_for(spec, t, tol);
    if (s.collided) return false;
    for (const cplx m : s.config.masses) {
      if (std::abs(m.imag()) > 1e-9 * std::max(1.0, std::abs(m))) {
        rep.nonreal_masses = true;
        return false;
      }
      if (m.real() <= 0.0) return false;
    }
    return true;
  };
  // Boundary between a and b where positive(a) != positive(b).
  auto refine = [&](double a, double b) {
    const bool pa = positive(a);
    while (b - a > 1e-9) {
      const double c = 0.5 * (a + b);
      (positive(c) == pa ? a : b) = c;
    }
    return pa ? a : b;
  };

  std::vector<double> ts(grid + 1);
  std::vector<bool> pos(grid + 1);
  for (int k = 0; k <= grid; ++k) {
    ts[k] = k == grid ? t_hi : t_lo + (t_hi - t_lo) * k / grid;
    pos[k] = positive(ts[k]);
  }
  std::optional<double> open;
  if (pos[0]) open = t_lo;
  for (int k = 0; k < grid; ++k) {
    const double a = ts[k], b = ts[k + 1];
    if (pos[k] && pos[k + 1]) {
      for (double c : rep.collision_times)
        if (c > a && c < b) {
          rep.intervals.emplace_back(*open, c);
          open = c;
        }
    } else if (pos[k] && !pos[k + 1]) {
      rep.intervals.emplace_back(*open, refine(a, b));
      open.reset();
    } else if (!pos[k] && pos[k + 1]) {
      open = refine(a, b);
    }
  }
  if (open) rep.intervals.emplace_back(*open, t_hi);
  return rep;
}

}  // namespace isofocal
