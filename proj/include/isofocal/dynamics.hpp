#ifndef ISOFOCAL_DYNAMICS_HPP
#define ISOFOCAL_DYNAMICS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "isofocal/marden.hpp"

namespace isofocal {

/// Pencil phi + t f; g present for the bifocal deformation f + t g of the numerator.
struct FlowSpec {
  Poly phi;
  Poly f;
  std::optional<Poly> g;

  int n() const { return phi.degree(); }
  Poly phi_t(cplx t) const { return phi + f * t; }
  Poly numerator(cplx t) const { return g ? f + *g * t : f; }
};

/// Throws InvalidInput unless phi is monic of degree n >= 1, deg f, deg g <= n - 1
/// and f, phi are coprime.
void validate(const FlowSpec& spec, double tol = kDefaultTol);

struct FlowState {
  cplx t = 0.0;
  MassedConfig config;  ///< masses empty when collided
  bool collided = false;
  VectorXc foci;  ///< roots of the numerator (bifocal only)
};

struct CollisionEvent {
  cplx t_star = 0.0;
  cplx point = 0.0;            ///< where the positions meet
  std::vector<int> indices;    ///< labels of the colliding points, as tracked from t = 0
  int multiplicity = 0;        ///< multiplicity of the colliding root
  int disc_multiplicity = 0;   ///< order of vanishing of the discriminant
  bool simple = false;         ///< a single pair meets
};

FlowState isofocal_state(const FlowSpec& spec, cplx t, double tol = kDefaultTol);
FlowState bifocal_state(const FlowSpec& spec, cplx t, double tol = kDefaultTol);
/// Dispatches on spec.g.
FlowState flow_state(const FlowSpec& spec, cplx t, double tol = kDefaultTol);

std::vector<CollisionEvent> collisions(const FlowSpec& spec, double tol = kDefaultTol);

struct Velocity {
  VectorXc alpha_dot;
  VectorXc m_dot;
};

/// alpha_i' = -h(alpha_i) / prod_{j != i}(alpha_i - alpha_j) with h = f (positions move
/// along phi + t f); m' = a^{-1}(C' - a' m) with a the sigma matrix and C = a m.
Velocity eom_field(const FlowState& state, const FlowSpec& spec);

/// alpha' = a^{-1} C read literally as printed (no sign from differentiating phi_t).
VectorXc eom_literal_alpha(const FlowState& state);

struct Trajectory {
  std::vector<FlowState> states;
  bool halted = false;
  std::optional<CollisionEvent> event;
};

/// Classical RK4 of eom_field along the segment t0 -> t1, halting before any collision
/// moment on the segment.
Trajectory integrate(const FlowSpec& spec, cplx t0, cplx t1, int steps, double tol = kDefaultTol);

struct PositivityReport {
  std::vector<std::pair<double, double>> intervals;
  bool nonreal_masses = false;  ///< some sampled state had non-real masses
  std::vector<double> collision_times;  ///< real collision moments inside the range
};

PositivityReport positivity_intervals(const FlowSpec& spec, double t_lo, double t_hi, int grid,
                                      double tol = kDefaultTol);

/// Positions along ts with nearest-neighbour labelling; column k belongs to ts[k].
MatrixXc track_roots(const FlowSpec& spec, const std::vector<cplx>& ts);

}  // namespace isofocal

#endif  // ISOFOCAL_DYNAMICS_HPP
