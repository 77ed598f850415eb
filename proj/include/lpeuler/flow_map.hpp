#ifndef LPEULER_FLOW_MAP_HPP_
#define LPEULER_FLOW_MAP_HPP_

#include <functional>
#include <vector>

#include "lpeuler/field.hpp"

namespace lpeuler {

/// Forward flow map X_t sampled on an m x m lattice of initial points
/// (particle (i, j) starts at (i, j) l / m).
struct FlowMapCloud {
  int m = 0;
  double l = 0.0;
  double t = 0.0;
  std::vector<Vec2> positions;  // index i * m + j, not wrapped into the box

  static FlowMapCloud lattice(int m, double l);
};

/// Velocity field at time t (a 2-vector SpectralField).
using VelocityAt = std::function<SpectralField(double)>;

/// Evaluates a field at arbitrary points by summing its Fourier series.
std::vector<Vec2> sample_velocity(const SpectralField& u, const std::vector<Vec2>& points);

/// One RK4 step of dX/dt = u(t, X). Throws PreconditionError when the lattice
/// is coarser than a quarter of the field grid.
FlowMapCloud flow_map_advance(const FlowMapCloud& cloud, const VelocityAt& u_of_t, double dt);

struct FlowGradBounds {
  double grad = 0.0;        // sup ||grad X_t||
  double inv_grad = 0.0;    // sup ||(grad X_t)^{-1}||
  double log_product = 0.0; // log(inv_grad * grad)
  double det_min = 1.0;
  double det_max = 1.0;
  bool accuracy_warning = false;  // some det outside [0.9, 1.1]
};

/// grad X_t per particle by fourth-order centred differences on the lattice.
std::vector<Mat2> flow_gradients(const FlowMapCloud& cloud);
FlowGradBounds grad_flow_bounds(const FlowMapCloud& cloud);

}  // namespace lpeuler

#endif  // LPEULER_FLOW_MAP_HPP_
