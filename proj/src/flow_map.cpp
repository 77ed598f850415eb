#include "lpeuler/flow_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lpeuler {

FlowMapCloud FlowMapCloud::lattice(int m, double l) {
  if (m < 4) throw DomainError("flow-map lattice needs at least 4 points per side");
  FlowMapCloud c;
  c.m = m;
  c.l = l;
  c.positions.reserve(static_cast<std::size_t>(m) * m);
  const double h = l / m;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) c.positions.emplace_back(i * h, j * h);
  }
  return c;
}

std::vector<Vec2> sample_velocity(const SpectralField& u, const std::vector<Vec2>& points) {
  const auto& g = *u.grid();
  const int n = g.n(), h = g.half();
  // Restrict the sums to rows and columns that carry retained modes.
  std::vector<int> rows, cols;
  for (int r = 0; r < n; ++r) {
    if ((g.mask().row(r) != 0.0).any()) rows.push_back(r);
  }
  for (int c = 0; c < h; ++c) {
    if ((g.mask().col(c) != 0.0).any()) cols.push_back(c);
  }
  const int nr = static_cast<int>(rows.size()), nc = static_cast<int>(cols.size());
  std::vector<Eigen::MatrixXcd> blocks;
  for (int comp = 0; comp < u.components(); ++comp) {
    Eigen::MatrixXcd b(nr, nc);
    for (int a = 0; a < nr; ++a) {
      for (int c = 0; c < nc; ++c) {
        // Columns past the first stand for a conjugate pair.
        b(a, c) = u.coeffs(comp)(rows[a], cols[c]) * (cols[c] == 0 ? 1.0 : 2.0);
      }
    }
    blocks.push_back(std::move(b));
  }
  std::vector<Vec2> out(points.size(), Vec2::Zero());
  parallel_for(points.size(), [&](std::size_t p) {
    Eigen::VectorXcd ex(nr), ey(nc);
    for (int a = 0; a < nr; ++a) ex(a) = std::polar(1.0, g.kx()(rows[a], 0) * points[p].x());
    for (int c = 0; c < nc; ++c) ey(c) = std::polar(1.0, g.ky()(0, cols[c]) * points[p].y());
    for (int comp = 0; comp < std::min(2, u.components()); ++comp) {
      out[p](comp) = (ex.transpose() * blocks[comp] * ey).real()(0);
    }
  });
  return out;
}

FlowMapCloud flow_map_advance(const FlowMapCloud& cloud, const VelocityAt& u_of_t, double dt) {
  const SpectralField u0 = u_of_t(cloud.t);
  if (u0.components() != 2) throw DomainError("flow map needs a 2-vector velocity");
  if (4 * cloud.m < u0.grid()->n()) {
    throw PreconditionError("particle lattice coarser than a quarter of the grid");
  }
  const SpectralField uh = u_of_t(cloud.t + 0.5 * dt);
  const SpectralField u1 = u_of_t(cloud.t + dt);
  const auto& x = cloud.positions;
  auto shifted = [&](const std::vector<Vec2>& k, double a) {
    std::vector<Vec2> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + a * k[i];
    return y;
  };
  const auto k1 = sample_velocity(u0, x);
  const auto k2 = sample_velocity(uh, shifted(k1, 0.5 * dt));
  const auto k3 = sample_velocity(uh, shifted(k2, 0.5 * dt));
  const auto k4 = sample_velocity(u1, shifted(k3, dt));
  FlowMapCloud out = cloud;
  out.t += dt;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.positions[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

std::vector<Mat2> flow_gradients(const FlowMapCloud& cloud) {
  const int m = cloud.m;
  const double h = cloud.l / m;
  // X(x + l e_k) = X(x) + l e_k: unwrap neighbours across the lattice edge.
  auto at = [&](int i, int j) -> Vec2 {
    const int wi = ((i % m) + m) % m, wj = ((j % m) + m) % m;
    const Vec2 shift((i - wi) / m * cloud.l, (j - wj) / m * cloud.l);
    return cloud.positions[static_cast<std::size_t>(wi) * m + wj] + shift;
  };
  std::vector<Mat2> out(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Vec2 dx = (8.0 * (at(i + 1, j) - at(i - 1, j)) - (at(i + 2, j) - at(i - 2, j))) / (12.0 * h);
      const Vec2 dy = (8.0 * (at(i, j + 1) - at(i, j - 1)) - (at(i, j + 2) - at(i, j - 2))) / (12.0 * h);
      Mat2 g;
      g.col(0) = dx;
      g.col(1) = dy;
      out[static_cast<std::size_t>(i) * m + j] = g;
    }
  }
  return out;
}

FlowGradBounds grad_flow_bounds(const FlowMapCloud& cloud) {
  FlowGradBounds b;
  b.det_min = std::numeric_limits<double>::infinity();
  b.det_max = -std::numeric_limits<double>::infinity();
  for (const Mat2& g : flow_gradients(cloud)) {
    const double det = g.determinant();
    b.det_min = std::min(b.det_min, det);
    b.det_max = std::max(b.det_max, det);
    b.grad = std::max(b.grad, spectral_norm(g));
    if (det == 0.0) {
      b.inv_grad = std::numeric_limits<double>::infinity();
    } else {
      b.inv_grad = std::max(b.inv_grad, spectral_norm(g.inverse()));
    }
  }
  b.log_product = std::log(b.inv_grad * b.grad);
  b.accuracy_warning = b.det_min < 0.9 || b.det_max > 1.1;
  return b;
}

}  // namespace lpeuler
