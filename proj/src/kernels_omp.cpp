#include <vector>

#include "jt/kernels.hpp"

namespace jt::kernels::parallel {

namespace {

std::ptrdiff_t signed_size(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

}  // namespace

void build_kinetic_phase(const Grid2D& grid, double omega, double dt, double scale,
                         cspan phase) {
  const std::size_t n = grid.n();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t iy = 0; iy < signed_size(n); ++iy) {
    const double py = grid.momentum(static_cast<std::size_t>(iy));
    for (std::size_t ix = 0; ix < n; ++ix) {
      phase[grid.index(ix, static_cast<std::size_t>(iy))] =
          kinetic_factor(grid.momentum(ix), py, omega, dt, scale);
    }
  }
}

void build_local_unitary(const Grid2D& grid, const ModelParams& params, double dt,
                         LocalUnitary& out) {
  const std::size_t n = grid.n();
  out.diag.resize(grid.size());
  out.upper.resize(grid.size());
  out.lower.resize(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t iy = 0; iy < signed_size(n); ++iy) {
    const auto row = static_cast<std::size_t>(iy);
    const double y = grid.position(row);
    for (std::size_t ix = 0; ix < n; ++ix) {
      const std::size_t i = grid.index(ix, row);
      local_unitary_at(grid.position(ix), y, params, dt, out.diag[i], out.upper[i],
                       out.lower[i]);
    }
  }
}

void multiply_phase(cspan c1, cspan c2, ccspan phase) {
  const auto size = signed_size(phase.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < size; ++i) {
    c1[i] *= phase[i];
    c2[i] *= phase[i];
  }
}

void apply_local_unitary(cspan c1, cspan c2, const LocalUnitary& u) {
  const auto size = signed_size(u.diag.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < size; ++i) {
    const auto a = c1[i];
    const auto b = c2[i];
    c1[i] = u.diag[i] * a + u.upper[i] * b;
    c2[i] = u.lower[i] * a + u.diag[i] * b;
  }
}

PositionMoments position_moments(const Grid2D& grid, ccspan c1, ccspan c2) {
  const std::size_t n = grid.n();
  std::vector<PositionMoments> rows(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t iy = 0; iy < signed_size(n); ++iy) {
    const auto row = static_cast<std::size_t>(iy);
    const double y = grid.position(row);
    PositionMoments m;
    for (std::size_t ix = 0; ix < n; ++ix) {
      const double x = grid.position(ix);
      const std::size_t i = grid.index(ix, row);
      const double d1 = std::norm(c1[i]);
      const double d2 = std::norm(c2[i]);
      const auto cross = std::conj(c1[i]) * c2[i];
      const double w = d1 + d2;
      const double sx = 2.0 * cross.real();
      const double sy = 2.0 * cross.imag();
      m.w += w;
      m.x += x * w;
      m.xx += x * x * w;
      m.sx += sx;
      m.sy += sy;
      m.sz += d1 - d2;
      m.x_sx += x * sx;
      m.y_sy += sy;  // scaled by y below
    }
    m.y = y * m.w;
    m.yy = y * y * m.w;
    m.y_sy *= y;
    rows[row] = m;
  }
  PositionMoments total;
  for (const auto& r : rows) total += r;
  return total;
}

MomentumMoments momentum_moments(const Grid2D& grid, ccspan c1, ccspan c2) {
  const std::size_t n = grid.n();
  std::vector<MomentumMoments> rows(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t iy = 0; iy < signed_size(n); ++iy) {
    const auto row = static_cast<std::size_t>(iy);
    const double py = grid.momentum(row);
    MomentumMoments m;
    double p2x = 0.0;
    for (std::size_t ix = 0; ix < n; ++ix) {
      const double px = grid.momentum(ix);
      const std::size_t i = grid.index(ix, row);
      const double w = std::norm(c1[i]) + std::norm(c2[i]);
      m.w += w;
      m.px += px * w;
      p2x += px * px * w;
    }
    m.py = py * m.w;
    m.p2 = p2x + py * py * m.w;
    rows[row] = m;
  }
  MomentumMoments total;
  for (const auto& r : rows) total += r;
  return total;
}

}  // namespace jt::kernels::parallel
