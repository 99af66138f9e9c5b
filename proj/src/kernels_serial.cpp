#include "jt/kernels.hpp"

#include "jt/errors.hpp"

namespace jt::kernels {

PositionMoments& PositionMoments::operator+=(const PositionMoments& o) {
  w += o.w;
  x += o.x;
  y += o.y;
  xx += o.xx;
  yy += o.yy;
  sx += o.sx;
  sy += o.sy;
  sz += o.sz;
  x_sx += o.x_sx;
  y_sy += o.y_sy;
  return *this;
}

MomentumMoments& MomentumMoments::operator+=(const MomentumMoments& o) {
  w += o.w;
  px += o.px;
  py += o.py;
  p2 += o.p2;
  return *this;
}

namespace serial {

void build_kinetic_phase(const Grid2D& grid, double omega, double dt, double scale,
                         cspan phase) {
  const std::size_t n = grid.n();
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      phase[grid.index(ix, iy)] =
          kinetic_factor(grid.momentum(ix), grid.momentum(iy), omega, dt, scale);
    }
  }
}

void build_local_unitary(const Grid2D& grid, const ModelParams& params, double dt,
                         LocalUnitary& out) {
  const std::size_t n = grid.n();
  out.diag.resize(grid.size());
  out.upper.resize(grid.size());
  out.lower.resize(grid.size());
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const std::size_t i = grid.index(ix, iy);
      local_unitary_at(grid.position(ix), grid.position(iy), params, dt, out.diag[i],
                       out.upper[i], out.lower[i]);
    }
  }
}

void multiply_phase(cspan c1, cspan c2, ccspan phase) {
  for (std::size_t i = 0; i < phase.size(); ++i) {
    c1[i] *= phase[i];
    c2[i] *= phase[i];
  }
}

void apply_local_unitary(cspan c1, cspan c2, const LocalUnitary& u) {
  for (std::size_t i = 0; i < u.diag.size(); ++i) {
    const auto a = c1[i];
    const auto b = c2[i];
    c1[i] = u.diag[i] * a + u.upper[i] * b;
    c2[i] = u.lower[i] * a + u.diag[i] * b;
  }
}

PositionMoments position_moments(const Grid2D& grid, ccspan c1, ccspan c2) {
  PositionMoments m;
  const std::size_t n = grid.n();
  for (std::size_t iy = 0; iy < n; ++iy) {
    const double y = grid.position(iy);
    for (std::size_t ix = 0; ix < n; ++ix) {
      const double x = grid.position(ix);
      const std::size_t i = grid.index(ix, iy);
      const double d1 = std::norm(c1[i]);
      const double d2 = std::norm(c2[i]);
      const auto cross = std::conj(c1[i]) * c2[i];
      const double w = d1 + d2;
      const double sx = 2.0 * cross.real();
      const double sy = 2.0 * cross.imag();
      m.w += w;
      m.x += x * w;
      m.y += y * w;
      m.xx += x * x * w;
      m.yy += y * y * w;
      m.sx += sx;
      m.sy += sy;
      m.sz += d1 - d2;
      m.x_sx += x * sx;
      m.y_sy += y * sy;
    }
  }
  return m;
}

MomentumMoments momentum_moments(const Grid2D& grid, ccspan c1, ccspan c2) {
  MomentumMoments m;
  const std::size_t n = grid.n();
  for (std::size_t iy = 0; iy < n; ++iy) {
    const double py = grid.momentum(iy);
    for (std::size_t ix = 0; ix < n; ++ix) {
      const double px = grid.momentum(ix);
      const std::size_t i = grid.index(ix, iy);
      const double w = std::norm(c1[i]) + std::norm(c2[i]);
      m.w += w;
      m.px += px * w;
      m.py += py * w;
      m.p2 += (px * px + py * py) * w;
    }
  }
  return m;
}

}  // namespace serial
}  // namespace jt::kernels
