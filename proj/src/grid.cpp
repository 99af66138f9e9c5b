#include "jt/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "jt/errors.hpp"
#include "jt/fourier.hpp"
#include "jt/kernels.hpp"

namespace jt {

namespace kp = kernels::parallel;

Grid2D::Grid2D(std::size_t n, double extent) : n_(n), extent_(extent) {
  if (n < 8 || !std::has_single_bit(n)) {
    throw PreconditionError("grid.n must be a power of two >= 8 (got " + std::to_string(n) + ")");
  }
  if (!std::isfinite(extent) || extent <= 0.0) {
    throw PreconditionError("grid.extent must be finite and > 0");
  }
  spacing_ = 2.0 * extent / static_cast<double>(n);
  dp_ = std::numbers::pi / extent;
}

namespace {

struct MomentumPair {
  ComplexArray c1;
  ComplexArray c2;
};

MomentumPair to_momentum(const SpinorField& field) {
  MomentumPair m{field.c1, field.c2};
  const auto& ft = fourier(field.grid.n());
  ft.forward(m.c1);
  ft.forward(m.c2);
  return m;
}

kernels::PositionMoments moments_of(const SpinorField& field) {
  return kp::position_moments(field.grid, field.c1, field.c2);
}

double require_weight(double w) {
  if (!(w > 0.0)) throw ZeroNormError("observable requested on a zero-norm field");
  return w;
}

}  // namespace

SpinorField make_gaussian(const Grid2D& grid, Vec2 center, double sigma, Channel channel) {
  if (!(sigma > 0.0)) throw PreconditionError("initial.sigma must be > 0");
  const double margin = 5.0 * sigma;
  const double lim = grid.extent();
  if (center.x - margin < -lim || center.x + margin > lim || center.y - margin < -lim ||
      center.y + margin > lim) {
    throw SupportError("Gaussian packet is closer than 5 sigma to the grid edge");
  }
  SpinorField field(grid);
  auto& target = channel == Channel::one ? field.c1 : field.c2;
  const double amp = 1.0 / std::sqrt(std::numbers::pi * sigma * sigma);
  const std::size_t n = grid.n();
  for (std::size_t iy = 0; iy < n; ++iy) {
    const double dy = grid.position(iy) - center.y;
    for (std::size_t ix = 0; ix < n; ++ix) {
      const double dx = grid.position(ix) - center.x;
      target[grid.index(ix, iy)] = amp * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
    }
  }
  const double scale = 1.0 / norm(field);
  for (auto& v : target) v *= scale;
  return field;
}

void apply_momentum_boost(SpinorField& field, Vec2 p0) {
  const auto& g = field.grid;
  for (std::size_t iy = 0; iy < g.n(); ++iy) {
    for (std::size_t ix = 0; ix < g.n(); ++ix) {
      const auto phase = std::polar(1.0, p0.x * g.position(ix) + p0.y * g.position(iy));
      const std::size_t i = g.index(ix, iy);
      field.c1[i] *= phase;
      field.c2[i] *= phase;
    }
  }
}

double norm_squared(const SpinorField& field) {
  return moments_of(field).w * field.grid.cell_area();
}

double norm(const SpinorField& field) { return std::sqrt(norm_squared(field)); }

Vec2 expectation_position(const SpinorField& field) {
  const auto m = moments_of(field);
  const double w = require_weight(m.w);
  return {m.x / w, m.y / w};
}

Vec2 position_variance(const SpinorField& field) {
  const auto m = moments_of(field);
  const double w = require_weight(m.w);
  const double mx = m.x / w;
  const double my = m.y / w;
  return {m.xx / w - mx * mx, m.yy / w - my * my};
}

Vec2 expectation_momentum(const SpinorField& field) {
  const auto mom = to_momentum(field);
  const auto m = kp::momentum_moments(field.grid, mom.c1, mom.c2);
  const double w = require_weight(m.w);
  return {m.px / w, m.py / w};
}

Densities densities(const SpinorField& field) {
  const auto& g = field.grid;
  const std::size_t n = g.n();
  Densities d;
  d.position.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    d.position[i] = std::norm(field.c1[i]) + std::norm(field.c2[i]);
  }
  const auto mom = to_momentum(field);
  // |phi(p)|^2 = (dx^2 / 2pi)^2 |FFT|^2
  const double scale = std::pow(g.cell_area() / (2.0 * std::numbers::pi), 2);
  d.momentum.resize(g.size());
  for (std::size_t jy = 0; jy < n; ++jy) {
    for (std::size_t jx = 0; jx < n; ++jx) {
      const std::size_t src = g.index(g.fft_index(jx), g.fft_index(jy));
      d.momentum[g.index(jx, jy)] = scale * (std::norm(mom.c1[src]) + std::norm(mom.c2[src]));
    }
  }
  return d;
}

std::vector<double> projected_distribution(const SpinorField& field, Axis axis) {
  const auto& g = field.grid;
  const std::size_t n = g.n();
  std::vector<double> marginal(n, 0.0);
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const std::size_t i = g.index(ix, iy);
      const double w = std::norm(field.c1[i]) + std::norm(field.c2[i]);
      marginal[axis == Axis::y ? iy : ix] += w;
    }
  }
  for (auto& v : marginal) v *= g.spacing();
  return marginal;
}

std::array<double, 3> spin_expectations(const SpinorField& field) {
  const auto m = moments_of(field);
  const double w = require_weight(m.w);
  return {m.sx / w, m.sy / w, m.sz / w};
}

AdiabaticPopulations adiabatic_populations(const SpinorField& field) {
  const auto& g = field.grid;
  const std::size_t n = g.n();
  // |<psi_-+|c>|^2 = (w -+ (x sx + y sy)/rho) / 2 pointwise: the spin density
  // projected on the radial coupling direction.
  std::vector<double> rows_lower(n, 0.0);
  std::vector<double> rows_total(n, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t iys = 0; iys < static_cast<std::ptrdiff_t>(n); ++iys) {
    const auto iy = static_cast<std::size_t>(iys);
    double lower = 0.0;
    double total = 0.0;
    for (std::size_t ix = 0; ix < n; ++ix) {
      double x = g.position(ix);
      double y = g.position(iy);
      if (x == 0.0 && y == 0.0) x = g.spacing();  // nearest off-origin projector
      const double rho = std::hypot(x, y);
      const std::size_t i = g.index(ix, iy);
      const auto cross = std::conj(field.c1[i]) * field.c2[i];
      const double w = std::norm(field.c1[i]) + std::norm(field.c2[i]);
      const double radial = (2.0 * x * cross.real() + 2.0 * y * cross.imag()) / rho;
      lower += 0.5 * (w - radial);
      total += w;
    }
    rows_lower[iy] = lower;
    rows_total[iy] = total;
  }
  double lower = 0.0;
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    lower += rows_lower[r];
    total += rows_total[r];
  }
  require_weight(total);
  return {lower / total, 1.0 - lower / total};
}

double expectation_lz(const SpinorField& field) {
  const auto& g = field.grid;
  const std::size_t n = g.n();
  const auto& ft = fourier(n);
  double lz = 0.0;
  double w = 0.0;
  for (const ComplexArray* channel : {&field.c1, &field.c2}) {
    ComplexArray spectrum = *channel;
    ft.forward(spectrum);
    ComplexArray dx(spectrum.size());
    ComplexArray dy(spectrum.size());
    for (std::size_t iy = 0; iy < n; ++iy) {
      for (std::size_t ix = 0; ix < n; ++ix) {
        const std::size_t i = g.index(ix, iy);
        dx[i] = g.momentum(ix) * spectrum[i];
        dy[i] = g.momentum(iy) * spectrum[i];
      }
    }
    ft.inverse(dx);  // px psi
    ft.inverse(dy);  // py psi
    const auto& c = *channel;
    for (std::size_t iy = 0; iy < n; ++iy) {
      const double y = g.position(iy);
      for (std::size_t ix = 0; ix < n; ++ix) {
        const std::size_t i = g.index(ix, iy);
        lz += std::real(std::conj(c[i]) * (g.position(ix) * dy[i] - y * dx[i]));
        w += std::norm(c[i]);
      }
    }
  }
  return lz / require_weight(w);
}

double expectation_jz(const SpinorField& field) {
  return expectation_lz(field) + 0.5 * spin_expectations(field)[2];
}

double expectation_energy(const SpinorField& field, const ModelParams& params) {
  const auto m = moments_of(field);
  const double w = require_weight(m.w);
  const auto mom = to_momentum(field);
  const auto mm = kp::momentum_moments(field.grid, mom.c1, mom.c2);
  const double kinetic = 0.5 * params.omega * mm.p2 / require_weight(mm.w);
  const double potential =
      (0.5 * params.omega * (m.xx + m.yy) + params.k * (m.x_sx + m.y_sy)) / w;
  return kinetic + potential;
}

double edge_density(const SpinorField& field) {
  const auto& g = field.grid;
  const std::size_t n = g.n();
  double worst = 0.0;
  for (std::size_t iy = 0; iy < n; ++iy) {
    const bool edge_row = iy < 2 || iy >= n - 2;
    for (std::size_t ix = 0; ix < n; ++ix) {
      if (!edge_row && ix >= 2 && ix < n - 2) continue;
      const std::size_t i = g.index(ix, iy);
      worst = std::max(worst, std::norm(field.c1[i]) + std::norm(field.c2[i]));
    }
  }
  return worst;
}

}  // namespace jt
