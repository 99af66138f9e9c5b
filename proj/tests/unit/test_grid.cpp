#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "jt/errors.hpp"
#include "jt/fourier.hpp"
#include "jt/grid.hpp"

using namespace jt;

namespace {

constexpr double kPi = std::numbers::pi;

// O(n^4) transform straight from the definition
ComplexArray naive_dft(const ComplexArray& f, std::size_t n, int sign) {
  ComplexArray out(n * n);
  for (std::size_t ky = 0; ky < n; ++ky) {
    for (std::size_t kx = 0; kx < n; ++kx) {
      std::complex<double> acc{};
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
          const double ang = sign * 2.0 * kPi * static_cast<double>(kx * x + ky * y) / n;
          acc += f[y * n + x] * std::polar(1.0, ang);
        }
      }
      out[ky * n + kx] = acc;
    }
  }
  return out;
}

ComplexArray random_array(std::size_t size, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexArray a(size);
  for (auto& v : a) v = {g(rng), g(rng)};
  return a;
}

}  // namespace

TEST_CASE("grid geometry") {
  const Grid2D g(256, 25.0);
  CHECK(g.spacing() == doctest::Approx(50.0 / 256));
  CHECK(g.momentum_spacing() == doctest::Approx(kPi / 25.0));
  CHECK(g.position(0) == -25.0);
  CHECK(g.position(128) == doctest::Approx(0.0));
  CHECK(g.momentum(1) == doctest::Approx(kPi / 25.0));
  CHECK(g.momentum(255) == doctest::Approx(-kPi / 25.0));
  CHECK(g.momentum(128) == doctest::Approx(-kPi / g.spacing()));
  CHECK(g.momentum_natural(0) == doctest::Approx(-kPi / g.spacing()));
  for (std::size_t i = 0; i < g.n(); ++i) {
    CHECK(g.momentum(g.fft_index(i)) == doctest::Approx(g.momentum_natural(i)));
  }
  CHECK(g.origin_index() == g.index(128, 128));

  CHECK_THROWS_AS(Grid2D(4, 1.0), PreconditionError);
  CHECK_THROWS_AS(Grid2D(12, 1.0), PreconditionError);
  CHECK_THROWS_AS(Grid2D(16, 0.0), PreconditionError);
}

TEST_CASE("Fourier transform") {
  const std::size_t n = 8;
  const FourierTransform ft(n);
  const auto f = random_array(n * n, 3);

  SUBCASE("forward and inverse match the defining sums") {
    auto a = f;
    ft.forward(a);
    const auto ref = naive_dft(f, n, -1);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - ref[i]) < 1e-12);
    auto b = f;
    ft.inverse_unnormalized(b);
    const auto refb = naive_dft(f, n, +1);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(b[i] - refb[i]) < 1e-12);
  }

  SUBCASE("round trip and Parseval on a large grid") {
    const auto g = random_array(256 * 256, 5);
    auto a = g;
    const auto& big = fourier(256);
    big.forward(a);
    double sp = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      sq += std::norm(g[i]);
      sp += std::norm(a[i]);
    }
    CHECK(sp / (256.0 * 256.0) == doctest::Approx(sq).epsilon(1e-12));
    big.inverse(a);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - g[i]));
    CHECK(worst < 1e-12);
  }

  CHECK_THROWS_AS(ft.forward(std::span<std::complex<double>>{}), PreconditionError);
  CHECK(&fourier(64) == &fourier(64));
}

TEST_CASE("Gaussian packet moments") {
  const Grid2D g(256, 25.0);
  const auto f = make_gaussian(g, {10.0, 0.0}, 1.0);
  CHECK(norm(f) == doctest::Approx(1.0).epsilon(1e-12));
  const auto q = expectation_position(f);
  CHECK(std::abs(q.x - 10.0) < 1e-10);
  CHECK(std::abs(q.y) < 1e-10);
  const auto p = expectation_momentum(f);
  CHECK(std::abs(p.x) < 1e-10);
  CHECK(std::abs(p.y) < 1e-10);
  const auto var = position_variance(f);
  CHECK(var.x == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(var.y == doctest::Approx(0.5).epsilon(1e-8));
  for (const auto& v : f.c2) CHECK(v == std::complex<double>{});

  SUBCASE("momentum density") {
    const auto d = densities(f);
    const double dp = g.momentum_spacing();
    double w = 0.0, p2 = 0.0, pos = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
      for (std::size_t i = 0; i < g.n(); ++i) {
        const double m = d.momentum[j * g.n() + i];
        w += m;
        p2 += m * g.momentum_natural(i) * g.momentum_natural(i);
        pos += d.position[j * g.n() + i];
      }
    }
    CHECK(w * dp * dp == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(pos * g.cell_area() == doctest::Approx(1.0).epsilon(1e-10));
    // 1/(2 sigma^2) per axis
    CHECK(p2 / w == doctest::Approx(0.5).epsilon(1e-8));
    // peak of the position density at the packet centre
    const auto peak = std::max_element(d.position.begin(), d.position.end());
    const auto at = static_cast<std::size_t>(peak - d.position.begin());
    // 10 is not a grid point; the peak sits in the nearest cell
    CHECK(std::abs(g.position(at % g.n()) - 10.0) <= 0.5 * g.spacing());
    CHECK(std::abs(g.position(at / g.n())) < 1e-12);
  }

  SUBCASE("packet too close to the edge") {
    CHECK_THROWS_AS(make_gaussian(g, {21.0, 0.0}, 1.0), SupportError);
    CHECK_THROWS_AS(make_gaussian(g, {0.0, 0.0}, -1.0), PreconditionError);
  }
}

TEST_CASE("momentum boost shifts the mean momentum") {
  const Grid2D g(256, 25.0);
  auto f = make_gaussian(g, {1.0, -2.0}, 1.0);
  apply_momentum_boost(f, {0.37, -1.2});
  const auto p = expectation_momentum(f);
  CHECK(p.x == doctest::Approx(0.37).epsilon(1e-8));
  CHECK(p.y == doctest::Approx(-1.2).epsilon(1e-8));
  CHECK(norm(f) == doctest::Approx(1.0).epsilon(1e-12));
  // Lz = x py - y px for a boosted real packet
  CHECK(expectation_lz(f) == doctest::Approx(1.0 * -1.2 - (-2.0) * 0.37).epsilon(1e-8));
}

TEST_CASE("observables are invariant under a global phase") {
  const Grid2D g(128, 20.0);
  auto f = make_gaussian(g, {3.0, 1.0}, 1.2);
  apply_momentum_boost(f, {0.5, 0.25});
  // mix some amplitude into channel two
  for (std::size_t i = 0; i < g.size(); ++i) {
    f.c2[i] = std::complex<double>{0.3, -0.4} * f.c1[i];
    f.c1[i] *= std::sqrt(1.0 - 0.25);
  }
  const ModelParams m{0.02, 0.01};
  auto h = f;
  const auto phase = std::polar(1.0, 0.9);
  for (std::size_t i = 0; i < g.size(); ++i) {
    h.c1[i] *= phase;
    h.c2[i] *= phase;
  }
  const auto sa = spin_expectations(f);
  const auto sb = spin_expectations(h);
  for (int c = 0; c < 3; ++c) CHECK(sa[c] == doctest::Approx(sb[c]).epsilon(1e-13));
  CHECK(expectation_momentum(f).x == doctest::Approx(expectation_momentum(h).x).epsilon(1e-12));
  CHECK(expectation_position(f).y == doctest::Approx(expectation_position(h).y).epsilon(1e-12));
  CHECK(expectation_energy(f, m) == doctest::Approx(expectation_energy(h, m)).epsilon(1e-12));
  CHECK(expectation_jz(f) == doctest::Approx(expectation_jz(h)).epsilon(1e-12));
  CHECK(adiabatic_populations(f).lower ==
        doctest::Approx(adiabatic_populations(h).lower).epsilon(1e-12));
}

TEST_CASE("energy of the initial packet") {
  // <T> = omega/(2 sigma^2), <V> = omega (x0^2 + sigma^2)/2, <k q.sigma> = 0
  const Grid2D g(256, 25.0);
  const ModelParams m{0.02, 0.01};
  for (double sigma : {0.7, 1.0, 1.5}) {
    const auto f = make_gaussian(g, {10.0, 0.0}, sigma);
    const double oracle = m.omega / (2 * sigma * sigma) + m.omega * (100.0 + sigma * sigma) / 2;
    CHECK(expectation_energy(f, m) == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("spin, angular momentum and adiabatic populations of the initial packet") {
  const Grid2D g(256, 25.0);
  const auto f = make_gaussian(g, {10.0, 0.0}, 1.0);
  const auto s = spin_expectations(f);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == 0.0);
  CHECK(s[2] == doctest::Approx(1.0));
  CHECK(std::abs(expectation_lz(f)) < 1e-10);
  CHECK(expectation_jz(f) == doctest::Approx(0.5).epsilon(1e-10));

  const auto two = make_gaussian(g, {10.0, 0.0}, 1.0, Channel::two);
  CHECK(spin_expectations(two)[2] == doctest::Approx(-1.0));
  CHECK(expectation_jz(two) == doctest::Approx(-0.5).epsilon(1e-10));

  const auto pops = adiabatic_populations(f);
  CHECK(pops.lower + pops.upper == doctest::Approx(1.0).epsilon(1e-10));

  SUBCASE("populations against explicit projection") {
    // a packet covering the intersection, with both channels populated
    auto h = make_gaussian(g, {0.7, -0.4}, 1.5);
    apply_momentum_boost(h, {0.3, 0.6});
    for (std::size_t i = 0; i < g.size(); ++i) {
      h.c2[i] = std::complex<double>{0.0, 0.6} * h.c1[i];
      h.c1[i] *= 0.8;
    }
    double lower = 0.0, upper = 0.0;
    for (std::size_t iy = 0; iy < g.n(); ++iy) {
      for (std::size_t ix = 0; ix < g.n(); ++ix) {
        const std::size_t i = g.index(ix, iy);
        Vec2 q{g.position(ix), g.position(iy)};
        if (i == g.origin_index()) q = {g.spacing(), 0.0};
        const auto st = adiabatic_states(q);
        const Spinor v{h.c1[i], h.c2[i]};
        lower += std::norm(inner(st.lower, v));
        upper += std::norm(inner(st.upper, v));
      }
    }
    const auto got = adiabatic_populations(h);
    CHECK(got.lower == doctest::Approx(lower * g.cell_area()).epsilon(1e-12));
    CHECK(got.upper == doctest::Approx(upper * g.cell_area()).epsilon(1e-12));
    CHECK(got.lower + got.upper == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("projected distributions") {
  const Grid2D g(256, 25.0);
  const auto f = make_gaussian(g, {0.0, 0.0}, 1.0);
  const auto py = projected_distribution(f, Axis::y);
  REQUIRE(py.size() == g.n());
  CHECK(std::accumulate(py.begin(), py.end(), 0.0) * g.spacing() ==
        doctest::Approx(1.0).epsilon(1e-10));
  const auto peak = std::max_element(py.begin(), py.end()) - py.begin();
  CHECK(static_cast<std::size_t>(peak) == g.n() / 2);
  for (std::size_t i = 1; i < g.n() / 2; ++i) {
    CHECK(py[g.n() / 2 + i] == doctest::Approx(py[g.n() / 2 - i]).epsilon(1e-12));
  }

  const auto shifted = make_gaussian(g, {-1.0, 2.0}, 1.0);
  const auto m = projected_distribution(shifted, Axis::y);
  double mean = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) mean += g.position(i) * m[i] * g.spacing();
  CHECK(mean == doctest::Approx(2.0).epsilon(1e-8));
  const auto mx = projected_distribution(shifted, Axis::x);
  mean = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) mean += g.position(i) * mx[i] * g.spacing();
  CHECK(mean == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("Fourier derivative of a Gaussian") {
  // <px> of a boosted packet is the Fourier derivative; compare the
  // derivative field itself against the analytic one
  const Grid2D g(128, 20.0);
  const auto f = make_gaussian(g, {1.0, 0.5}, 1.0);
  auto d = f.c1;
  const auto& ft = fourier(g.n());
  ft.forward(d);
  for (std::size_t iy = 0; iy < g.n(); ++iy) {
    for (std::size_t ix = 0; ix < g.n(); ++ix) {
      d[g.index(ix, iy)] *= std::complex<double>{0.0, g.momentum(ix)};
    }
  }
  ft.inverse(d);
  double worst = 0.0;
  for (std::size_t iy = 0; iy < g.n(); ++iy) {
    for (std::size_t ix = 0; ix < g.n(); ++ix) {
      const std::size_t i = g.index(ix, iy);
      const double analytic = -(g.position(ix) - 1.0) * std::real(f.c1[i]);
      worst = std::max(worst, std::abs(d[i] - analytic));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("zero norm and edge monitor") {
  const Grid2D g(64, 10.0);
  SpinorField empty(g);
  CHECK(norm(empty) == 0.0);
  CHECK_THROWS_AS(expectation_position(empty), ZeroNormError);
  CHECK_THROWS_AS(spin_expectations(empty), ZeroNormError);
  const auto f = make_gaussian(g, {0.0, 0.0}, 1.0);
  CHECK(edge_density(f) < 1e-8);
  auto e = f;
  e.c1[g.index(0, 30)] = 1.0;
  CHECK(edge_density(e) == doctest::Approx(1.0));
}
