#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "jt/errors.hpp"
#include "jt/model.hpp"

using namespace jt;

namespace {

const ModelParams kRef{0.02, 0.01};
constexpr double kPi = std::numbers::pi;

// eigenvalues of a Hermitian 2x2 from trace and determinant
std::array<double, 2> eigenvalues(const Mat2& m) {
  const double tr = std::real(m(0, 0) + m(1, 1));
  const double det = std::real(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  return {tr / 2.0 - disc, tr / 2.0 + disc};
}

double expect(const Spinor& v, const Mat2& m) { return std::real(inner(v, m * v)); }

}  // namespace

TEST_CASE("model parameters are validated") {
  CHECK_NOTHROW(kRef.validate());
  CHECK_THROWS_AS((ModelParams{0.0, 0.01}.validate()), PreconditionError);
  CHECK_THROWS_AS((ModelParams{0.02, -1e-3}.validate()), PreconditionError);
  CHECK_THROWS_AS((ModelParams{NAN, 0.01}.validate()), PreconditionError);
  CHECK_NOTHROW((ModelParams{0.02, 0.0}.validate()));
}

TEST_CASE("diabatic potential by direct substitution") {
  auto p = diabatic_potential({0, 0}, kRef);
  CHECK(p.a == 0.0);
  CHECK(p.b == std::array<double, 3>{0, 0, 0});

  p = diabatic_potential({10, 0}, kRef);
  CHECK(p.a == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.b[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(p.b[1] == 0.0);

  p = diabatic_potential({3, 4}, kRef);
  CHECK(p.a == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p.b[0] == doctest::Approx(0.03).epsilon(1e-15));
  CHECK(p.b[1] == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(p.b[2] == 0.0);

  const Mat2 m = p.matrix();
  CHECK(is_hermitian(m));
  const auto back = PauliDecomposition::from_matrix(m);
  CHECK(back.a == doctest::Approx(p.a));
  CHECK(back.b[0] == doctest::Approx(p.b[0]));
  CHECK(back.b[1] == doctest::Approx(p.b[1]));
}

TEST_CASE("adiabatic energies") {
  auto e = adiabatic_energies({0, 0}, kRef);
  CHECK(e.lower == 0.0);
  CHECK(e.upper == 0.0);
  e = adiabatic_energies({10, 0}, kRef);
  CHECK(e.lower == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(e.upper == doctest::Approx(1.1).epsilon(1e-14));
  e = adiabatic_energies({0, -5}, kRef);
  CHECK(e.lower == doctest::Approx(0.20).epsilon(1e-14));
  CHECK(e.upper == doctest::Approx(0.30).epsilon(1e-14));

  SUBCASE("match the eigenvalues of the potential matrix on a grid") {
    for (double x = -12.0; x <= 12.0; x += 1.7) {
      for (double y = -12.0; y <= 12.0; y += 1.3) {
        const auto ev = eigenvalues(diabatic_potential({x, y}, kRef).matrix());
        const auto ad = adiabatic_energies({x, y}, kRef);
        CHECK(ad.lower == doctest::Approx(ev[0]).epsilon(1e-13));
        CHECK(ad.upper == doctest::Approx(ev[1]).epsilon(1e-13));
        CHECK(ad.upper - ad.lower == doctest::Approx(2.0 * kRef.k * std::hypot(x, y)));
      }
    }
  }
}

TEST_CASE("adiabatic states diagonalise the coupling") {
  CHECK_THROWS_AS(adiabatic_states({0, 0}), SingularPointError);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec2 q{u(rng), u(rng)};
    const auto s = adiabatic_states(q);
    const double rho = std::hypot(q.x, q.y);
    auto coupling = diabatic_potential(q, kRef);
    coupling.a = 0.0;
    const Mat2 bs = coupling.matrix();
    CHECK(norm(s.lower) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(norm(s.upper) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(inner(s.upper, s.lower)) < 1e-15);
    CHECK(expect(s.lower, bs) == doctest::Approx(-kRef.k * rho).epsilon(1e-13));
    CHECK(expect(s.upper, bs) == doctest::Approx(kRef.k * rho).epsilon(1e-13));
    // eigenvector, not only the right expectation value
    const Spinor r = bs * s.lower;
    CHECK(std::abs(r[0] + kRef.k * rho * s.lower[0]) < 1e-15);
    CHECK(std::abs(r[1] + kRef.k * rho * s.lower[1]) < 1e-15);
  }

  SUBCASE("phi = 0") {
    const auto s = adiabatic_states({1, 0});
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.lower[0] - h) < 1e-15);
    CHECK(std::abs(s.lower[1] + h) < 1e-15);
    CHECK(std::abs(s.upper[0] - h) < 1e-15);
    CHECK(std::abs(s.upper[1] - h) < 1e-15);
  }

  SUBCASE("half-angle double valuedness across the branch") {
    const auto a = adiabatic_states_at_angle(kPi);
    const auto b = adiabatic_states_at_angle(-kPi);
    for (int c = 0; c < 2; ++c) {
      CHECK(std::abs(a.lower[c] + b.lower[c]) < 1e-15);
      CHECK(std::abs(a.upper[c] + b.upper[c]) < 1e-15);
    }
    const auto at = adiabatic_states({-1, 0});
    CHECK(std::abs(at.lower[0] - a.lower[0]) < 1e-15);
  }
}

TEST_CASE("gauge potential as written") {
  CHECK_THROWS_AS(gauge_potential({0, 0}), SingularPointError);
  auto g = gauge_potential({1, 0});
  CHECK(max_abs(g.ax) == 0.0);
  CHECK(max_abs(g.ay + pauli::y) < 1e-15);
  CHECK(g.phi == doctest::Approx(1.0 / 8.0));
  g = gauge_potential({0, 2});
  CHECK(max_abs(g.ax - cplx{0.5} * pauli::y) < 1e-15);
  CHECK(max_abs(g.ay) == 0.0);
  CHECK(g.phi == doctest::Approx(1.0 / 32.0));
  for (const Vec2 q : {Vec2{0.3, -2.0}, Vec2{-4.0, 1.5}, Vec2{7.0, 7.0}}) {
    const auto s = gauge_potential(q);
    CHECK(max_abs(cplx{q.x} * s.ax + cplx{q.y} * s.ay) < 1e-15);
  }
}

TEST_CASE("field tensor is flat away from the intersection") {
  CHECK(max_abs(field_tensor({5, 0})) < 1e-6);
  CHECK(max_abs(field_tensor({0, -7})) < 1e-6);
  CHECK_THROWS_AS(field_tensor({1e-3, 0}), SingularPointError);
  CHECK_THROWS_AS(field_tensor_central({0, 0}, 1e-3), SingularPointError);

  SUBCASE("central differences converge at second order") {
    const double r1 = max_abs(field_tensor_central({1, 1}, 0.04));
    const double r2 = max_abs(field_tensor_central({1, 1}, 0.02));
    CHECK(r2 < r1);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
  }

  SUBCASE("rho >= 0.5") {
    for (double r : {0.5, 0.8, 2.0, 9.0}) {
      for (int a = 0; a < 12; ++a) {
        const double phi = 2.0 * kPi * a / 12.0 + 0.05;
        CHECK(max_abs(field_tensor({r * std::cos(phi), r * std::sin(phi)})) < 1e-6);
      }
    }
  }
}

TEST_CASE("geometric phase around the intersection") {
  for (double r : {0.1, 1.0, 5.0}) {
    CHECK(berry_phase_loop(r, 1000) == doctest::Approx(kPi).epsilon(1e-12));
  }
  CHECK_THROWS_AS(berry_phase_loop(0.0, 1000), PreconditionError);
  CHECK_THROWS_AS(berry_phase_loop(1.0, 15), PreconditionError);

  SUBCASE("Wilson loop against the analytic overlap product") {
    // neighbouring overlaps of the lower state are cos(d/2) > 0; closing back
    // onto psi(0) from psi(2 pi - d) gives -cos(d/2)
    const std::size_t n = 1000;
    const double d = 2.0 * kPi / n;
    double oracle = -1.0;
    for (std::size_t j = 0; j < n; ++j) oracle *= std::cos(d / 2.0);
    const cplx w = berry_wilson_loop(5.0, n);
    CHECK(std::abs(w - cplx{oracle / std::abs(oracle)}) < 1e-6);
  }

  SUBCASE("gauge invariance under arbitrary state phases") {
    const std::size_t n = 64;
    std::vector<Spinor> states(n), rephased(n);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (std::size_t j = 0; j < n; ++j) {
      states[j] = adiabatic_states_at_angle(2.0 * kPi * j / n).lower;
      const cplx ph = std::polar(1.0, u(rng));
      rephased[j] = {ph * states[j][0], ph * states[j][1]};
    }
    const cplx a = wilson_loop(states.data(), n);
    const cplx b = wilson_loop(rephased.data(), n);
    CHECK(std::abs(a - b) < 1e-13);
    CHECK(std::abs(a + 1.0) < 1e-13);
  }

  SUBCASE("no intersection enclosed") {
    // loop of radius 1 centred at (5, 0)
    const std::size_t n = 400;
    std::vector<Spinor> states(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double t = 2.0 * kPi * j / n;
      states[j] = adiabatic_states({5.0 + std::cos(t), std::sin(t)}).lower;
    }
    CHECK(std::abs(wilson_loop(states.data(), n) - 1.0) < 1e-12);
  }
}

TEST_CASE("dual gauge algebra") {
  const auto d = dual_gauge(kRef);
  CHECK(max_abs(d.atilde_x + cplx{0.5} * pauli::x) == 0.0);
  CHECK(max_abs(d.atilde_y + cplx{0.5} * pauli::y) == 0.0);
  CHECK(d.bz_coefficient == 0.5);
  const Mat2 field = cplx{0.0, -1.0} * commutator(d.atilde_x, d.atilde_y);
  CHECK(max_abs(field - d.bz()) == 0.0);

  const auto zero = dual_gauge({0.02, 0.0});
  CHECK(max_abs(zero.atilde_x) == 0.0);
  CHECK(max_abs(zero.atilde_y) == 0.0);
  CHECK(zero.bz_coefficient == 0.0);
  CHECK(zero.phi_tilde == 0.0);

  CHECK(dual_gauge({0.02, 0.02}).bz_coefficient == doctest::Approx(2.0).epsilon(1e-15));

  SUBCASE("minimal-coupling expansion reproduces the diabatic potential") {
    // omega/2 sum_j (q_j - Atilde_j)^2 + Phi_tilde == omega rho^2/2 + k q.sigma
    for (const Vec2 q : {Vec2{10, 0}, Vec2{-3.5, 2.25}, Vec2{0.1, -8}}) {
      const Mat2 gx = cplx{q.x} * Mat2::identity() - d.atilde_x;
      const Mat2 gy = cplx{q.y} * Mat2::identity() - d.atilde_y;
      const Mat2 h = cplx{0.5 * kRef.omega} * (gx * gx + gy * gy) +
                     cplx{d.phi_tilde} * Mat2::identity();
      CHECK(max_abs(h - diabatic_potential(q, kRef).matrix()) < 1e-15);
    }
  }
}

TEST_CASE("dual Lorentz force") {
  auto f = dual_lorentz_force({10, 0}, 1.0, kRef);
  CHECK(f.x == 0.0);
  CHECK(f.y == doctest::Approx(5.0));
  f = dual_lorentz_force({10, 0}, -1.0, kRef);
  CHECK(f.y == doctest::Approx(-5.0));
  f = dual_lorentz_force({3, -4}, 0.0, kRef);
  CHECK(f.x == 0.0);
  CHECK(f.y == 0.0);
}
