#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fsscomp/analytic.hpp"
#include "fsscomp/metrics.hpp"

using namespace fsscomp;
using Catch::Approx;

namespace {

const CascadeParams kDot{3.0, 1.0, 0.5};

// Independent check of the characteristic-function factor: Simpson quadrature
// of ∫ e^{iωt}(1/τ)e^{−t/τ} dt on [0, 40τ].
cplx quad_char_fn(double omega, double tau) {
  const int n = 200000;  // even
  const double h = 40.0 * tau / n;
  auto f = [&](double t) {
    return std::polar(1.0, omega * t) * std::exp(-t / tau) / tau;
  };
  cplx s = f(0.0) + f(40.0 * tau);
  for (int i = 1; i < n; ++i) s += f(i * h) * ((i % 2) ? 4.0 : 2.0);
  return s * (h / 3.0);
}

}  // namespace

TEST_CASE("characteristic function of the exponential distribution") {
  // The closed form behind analytic_coherence, validated by quadrature.
  for (double omega : {0.0, 1.0, 4.5578, -2.2})
    for (double tau : {0.5, 1.0, 2.0}) {
      const cplx closed = 1.0 / (cplx{1.0, -omega * tau});
      const cplx quad = quad_char_fn(omega, tau);
      CHECK(std::abs(closed - quad) < 1e-6);
    }
}

TEST_CASE("analytic_coherence") {
  SECTION("perfect compensation") {
    CHECK(std::abs(analytic_coherence(0.0, 0.0, 0.0, kDot).c - 1.0) < 1e-12);
  }
  SECTION("uncompensated fss=3 baseline") {
    const double omega = precession_rate(kDot);
    const cplx c = analytic_coherence(omega, 0.0, 0.0, kDot).c;
    // Recompute from the Lorentzian: c = (1 + iω)/(1 + ω²) at τ_x = 1.
    const double denom = 1.0 + omega * omega;
    CHECK(c.real() == Approx(1.0 / denom).margin(1e-12));
    CHECK(c.imag() == Approx(omega / denom).margin(1e-12));
    CHECK(c.real() == Approx(0.04593).margin(1e-5));
    CHECK(c.imag() == Approx(0.209327).margin(1e-5));
    CHECK(std::abs(c) == Approx(0.214306).margin(1e-5));
    const auto rho = analytic_density(omega, 0.0, 0.0, kDot);
    CHECK(fidelity(rho, bell_state(BellTarget::PhiPlus)) ==
          Approx(0.52296).margin(1e-5));
  }
  SECTION("unit mismatch on the exciton axis") {
    const cplx c = analytic_coherence(1.0, 0.0, 0.0, kDot).c;
    CHECK(std::abs(c) == Approx(0.70711).margin(1e-5));
    const auto rho = analytic_density(1.0, 0.0, 0.0, kDot);
    CHECK(fidelity(rho, bell_state(BellTarget::PhiPlus)) == Approx(0.75).margin(1e-9));
  }
  SECTION("magnitude bounded by 1") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 200; ++i)
      CHECK(std::abs(analytic_coherence(u(rng), u(rng), u(rng), kDot).c) <=
            1.0 + 1e-12);
  }
}

TEST_CASE("analytic_density") {
  SECTION("limits") {
    CHECK(max_abs_diff(analytic_density(0.0, 0.0, 0.0, kDot).m,
                       density_from_ket(bell_state(BellTarget::PhiPlus)).m) < 1e-12);
    CHECK(max_abs_diff(analytic_density(0.0, 0.0, kPi, kDot).m,
                       density_from_ket(bell_state(BellTarget::PhiMinus)).m) < 1e-12);
  }
  SECTION("uncompensated concurrence") {
    const auto rho = analytic_density(precession_rate(kDot), 0.0, 0.0, kDot);
    CHECK(concurrence(rho) == Approx(0.214306).margin(1e-5));
  }
  SECTION("always a valid density matrix") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(-8.0, 8.0);
    for (int i = 0; i < 100; ++i)
      CHECK(validate_density(
                analytic_density(u(rng), u(rng), u(rng), kDot), 1e-10)
                .pass);
  }
}

TEST_CASE("coherence magnitude decreases monotonically in each mismatch") {
  for (int i = 0; i + 1 < 40; ++i) {
    const double a = 0.25 * i, b = 0.25 * (i + 1);
    CHECK(std::abs(analytic_coherence(b, 0.0, 0.0, kDot).c) <
          std::abs(analytic_coherence(a, 0.0, 0.0, kDot).c) + 1e-15);
    CHECK(std::abs(analytic_coherence(0.0, b, 0.0, kDot).c) <
          std::abs(analytic_coherence(0.0, a, 0.0, kDot).c) + 1e-15);
  }
}

TEST_CASE("d_omega2 hurts less than d_omega1 when tau_xx < tau_x") {
  for (double x : {0.1, 0.5, 1.0, 2.0, 4.5578, 8.0}) {
    const double c_d1 = std::abs(analytic_coherence(x, 0.0, 0.0, kDot).c);
    const double c_d2 = std::abs(analytic_coherence(0.0, x, 0.0, kDot).c);
    CHECK(c_d1 < c_d2);
  }
}

TEST_CASE("delay sweep closed form: rotating constant phase, full concurrence") {
  const double rate = precession_rate(kDot);
  const auto phi_plus = density_from_ket(bell_state(BellTarget::PhiPlus));
  const auto phi_minus = density_from_ket(bell_state(BellTarget::PhiMinus));
  for (double dt : {0.0, 0.2, 0.6893, 1.0, 1.3786, 2.5}) {
    const auto rho = analytic_density(0.0, 0.0, rate * dt, kDot);
    CHECK(concurrence(rho) == Approx(1.0).margin(1e-9));
    CHECK(fidelity(rho, phi_plus) ==
          Approx(0.5 * (1.0 + std::cos(rate * dt))).margin(1e-9));
    CHECK(fidelity(rho, phi_minus) ==
          Approx(0.5 * (1.0 - std::cos(rate * dt))).margin(1e-9));
  }
  // Period of the fidelity oscillation.
  CHECK(2.0 * kPi / rate == Approx(1.3786).margin(1e-3));
}

TEST_CASE("gated_coherence") {
  const double omega = precession_rate(kDot);

  SECTION("large gate recovers the ungated Lorentzian") {
    const auto [c, acc] = gated_coherence(50.0, omega, 1.0);
    CHECK(acc == Approx(1.0).margin(1e-12));
    CHECK(std::abs(c - analytic_coherence(omega, 0.0, 0.0, kDot).c) < 1e-9);
  }
  SECTION("tiny gate keeps a near-perfect state and almost nothing") {
    const auto [c, acc] = gated_coherence(1e-4, omega, 1.0);
    CHECK(acc == Approx(1e-4).epsilon(1e-3));
    CHECK(std::abs(c) == Approx(1.0).margin(1e-4));
  }
  SECTION("frozen acceptance at 0.2 ns") {
    const auto [c, acc] = gated_coherence(0.2, omega, 1.0);
    CHECK(acc == Approx(0.1813).margin(1e-4));
    CHECK(std::abs(c) <= 1.0 + 1e-12);
  }
  SECTION("bad inputs rejected") {
    CHECK_THROWS_AS(gated_coherence(0.0, omega, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gated_coherence(0.2, omega, 0.0), std::invalid_argument);
  }
}

TEST_CASE("gated_coherence matches rejection sampling") {
  const double omega = precession_rate(kDot);
  const double tau = 1.0;
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double t_gate : {0.2, 0.6, 1.5}) {
    const int n = 1000000;
    int kept = 0;
    cplx sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = -tau * std::log(1.0 - u(rng));
      if (t < t_gate) {
        ++kept;
        sum += std::polar(1.0, omega * t);
      }
    }
    const auto [c, acc] = gated_coherence(t_gate, omega, tau);
    CHECK(static_cast<double>(kept) / n == Approx(acc).margin(3e-3));
    CHECK(std::abs(sum / static_cast<double>(kept) - c) < 3e-3);
  }
}
