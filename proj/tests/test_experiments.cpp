#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fsscomp/experiments.hpp"

using namespace fsscomp;
using Catch::Approx;

namespace {
const CascadeParams kDot{3.0, 1.0, 0.5};
const McConfig kFastMc{3, 10000, 1e-6, 200000};
}  // namespace

TEST_CASE("sweep_mismatch grid contract") {
  const auto res = sweep_mismatch(kDot, {-5.0, 5.0}, {-5.0, 5.0}, 5, 7, kFastMc,
                                  SweepMethod::Analytic);
  REQUIRE(res.rows.size() == 35);
  CHECK(res.rows.front().d_omega1 == Approx(-5.0));
  CHECK(res.rows.front().d_omega2 == Approx(-5.0));
  CHECK(res.rows.back().d_omega1 == Approx(5.0));
  CHECK(res.rows.back().d_omega2 == Approx(5.0));
  for (const auto& r : res.rows) {
    CHECK(r.concurrence >= 0.0);
    CHECK(r.concurrence <= 1.0 + 1e-9);
    CHECK(r.fidelity_phi_plus <= 1.0 + 1e-9);
  }

  CHECK_THROWS_AS(sweep_mismatch(kDot, {-5.0, 5.0}, {-5.0, 5.0}, 1, 5, kFastMc,
                                 SweepMethod::Analytic),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep_mismatch(kDot, {5.0, -5.0}, {-5.0, 5.0}, 5, 5, kFastMc,
                                 SweepMethod::Analytic),
                  std::invalid_argument);
}

TEST_CASE("sweep_mismatch key points") {
  const auto res = sweep_mismatch(kDot, {0.0, precession_rate(kDot)},
                                  {0.0, 1.0}, 2, 2, kFastMc, SweepMethod::Analytic);
  // (0,0): perfect compensation.
  CHECK(res.rows[0].fidelity_phi_plus == Approx(1.0).margin(1e-9));
  CHECK(res.rows[0].concurrence == Approx(1.0).margin(1e-9));
  // (rate, 0): the uncompensated baseline by construction.
  CHECK(res.rows[2].fidelity_phi_plus == Approx(0.523).margin(1e-3));
  CHECK(res.rows[2].concurrence == Approx(0.214).margin(1e-3));
}

TEST_CASE("analytic concurrence factorizes over the two axes") {
  const auto grid = sweep_mismatch(kDot, {-4.0, 4.0}, {-4.0, 4.0}, 9, 9, kFastMc,
                                   SweepMethod::Analytic);
  const auto axis1 = sweep_mismatch(kDot, {-4.0, 4.0}, {0.0, 0.0}, 9, 2, kFastMc,
                                    SweepMethod::Analytic);
  const auto axis2 = sweep_mismatch(kDot, {0.0, 0.0}, {-4.0, 4.0}, 2, 9, kFastMc,
                                    SweepMethod::Analytic);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      const double c1 = axis1.rows[2 * i].concurrence;
      const double c2 = axis2.rows[j].concurrence;
      CHECK(grid.rows[9 * i + j].concurrence == Approx(c1 * c2).margin(1e-9));
    }
}

TEST_CASE("monte carlo sweep rows agree with analytic rows") {
  McConfig cfg{17, 10000, 1e-6, 1000000};
  const auto mc = sweep_mismatch(kDot, {-3.0, 3.0}, {-3.0, 3.0}, 3, 3, cfg,
                                 SweepMethod::MonteCarlo);
  const auto an = sweep_mismatch(kDot, {-3.0, 3.0}, {-3.0, 3.0}, 3, 3, cfg,
                                 SweepMethod::Analytic);
  REQUIRE(mc.rows.size() == an.rows.size());
  for (std::size_t i = 0; i < mc.rows.size(); ++i) {
    CHECK(mc.rows[i].n_samples > 0);
    CHECK(mc.rows[i].fidelity_phi_plus ==
          Approx(an.rows[i].fidelity_phi_plus).margin(3e-3));
    CHECK(mc.rows[i].concurrence == Approx(an.rows[i].concurrence).margin(3e-3));
  }
}

TEST_CASE("sweep_delay") {
  const auto res =
      sweep_delay(kDot, {0.0, 3.0}, 61, kFastMc, SweepMethod::Analytic);
  REQUIRE(res.rows.size() == 61);
  const double rate = precession_rate(kDot);
  for (const auto& r : res.rows) {
    CHECK(r.concurrence == Approx(1.0).margin(1e-9));
    CHECK(r.fidelity_phi_plus ==
          Approx(0.5 * (1.0 + std::cos(rate * r.delta_t))).margin(1e-9));
    CHECK(r.fidelity_phi_plus + r.fidelity_phi_minus == Approx(1.0).margin(1e-9));
  }
  CHECK(res.rows[0].fidelity_phi_plus == Approx(1.0).margin(1e-9));
}

TEST_CASE("gating_tradeoff") {
  const auto rows = gating_tradeoff(kDot, {0.05, 10.0}, 40);
  REQUIRE(rows.size() == 40);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    CHECK(rows[i + 1].acceptance > rows[i].acceptance);
  // The coherence decays strictly only up to the first precession period;
  // past it, it spirals into the Lorentzian limit (verified against
  // rejection sampling in the analytic tests).
  const double period = 2.0 * kPi / precession_rate(kDot);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    if (rows[i + 1].t_gate <= period)
      CHECK(rows[i + 1].concurrence < rows[i].concurrence);
  CHECK(rows.back().acceptance == Approx(1.0).margin(1e-4));
  CHECK(rows.back().concurrence == Approx(0.214).margin(1e-3));
  CHECK(rows.front().concurrence > 0.99);
  CHECK(rows.front().acceptance < 0.05);

  CHECK_THROWS_AS(gating_tradeoff(kDot, {0.0, 1.0}, 5), std::invalid_argument);
}

TEST_CASE("sweep CSV format") {
  const auto res = sweep_mismatch(kDot, {0.0, 1.0}, {0.0, 1.0}, 2, 2, kFastMc,
                                  SweepMethod::Analytic);
  std::ostringstream os;
  write_csv(res, os);
  const std::string text = os.str();
  CHECK(text.rfind("d_omega1_rad_ns, d_omega2_rad_ns, delta_t_ns, "
                   "fidelity_phi_plus, fidelity_phi_minus, concurrence, "
                   "purity, n_samples, method\n",
                   0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);  // header + 4 rows
  CHECK(text.find("\r") == std::string::npos);
  CHECK(text.find("analytic") != std::string::npos);
}

TEST_CASE("gating CSV format") {
  std::ostringstream os;
  write_csv(gating_tradeoff(kDot, {0.1, 1.0}, 3), os);
  const std::string text = os.str();
  CHECK(text.rfind("t_gate_ns, acceptance, fidelity_phi_plus, concurrence\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
