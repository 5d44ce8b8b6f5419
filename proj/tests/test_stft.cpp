#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gst/numerics.hpp"
#include "gst/stft.hpp"
#include "oracles.hpp"

using namespace gst;

TEST_CASE("kernel closed form vs quadrature, n,m <= 12") {
  Rng rng(901);
  std::vector<PhasePoint> pts;
  for (int i = 0; i < 25; ++i) {
    double r = 6.0 * std::sqrt(rng.uniform());
    double a = rng.uniform();
    pts.push_back(unit_dir(a) * r);
  }
  double worst = 0.0;
  for (int n = 0; n <= 12; ++n) {
    for (int m = 0; m <= 12; ++m) {
      HermiteExpansion hn = HermiteExpansion::basis(n);
      HermiteExpansion hm = HermiteExpansion::basis(m);
      for (auto z : pts) {
        cdouble got = stft_kernel(n, m, z);
        cdouble want = oracle::stft_by_quadrature(hn, hm, z);
        worst = std::max(worst, std::abs(got - want));
      }
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("ground state transform decay law") {
  // |V_{h0} h0(z)| e^{pi |z|^2 / 2} = 1 on |z| <= 4.
  HermiteExpansion h0 = HermiteExpansion::basis(0);
  for (double r : {0.0, 0.5, 1.5, 2.5, 4.0}) {
    for (double a : {0.0, 0.13, 0.4, 0.77}) {
      PhasePoint z = unit_dir(a) * r;
      double v = std::abs(stft_point(h0, h0, z)) * std::exp(0.5 * kPi * z.norm2());
      CHECK(std::fabs(v - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("stft_point is bilinear and bounded by Cauchy-Schwarz") {
  Rng rng(902);
  for (int trial = 0; trial < 20; ++trial) {
    HermiteExpansion f = random_expansion(10, 1000 + trial);
    HermiteExpansion g = random_expansion(6, 2000 + trial);
    PhasePoint z{rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
    CHECK(std::abs(stft_point(f, g, z)) <= f.norm() * g.norm() + 1e-12);
    cdouble s(rng.normal(), rng.normal());
    CHECK(std::abs(stft_point(f * s, g, z) - s * stft_point(f, g, z)) <= 1e-12);
    CHECK(std::abs(stft_point(f, g * s, z) - std::conj(s) * stft_point(f, g, z)) <=
          1e-12);
  }
}

TEST_CASE("kernel table validates declared ranges") {
  STFTKernelTable table(12, 8);
  CHECK(std::abs(table(3, 2, {0.5, -0.25}) - stft_kernel(3, 2, {0.5, -0.25})) == 0.0);
  CHECK_THROWS_AS(table(13, 0, {0, 0}), precondition_error);
  CHECK_THROWS_AS(table(0, 9, {0, 0}), precondition_error);
  CHECK_THROWS_AS(STFTKernelTable(65, 0), precondition_error);
}

TEST_CASE("expansion transform vs quadrature for random pairs") {
  Rng rng(903);
  double worst = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    HermiteExpansion f = random_expansion(8, 3000 + trial);
    HermiteExpansion g = random_expansion(5, 4000 + trial);
    PhasePoint z{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    worst = std::max(worst,
                     std::abs(stft_point(f, g, z) - oracle::stft_by_quadrature(f, g, z)));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("orthogonality relation on the plane grid") {
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    HermiteExpansion f = random_expansion(8, 5000 + trial);
    HermiteExpansion g = random_expansion(8, 6000 + trial);
    worst = std::max(worst, orthogonality_residual(f, f, g, g, {8.0, 0.1}));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("orthogonality residual for cross pairs") {
  HermiteExpansion f1 = random_expansion(6, 7001);
  HermiteExpansion f2 = random_expansion(6, 7002);
  HermiteExpansion g1 = random_expansion(4, 7003);
  HermiteExpansion g2 = random_expansion(4, 7004);
  CHECK(orthogonality_residual(f1, f2, g1, g2, {8.0, 0.1}) <= 1e-6);
}

TEST_CASE("coarse grids are rejected") {
  HermiteExpansion h0 = HermiteExpansion::basis(0);
  CHECK_THROWS_AS(orthogonality_residual(h0, h0, h0, h0, {8.0, 0.26}),
                  precondition_error);
  CHECK_NOTHROW(orthogonality_residual(h0, h0, h0, h0, {8.0, 0.2}));
}

TEST_CASE("symplectic covariance holds across angles and points") {
  Rng rng(904);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    HermiteExpansion f = random_expansion(7, 8000 + trial);
    HermiteExpansion g = random_expansion(4, 9000 + trial);
    PhasePoint z{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    for (double theta : {0.125, 1.0 / 3.0, 0.77})
      worst = std::max(worst, covariance_residual(f, g, theta, z));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("lift of the ground state pair is constant one") {
  HermiteExpansion h0 = HermiteExpansion::basis(0);
  for (double r : {0.0, 0.7, 1.3, 2.0}) {
    for (double a : {0.05, 0.3, 0.62}) {
      PhasePoint w = unit_dir(a) * r;
      CHECK(std::abs(polyanalytic_lift(h0, h0, w) - cdouble(1.0, 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("lift against a pure window is polyanalytic of its order") {
  // For a finite expansion against window h_n the lift is a polynomial in
  // (w, conj w) of anti-holomorphic degree n, so (d/d conj w)^{n+1} kills it.
  HermiteExpansion f = random_expansion(5, 777);
  for (int n : {0, 1, 2}) {
    HermiteExpansion g = HermiteExpansion::basis(n);
    auto F = [&](Vec2 w) { return polyanalytic_lift(f, g, w); };
    int deg = f.degree() + n;
    for (Vec2 w : {Vec2{0.3, 0.2}, Vec2{-0.8, 0.5}, Vec2{0.1, -1.0}}) {
      CHECK(std::abs(oracle::dbar_power_poly(F, w, n + 1, deg)) <= 1e-5);
    }
    // Sensitivity: a planted conj(w)^{n+1} term is flagged at full size.
    auto bad = [&](Vec2 w) {
      cdouble wc(w.x, -w.y);
      cdouble extra(1.0, 0.0);
      for (int k = 0; k <= n; ++k) extra *= wc;
      return F(w) + 0.1 * extra;
    };
    double expect = 0.1 * factorial(n + 1);
    cdouble got = oracle::dbar_power_poly(bad, {0.3, 0.2}, n + 1, deg + n + 1);
    CHECK(std::abs(got) == doctest::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("lift of h_1 window has the expected anti-holomorphic factor") {
  // V against window h_1 with ground-state signal lifts to -sqrt(pi) conj(w).
  HermiteExpansion h0 = HermiteExpansion::basis(0);
  HermiteExpansion h1 = HermiteExpansion::basis(1);
  CHECK(std::abs(polyanalytic_lift(h0, h1, {0.0, 0.0})) <= 1e-12);
  auto F = [&](Vec2 w) { return polyanalytic_lift(h0, h1, w); };
  for (Vec2 w : {Vec2{0.4, -0.3}, Vec2{-0.2, 0.6}}) {
    cdouble want = -std::sqrt(kPi) * cdouble(w.x, -w.y);
    CHECK(std::abs(F(w) - want) <= 1e-10);
  }
}
