#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gst/frame.hpp"
#include "gst/hermite.hpp"
#include "gst/stft.hpp"
#include "gst/trajectory.hpp"

using namespace gst;

namespace {

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return g;
}

// Brute-force oracle for the periodic translate sum: explicit finite list
// wide enough that the remainder is far below double precision.
double brute_periodic_sum(const HermiteExpansion& g, double eta, double t) {
  double sum = 0.0;
  int k_max = static_cast<int>(std::ceil(60.0 / eta));
  for (int k = -k_max; k <= k_max; ++k)
    sum += std::norm(eval_expansion(g, t - k * eta));
  return sum;
}

QuadratureSet plane_quadrature(double extent, double step) {
  GridSpec grid = GridSpec::centered(extent, step);
  QuadratureSet q;
  q.nodes = grid.points();
  q.weights.assign(q.nodes.size(), step * step);
  q.spacing = step;
  return q;
}

}  // namespace

TEST_CASE("periodic translate sums of the Gaussian reach the Riemann value") {
  HermiteExpansion h0 = HermiteExpansion::basis(0);
  for (double eta : {0.1, 0.05}) {
    auto grid = uniform_grid(0.0, eta, 301);
    auto bounds = line_frame_bounds(h0, 0.0, OffsetSet::arithmetic(eta), grid);
    // sum_k |h0(t - k eta)|^2 is a Riemann sum of ||h0||^2 / eta = 1/eta,
    // with exponentially small ripple.
    CHECK(bounds.A == doctest::Approx(1.0 / eta).epsilon(0.01));
    CHECK(bounds.B == doctest::Approx(1.0 / eta).epsilon(0.01));
    CHECK(bounds.A <= bounds.B);
  }
}

TEST_CASE("periodic machinery agrees with a wide explicit offset list") {
  HermiteExpansion g = HermiteExpansion::basis(2) + HermiteExpansion::basis(0) * 0.7;
  double eta = 0.3;
  for (double t : {0.0, 0.11, 1.7, -2.3}) {
    auto periodic = line_frame_bounds(g, 0.0, OffsetSet::arithmetic(eta), {t});
    CHECK(periodic.A == doctest::Approx(brute_periodic_sum(g, eta, t)).epsilon(1e-12));
  }
}

TEST_CASE("integer translates of h1 cover its zero") {
  HermiteExpansion h1 = HermiteExpansion::basis(1);
  auto grid = uniform_grid(0.0, 1.0, 501);
  auto bounds = line_frame_bounds(h1, 0.0, OffsetSet::arithmetic(1.0), grid);
  // h1(0) = 0, but the translates at +-1 are nonzero there.
  CHECK(bounds.A > 0.05);
  CHECK(bounds.B < 3.0);
}

TEST_CASE("a single Gaussian translate is not a frame over a wide grid") {
  HermiteExpansion h0 = HermiteExpansion::basis(0);
  auto grid = uniform_grid(-6.0, 6.0, 1201);
  auto bounds = line_frame_bounds(h0, 0.0, OffsetSet::finite({0.0}), grid);
  CHECK(bounds.A < 1e-4);                                    // tail of the Gaussian
  CHECK(bounds.B == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));  // |h0(0)|^2
}

TEST_CASE("offset and grid shifts cancel exactly") {
  // Dyadic data keeps every addition exact, so the two runs must agree
  // bit for bit.
  HermiteExpansion g = HermiteExpansion::basis(0) + HermiteExpansion::basis(3) * 0.25;
  std::vector<double> offsets = {-0.25, 0.375, 0.5};
  std::vector<double> grid;
  for (int i = -64; i <= 64; ++i) grid.push_back(i / 64.0);
  double c = 17.0 / 8.0;
  std::vector<double> offsets_shifted, grid_shifted;
  for (double v : offsets) offsets_shifted.push_back(v + c);
  for (double v : grid) grid_shifted.push_back(v + c);
  auto base = line_frame_bounds(g, 0.125, OffsetSet::finite(offsets), grid);
  auto shifted =
      line_frame_bounds(g, 0.125, OffsetSet::finite(offsets_shifted), grid_shifted);
  CHECK(base.A == shifted.A);
  CHECK(base.B == shifted.B);
}

TEST_CASE("rotating a single-term window leaves the translate sum unchanged") {
  HermiteExpansion h0 = HermiteExpansion::basis(0);
  auto grid = uniform_grid(0.0, 0.5, 101);
  auto straight = line_frame_bounds(h0, 0.0, OffsetSet::arithmetic(0.5), grid);
  auto turned = line_frame_bounds(h0, 0.3, OffsetSet::arithmetic(0.5), grid);
  // The rotation only multiplies the lone coefficient by a unit phase.
  CHECK(turned.A == doctest::Approx(straight.A).epsilon(1e-13));
  CHECK(turned.B == doctest::Approx(straight.B).epsilon(1e-13));
}

TEST_CASE("line bound preconditions") {
  HermiteExpansion h0 = HermiteExpansion::basis(0);
  CHECK_THROWS_AS(OffsetSet::finite({}), precondition_error);
  CHECK_THROWS_AS(OffsetSet::arithmetic(0.0), precondition_error);
  CHECK_THROWS_AS(OffsetSet::arithmetic(-1.0), precondition_error);
  CHECK_THROWS_AS(
      line_frame_bounds(h0, 0.0, OffsetSet::arithmetic(1.0), {}),
      precondition_error);
}

TEST_CASE("perturbation criterion uses the exact Gaussian norms") {
  HermiteExpansion h0 = HermiteExpansion::basis(0);
  auto crit = delta_criterion(h0, 0.5);
  CHECK(crit.norms.l2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(crit.norms.deriv == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  CHECK(crit.norms.t_weighted ==
        doctest::Approx(0.5 / std::sqrt(kPi)).epsilon(1e-12));
  CHECK(crit.norms.t_weighted_deriv ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  double c = 2.0 * 0.5 / kPi;
  double expected =
      c * (std::sqrt(kPi) + 0.5 / std::sqrt(kPi) + c * std::sqrt(3.0) / 2.0);
  CHECK(crit.delta == doctest::Approx(expected).epsilon(1e-12));
  CHECK(crit.satisfied);
  CHECK_FALSE(crit.has_sampling_bounds);
}

TEST_CASE("perturbation criterion is strictly monotone in the scale") {
  HermiteExpansion g = HermiteExpansion::basis(0) + HermiteExpansion::basis(1) * 0.3;
  double prev = -1.0;
  for (int i = 0; i <= 20; ++i) {
    auto crit = delta_criterion(g, 0.1 * i);
    CHECK(crit.delta > prev);
    prev = crit.delta;
  }
  CHECK(delta_criterion(g, 0.0).delta == 0.0);
  CHECK(delta_criterion(g, 0.0).satisfied);
  CHECK_THROWS_AS(delta_criterion(g, -0.1), precondition_error);
}

TEST_CASE("sampling bounds appear only when the criterion holds") {
  HermiteExpansion h0 = HermiteExpansion::basis(0);
  auto crit = delta_criterion(h0, 0.5, std::make_pair(2.0, 5.0));
  REQUIRE(crit.satisfied);
  CHECK(crit.has_sampling_bounds);
  CHECK(crit.lower_bound ==
        doctest::Approx(2.0 * (1.0 - crit.delta) * (1.0 - crit.delta)).epsilon(1e-13));
  CHECK(crit.upper_bound ==
        doctest::Approx(5.0 * (1.0 + crit.delta) * (1.0 + crit.delta)).epsilon(1e-13));
  auto vacuous = delta_criterion(h0, 5.0, std::make_pair(2.0, 5.0));
  CHECK_FALSE(vacuous.satisfied);
  CHECK_FALSE(vacuous.has_sampling_bounds);
  CHECK_THROWS_AS(delta_criterion(h0, 0.5, std::make_pair(5.0, 2.0)),
                  precondition_error);
}

TEST_CASE("critical scale of the Gaussian window") {
  HermiteExpansion h0 = HermiteExpansion::basis(0);
  double rstar = delta_critical_radius(h0);
  // Delta(R) is a quadratic a R^2 + b R with known coefficients, so the
  // crossing Delta = 1 has the closed form below.
  double a = 4.0 / (kPi * kPi) * (std::sqrt(3.0) / 2.0);
  double b = 2.0 / kPi * (std::sqrt(kPi) + 0.5 / std::sqrt(kPi));
  double oracle = (-b + std::sqrt(b * b + 4.0 * a)) / (2.0 * a);
  CHECK(rstar == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(std::fabs(rstar - 0.6509) < 1e-3);
  CHECK(delta_criterion(h0, rstar * 0.999).satisfied);
  CHECK_FALSE(delta_criterion(h0, rstar * 1.001).satisfied);
  CHECK_THROWS_AS(delta_critical_radius(HermiteExpansion{}), precondition_error);
}

TEST_CASE("plane quadrature reproduces the identity Gram") {
  HermiteExpansion h0 = HermiteExpansion::basis(0);
  auto quad = plane_quadrature(6.0, 0.05);
  auto report = gram_frame_bounds(h0, quad, 4, "plane grid");
  CHECK(report.N == 4);
  CHECK(report.h == 0.05);
  CHECK(report.warning.empty());
  CHECK(report.A_N == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(report.B_N == doctest::Approx(1.0).epsilon(1e-3));
  // Off-diagonal mass: orthogonality of distinct transforms on the plane.
  int dim = 5;
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m)
      if (n != m) CHECK(std::abs(report.gram[n * dim + m]) < 1e-6);
}

TEST_CASE("single-node Gram entries match direct transform products") {
  HermiteExpansion g = HermiteExpansion::basis(0) + HermiteExpansion::basis(2) * cdouble(0.3, -0.4);
  QuadratureSet quad;
  quad.nodes = {PhasePoint{0.7, -0.4}};
  quad.weights = {1.0};
  quad.spacing = 0.01;
  int N = 5;
  auto report = gram_frame_bounds(g, quad, N);
  for (int n = 0; n <= N; ++n) {
    cdouble vn = stft_point(HermiteExpansion::basis(n), g, quad.nodes[0]);
    for (int m = 0; m <= N; ++m) {
      cdouble vm = stft_point(HermiteExpansion::basis(m), g, quad.nodes[0]);
      CHECK(std::abs(report.gram[n * (N + 1) + m] - vm * std::conj(vn)) < 1e-13);
    }
  }
}

TEST_CASE("concentric circles at spacing 1/2 sample the low section") {
  auto t = make_circles(0.5, 12);  // radii up to 6
  auto quad = quadrature(t, 0.05);
  auto report = gram_frame_bounds(HermiteExpansion::basis(0), quad, 8, "O_0.5");
  CHECK(report.A_N > 0.05);
  CHECK(report.B_N < 50.0);
  CHECK(report.A_N <= report.B_N);
  // Hermiticity of the assembled matrix.
  int dim = 9;
  double asym = 0.0;
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m)
      asym = std::max(asym,
                      std::abs(report.gram[n * dim + m] -
                               std::conj(report.gram[m * dim + n])));
  CHECK(asym <= 1e-12);
  CHECK(report.eigenvalues.size() == 9);
  CHECK(std::is_sorted(report.eigenvalues.begin(), report.eigenvalues.end()));
}

TEST_CASE("a single circle pins the closed-form diagonal Gram") {
  // With the Gaussian window, V_g h_n on |z| = r is a pure angular harmonic,
  // so the Gram is diagonal with entries 2 pi r e^{-pi r^2} (pi r^2)^n / n!.
  // High modes decay factorially: one circle loses them, but only beyond
  // n ~ pi r^2, so the lower bound at N=8 is still visible.
  auto t = make_circles(1.0, 1);
  auto quad = quadrature(t, 0.02);
  auto report = gram_frame_bounds(HermiteExpansion::basis(0), quad, 8, "one circle");
  std::vector<double> diag;
  double fact = 1.0;
  for (int n = 0; n <= 8; ++n) {
    if (n > 0) fact *= n;
    diag.push_back(kTwoPi * std::exp(-kPi) * std::pow(kPi, n) / fact);
  }
  std::sort(diag.begin(), diag.end());
  REQUIRE(report.eigenvalues.size() == diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i)
    CHECK(report.eigenvalues[i] == doctest::Approx(diag[i]).epsilon(1e-9));
  CHECK(report.A_N == doctest::Approx(kTwoPi * std::exp(-kPi) *
                                      std::pow(kPi, 8) / 40320.0).epsilon(1e-9));
  // The deficiency the circle geometry implies shows up at higher sections.
  auto wide = gram_frame_bounds(HermiteExpansion::basis(0), quad, 16, "one circle");
  CHECK(wide.A_N < 1e-5);
  CHECK(wide.B_N > 0.1);
}

TEST_CASE("section bounds nest monotonically") {
  auto t = make_circles(0.5, 12);
  auto quad = quadrature(t, 0.05);
  auto report = gram_frame_bounds(HermiteExpansion::basis(0), quad, 12);
  double prev_a = std::numeric_limits<double>::infinity();
  double prev_b = 0.0;
  for (int n = 0; n <= 12; ++n) {
    auto [a, b] = section_bounds(report, n);
    CHECK(a <= prev_a + 1e-10);
    CHECK(b >= prev_b - 1e-10);
    prev_a = a;
    prev_b = b;
  }
  // The principal block reproduces a directly assembled smaller report.
  auto small = gram_frame_bounds(HermiteExpansion::basis(0), quad, 8);
  auto [a8, b8] = section_bounds(report, 8);
  CHECK(a8 == doctest::Approx(small.A_N).epsilon(1e-10));
  CHECK(b8 == doctest::Approx(small.B_N).epsilon(1e-10));
  CHECK_THROWS_AS(section_bounds(report, 13), precondition_error);
}

TEST_CASE("rotating the trajectory matches rotating the window") {
  auto t = make_circles(0.5, 6);
  double theta = 0.13;
  HermiteExpansion g = HermiteExpansion::basis(0) + HermiteExpansion::basis(1) * 0.5;
  auto quad_rotated = quadrature(rotated(t, theta), 0.05);
  auto quad_plain = quadrature(t, 0.05);
  auto lhs = gram_frame_bounds(g, quad_rotated, 6);
  auto rhs = gram_frame_bounds(metaplectic_rotate(g, theta), quad_plain, 6);
  REQUIRE(lhs.eigenvalues.size() == rhs.eigenvalues.size());
  for (std::size_t i = 0; i < lhs.eigenvalues.size(); ++i)
    CHECK(lhs.eigenvalues[i] == doctest::Approx(rhs.eigenvalues[i]).epsilon(1e-6));
}

TEST_CASE("gram preconditions and the coarse-quadrature warning") {
  HermiteExpansion h0 = HermiteExpansion::basis(0);
  QuadratureSet quad;
  quad.nodes = {PhasePoint{0.0, 0.0}};
  quad.weights = {1.0};
  quad.spacing = 0.06;
  auto coarse = gram_frame_bounds(h0, quad, 2);
  CHECK_FALSE(coarse.warning.empty());
  quad.spacing = 0.05;
  CHECK(gram_frame_bounds(h0, quad, 2).warning.empty());
  CHECK_THROWS_AS(gram_frame_bounds(h0, quad, 33), precondition_error);
  CHECK_THROWS_AS(gram_frame_bounds(h0, quad, -1), precondition_error);
  QuadratureSet bad = quad;
  bad.weights.push_back(1.0);
  CHECK_THROWS_AS(gram_frame_bounds(h0, bad, 2), precondition_error);
  QuadratureSet empty;
  empty.spacing = 0.01;
  auto zero = gram_frame_bounds(h0, empty, 3);
  CHECK(zero.A_N == 0.0);
  CHECK(zero.B_N == 0.0);
}

TEST_CASE("window digests distinguish coefficient lists") {
  HermiteExpansion a({cdouble(1.0, 0.0), cdouble(2.0, 0.0)});
  HermiteExpansion b({cdouble(2.0, 0.0), cdouble(1.0, 0.0)});
  CHECK(expansion_digest(a) != expansion_digest(b));
  CHECK(expansion_digest(a) == expansion_digest(a));
  CHECK(expansion_digest(HermiteExpansion::basis(0)) !=
        expansion_digest(HermiteExpansion::basis(1)));
}
