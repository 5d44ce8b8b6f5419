#include "gst/weak_limit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "gst/numerics.hpp"
#include "gst/spiraling.hpp"

namespace gst {

namespace {

// Reduce v modulo period into (-period/2, period/2].
double reduce_centered(double v, double period) {
  double r = v - period * std::round(v / period);
  if (r <= -0.5 * period) r += period;
  return r;
}

std::string format_value(const char* fmt, double a, double b) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

void validate_family(const BumpFamily& family) {
  if (family.bumps.empty())
    throw precondition_error("bump family is empty");
  for (const Bump& b : family.bumps) {
    if (!(b.radius > 0.0))
      throw precondition_error("bump radius must be positive");
    if (b.center.x - b.radius < family.box_lo.x - 1e-12 ||
        b.center.x + b.radius > family.box_hi.x + 1e-12 ||
        b.center.y - b.radius < family.box_lo.y - 1e-12 ||
        b.center.y + b.radius > family.box_hi.y + 1e-12)
      throw precondition_error("bump support leaks outside the box");
  }
}

// Pick the representative of {+dir, -dir} that points toward angles on the
// requested side of the ray l(gamma).
Vec2 side_representative(Vec2 dir, Vec2 lgam, bool above) {
  double c = lgam.cross(dir);
  if (std::fabs(c) <= 1e-9)
    throw numerical_error(
        "edge direction is collinear with the corner ray; cannot orient the "
        "limit object");
  return (c > 0.0) == above ? dir : -dir;
}

}  // namespace

double bump_value(const Bump& b, Vec2 p) {
  double u2 = (p - b.center).norm2() / (b.radius * b.radius);
  if (u2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u2));
}

BumpFamily BumpFamily::standard() {
  BumpFamily family;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
      family.bumps.push_back({Vec2(static_cast<double>(i), static_cast<double>(j)), 1.0});
  return family;
}

double BumpFamily::support_radius() const {
  double r = 0.0;
  for (const Bump& b : bumps) r = std::max(r, b.center.norm() + b.radius);
  return r;
}

std::string BumpFamily::describe() const {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%zu radial bumps in [%g,%g]x[%g,%g]", bumps.size(),
                box_lo.x, box_hi.x, box_lo.y, box_hi.y);
  return buf;
}

std::vector<double> bump_integrals(const Trajectory& t, const BumpFamily& bumps,
                                   double h) {
  QuadratureSet q = quadrature(t, h);
  std::size_t nb = bumps.bumps.size();
  auto partials = chunked_map<std::vector<double>>(
      q.nodes.size(), 1024, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> part(nb, 0.0);
        for (std::size_t i = lo; i < hi; ++i)
          for (std::size_t j = 0; j < nb; ++j)
            part[j] += q.weights[i] * bump_value(bumps.bumps[j], q.nodes[i]);
        return part;
      });
  std::vector<double> integrals(nb, 0.0);
  for (const auto& part : partials)
    for (std::size_t j = 0; j < nb; ++j) integrals[j] += part[j];
  return integrals;
}

double weak_discrepancy(const Trajectory& a, const Trajectory& b,
                        const BumpFamily& bumps, double h) {
  if (!(h > 0.0) || h > 0.01)
    throw precondition_error("weak_discrepancy: spacing must lie in (0, 0.01]");
  validate_family(bumps);
  auto ia = bump_integrals(a, bumps, h);
  auto ib = bump_integrals(b, bumps, h);
  double worst = 0.0;
  for (std::size_t j = 0; j < ia.size(); ++j)
    worst = std::max(worst, std::fabs(ia[j] - ib[j]));
  return worst;
}

TranslateSequence TranslateSequence::escape(double eta, double rho,
                                            double theta_star, double theta_drift) {
  if (!(eta > 0.0))
    throw precondition_error("escape sequence: radial spacing must be positive");
  if (!(rho > -eta))
    throw precondition_error("escape sequence: offset must exceed -eta");
  TranslateSequence s;
  s.kind = Kind::escape;
  s.eta = eta;
  s.rho = rho;
  s.theta_star = theta_star;
  s.theta_drift = theta_drift;
  return s;
}

TranslateSequence TranslateSequence::shift(Vec2 z) {
  TranslateSequence s;
  s.kind = Kind::constant;
  s.constant_shift = z;
  return s;
}

TranslateSequence TranslateSequence::listed(std::vector<Vec2> pts) {
  if (pts.empty())
    throw precondition_error("listed sequence: no translates given");
  TranslateSequence s;
  s.kind = Kind::listed;
  s.points = std::move(pts);
  return s;
}

Vec2 TranslateSequence::at(int k) const {
  if (k < 1) throw precondition_error("translate sequences are indexed from 1");
  switch (kind) {
    case Kind::escape: {
      double r = eta * k + rho;
      double theta = theta_star + theta_drift / static_cast<double>(k);
      return -r * unit_dir(theta);
    }
    case Kind::constant:
      return constant_shift;
    case Kind::listed:
      return points[std::min<std::size_t>(k - 1, points.size() - 1)];
  }
  throw precondition_error("translate sequence: unknown rule");
}

bool TranslateSequence::bounded() const { return kind != Kind::escape; }

PredictedLimit predict_limit(const Trajectory& t, const TranslateSequence& seq) {
  PredictedLimit p;
  if (seq.bounded()) {
    p.kind = PredictedLimit::Kind::shift;
    p.shift_vector = seq.kind == TranslateSequence::Kind::constant
                         ? seq.constant_shift
                         : seq.points.back();
    return p;
  }

  double theta = wrap_rev(seq.theta_star);
  std::vector<double> excluded = excluded_directions(t);
  const double kAngleTol = 1e-9;
  auto check_spacing = [&](double fitted) {
    if (std::fabs(seq.eta - fitted) > 1e-6 * std::max(1.0, fitted))
      throw precondition_error(format_value(
          "escape spacing %g does not match the fitted radial spacing %g; "
          "the full translate sequence has no weak limit", seq.eta, fitted));
  };

  for (double gamma : excluded) {
    if (circle_dist_rev(theta, gamma) > kAngleTol) continue;
    // The sequence rides a singular direction: the limit is the set of
    // parallel edges hanging off the vertex lattice along that ray.
    RadialFit fit = radial_fit_at(t, gamma);
    check_spacing(fit.eta);
    double alpha = 0.125;
    for (double other : excluded)
      if (std::fabs(other - gamma) > kAngleTol)
        alpha = std::min(alpha, circle_dist_rev(gamma, other));
    double probe = 0.25 * alpha;
    Vec2 lgam = unit_dir(gamma);
    Vec2 below = side_representative(radial_fit_at(t, gamma - probe).dir, lgam, false);
    Vec2 above = side_representative(radial_fit_at(t, gamma + probe).dir, lgam, true);
    p.kind = PredictedLimit::Kind::edges;
    p.edge_gamma = gamma;
    p.edge_eta = fit.eta;
    p.edge_dminus = -below;
    p.edge_dplus = above;
    p.edge_shift = reduce_centered(fit.rho - seq.rho, fit.eta) * lgam;
    return p;
  }

  // Plain graph direction: the limit is a set of parallel lines along the
  // asymptotic crossing direction, spaced by the transversal component of
  // the radial step.
  RadialFit fit = radial_fit_at(t, theta);
  check_spacing(fit.eta);
  Vec2 d = fit.dir;
  if (d.y < 0.0 || (d.y == 0.0 && d.x < 0.0)) d = -d;  // canonical sign
  Vec2 l = unit_dir(theta);
  double c = l.dot(d);
  double perp2 = 1.0 - c * c;
  if (perp2 <= 1e-12)
    throw numerical_error(
        "asymptotic crossing direction is collinear with the escape ray; "
        "no transversal line spacing exists");
  p.kind = PredictedLimit::Kind::lines;
  p.direction = d;
  p.lambda = fit.eta * std::sqrt(perp2);
  Vec2 dperp = d.rot90();
  p.tau = reduce_centered((fit.rho - seq.rho) * l.dot(dperp), p.lambda);
  p.anchor = p.tau * dperp;
  return p;
}

Trajectory realize_limit(const PredictedLimit& p, const Trajectory& base,
                         double box_half_width) {
  if (!(box_half_width > 0.0))
    throw precondition_error("realize_limit: box half-width must be positive");
  switch (p.kind) {
    case PredictedLimit::Kind::shift:
      return translated(base, p.shift_vector);
    case PredictedLimit::Kind::lines: {
      if (!(p.lambda > 0.0))
        throw precondition_error("realize_limit: line spacing must be positive");
      double theta_n = wrap_rev(angle_rev(p.direction) - 0.25);
      double span = box_half_width * std::sqrt(2.0) + std::fabs(p.tau) + p.lambda;
      int count = static_cast<int>(std::ceil(span / p.lambda)) + 1;
      std::vector<double> offsets;
      offsets.reserve(2 * count + 1);
      // The builder measures offsets along l(theta_n) = -d_perp, hence the
      // sign flip on tau.
      for (int m = -count; m <= count; ++m)
        offsets.push_back(m * p.lambda - p.tau);
      return make_parallel_lines(theta_n, offsets, box_half_width);
    }
    case PredictedLimit::Kind::edges: {
      if (!(p.edge_eta > 0.0))
        throw precondition_error("realize_limit: edge spacing must be positive");
      double shift = p.edge_shift.norm();
      if (shift <= 1e-9 * std::max(1.0, p.edge_eta))
        return make_edges(p.edge_gamma, p.edge_eta, p.edge_dminus, p.edge_dplus,
                          box_half_width);
      Trajectory e = make_edges(p.edge_gamma, p.edge_eta, p.edge_dminus,
                                p.edge_dplus, box_half_width + shift + 1.0);
      return translated(e, p.edge_shift);
    }
  }
  throw precondition_error("realize_limit: unknown limit kind");
}

WeakLimitReport verify_limit(const Trajectory& t, const TranslateSequence& seq,
                             const std::vector<int>& k_list,
                             const BumpFamily& bumps, double h, double threshold) {
  if (k_list.empty())
    throw precondition_error("verify_limit: empty k list");
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    if (k_list[i] < 1)
      throw precondition_error("verify_limit: k values must be positive");
    if (i > 0 && k_list[i] <= k_list[i - 1])
      throw precondition_error("verify_limit: k list must be increasing");
  }
  validate_family(bumps);

  WeakLimitReport report;
  report.predicted = predict_limit(t, seq);
  report.k_list = k_list;
  report.bump_family = bumps.describe();
  report.threshold = threshold;

  double support = bumps.support_radius();
  double clip_radius = support + 0.25;
  Trajectory limit = clipped_to_ball(
      realize_limit(report.predicted, t, support + 1.0), Vec2(), clip_radius);

  for (int k : k_list) {
    Vec2 z = seq.at(k);
    if (z.norm() + clip_radius + t.eta > t.r_trunc + 1e-12)
      throw precondition_error(format_value(
          "verify_limit: translate reaching radius %.6g exceeds the "
          "trajectory truncation %.6g; extend the family",
          z.norm() + clip_radius, t.r_trunc));
    Trajectory moved = clipped_to_ball(translated(t, z), Vec2(), clip_radius);
    report.discrepancy.push_back(weak_discrepancy(moved, limit, bumps, h));
  }

  report.final_value = report.discrepancy.back();
  report.non_increasing = true;
  for (std::size_t i = 1; i < report.discrepancy.size(); ++i)
    if (report.discrepancy[i] > report.discrepancy[i - 1] + 1e-12)
      report.non_increasing = false;
  report.verdict = report.non_increasing && report.final_value <= threshold;
  return report;
}

}  // namespace gst
