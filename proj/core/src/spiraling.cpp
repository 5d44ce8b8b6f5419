#include "gst/spiraling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gst {

namespace {

/// Curvature of the polar graph r(theta) with derivatives taken in the
/// radian variable: (r^2 + 2 r'^2 - r r'') / (r^2 + r'^2)^{3/2}.
double polar_curvature(const PolarSegment& p, double th) {
  double r = p.r(th);
  double d1 = p.dr(th) / kTwoPi;        // d/d(radians)
  double d2 = p.d2r(th) / (kTwoPi * kTwoPi);
  double denom = std::pow(r * r + d1 * d1, 1.5);
  if (denom <= 1e-300) return 0.0;
  return std::fabs(r * r + 2.0 * d1 * d1 - r * d2) / denom;
}

void push_crossing(std::vector<RayCrossing>& out, double radius,
                   double traversal, Vec2 tangent, double curvature, Vec2 u) {
  if (radius <= 1e-9) return;
  RayCrossing c;
  c.radius = radius;
  c.traversal = traversal;
  c.tangent = tangent;
  c.curvature = curvature;
  double along = tangent.dot(u.rot90());
  c.orientation = along > 0.0 ? 1 : (along < 0.0 ? -1 : 0);
  out.push_back(c);
}

struct LinearFitWindow {
  double eta = 0.0;
  double rho = 0.0;
  double resid = 0.0;
};

/// Least squares of r_k vs k over 1-based index range [lo, hi].
LinearFitWindow fit_window(const std::vector<RayCrossing>& cr, int lo,
                           int hi) {
  LinearFitWindow f;
  int n = hi - lo + 1;
  if (n < 2) {
    if (n == 1) f.rho = cr[lo - 1].radius;
    return f;
  }
  double sk = 0.0, sr = 0.0, skk = 0.0, skr = 0.0;
  for (int k = lo; k <= hi; ++k) {
    double r = cr[k - 1].radius;
    sk += k;
    sr += r;
    skk += static_cast<double>(k) * k;
    skr += k * r;
  }
  double det = n * skk - sk * sk;
  f.eta = (n * skr - sk * sr) / det;
  f.rho = (sr * skk - sk * skr) / det;
  for (int k = lo; k <= hi; ++k)
    f.resid = std::max(f.resid,
                       std::fabs(cr[k - 1].radius - f.eta * k - f.rho));
  return f;
}

Vec2 richardson_dir(const std::vector<RayCrossing>& cr, int mid, int last) {
  Vec2 a = cr[mid - 1].tangent;
  Vec2 b = cr[last - 1].tangent;
  if (mid == last) return b;
  // Tangent error decays like 1/k for the families here; extrapolating the
  // line through (1/mid, a) and (1/last, b) to 1/k = 0 cancels the leading
  // term.  Fall back to the raw tail tangent if that degenerates.
  Vec2 ex = (b * static_cast<double>(last) - a * static_cast<double>(mid)) *
            (1.0 / static_cast<double>(last - mid));
  double n = ex.norm();
  if (n <= 1e-9) return b;
  return ex * (1.0 / n);
}

}  // namespace

std::vector<RayCrossing> ray_crossings(const Trajectory& t, double phi_rev) {
  Vec2 u = unit_dir(phi_rev);
  std::vector<RayCrossing> out;
  double seg_index = 0.0;
  for (const auto& s : t.segments) {
    if (const auto* l = std::get_if<LineSeg>(&s)) {
      Vec2 d = l->b - l->a;
      double den = u.cross(d);
      if (std::fabs(den) > 1e-14 * std::max(1.0, d.norm())) {
        double tt = l->a.cross(u) / u.cross(d);
        double ss = l->a.cross(d) / u.cross(d);
        if (tt >= -1e-12 && tt <= 1.0 + 1e-12 && ss > 1e-9)
          push_crossing(out, ss, seg_index + std::clamp(tt, 0.0, 1.0),
                        d.normalized(), 0.0, u);
      }
    } else if (const auto* a = std::get_if<ArcSegment>(&s)) {
      double uc = u.dot(a->center);
      double disc = uc * uc - (a->center.norm2() - a->radius * a->radius);
      if (disc >= 0.0) {
        double sq = std::sqrt(disc);
        bool full = std::fabs((a->a1 - a->a0) - kTwoPi) <= 1e-12;
        for (double ss : {uc - sq, uc + sq}) {
          if (ss <= 1e-9) continue;
          Vec2 p = u * ss;
          double psi = std::atan2(p.y - a->center.y, p.x - a->center.x);
          double k0 = std::ceil((a->a0 - psi) / kTwoPi - 1e-12);
          for (double k = k0;; k += 1.0) {
            double ang = psi + kTwoPi * k;
            if (ang > a->a1 + 1e-12) break;
            if (full && ang >= a->a1 - 1e-9) break;  // periodic seam
            double frac = (ang - a->a0) / (a->a1 - a->a0);
            push_crossing(out, ss, seg_index + std::clamp(frac, 0.0, 1.0),
                          Vec2{-std::sin(ang), std::cos(ang)},
                          1.0 / a->radius, u);
          }
        }
      }
    } else {
      const auto& p = std::get<PolarSegment>(s);
      double phi = wrap_rev(phi_rev);
      double m0 = std::ceil(p.theta0 - phi - 1e-12);
      for (double m = m0;; m += 1.0) {
        double th = phi + m;
        if (th > p.theta1 + 1e-12) break;
        if (th < p.theta0 - 1e-12) continue;
        double rr = p.r(th);
        if (rr <= 1e-9) continue;
        double dd = p.dr(th);
        Vec2 tangent =
            (unit_dir(th) * dd + unit_dir(th).rot90() * (kTwoPi * rr))
                .normalized();
        double frac = (th - p.theta0) /
                      std::max(1e-300, p.theta1 - p.theta0);
        push_crossing(out, rr, seg_index + std::clamp(frac, 0.0, 1.0),
                      tangent, polar_curvature(p, th), u);
      }
    }
    seg_index += 1.0;
  }
  std::sort(out.begin(), out.end(),
            [](const RayCrossing& a, const RayCrossing& b) {
              return a.radius < b.radius;
            });
  std::vector<RayCrossing> dedup;
  for (const auto& c : out) {
    if (!dedup.empty() && c.radius - dedup.back().radius <= 1e-9) continue;
    dedup.push_back(c);
  }
  return dedup;
}

RadialFit radial_fit_at(const Trajectory& t, double phi_rev, int k_lo,
                        int k_hi) {
  auto cr = ray_crossings(t, phi_rev);
  RadialFit fit;
  fit.crossings = static_cast<int>(cr.size());
  if (cr.empty()) return fit;
  int m = fit.crossings;
  int hi = (k_hi > 0 && k_hi <= m) ? k_hi : std::max(1, m - 1);
  int lo = (k_lo > 0 && k_lo <= hi) ? k_lo : std::max(1, hi / 2);
  LinearFitWindow w = fit_window(cr, lo, hi);
  fit.eta = w.eta;
  fit.rho = w.rho;
  fit.resid = w.resid;
  int mid = std::max(1, (lo + hi) / 2);
  fit.dir = richardson_dir(cr, mid, hi);
  return fit;
}

std::vector<double> excluded_directions(const Trajectory& t) {
  std::vector<double> out;
  switch (t.family) {
    case Family::polygons:
    case Family::point_path:
      for (const Vec2& v : t.generators) out.push_back(angle_rev(v));
      break;
    case Family::edges:
      out.push_back(wrap_rev(t.edge_gamma));
      out.push_back(wrap_rev(t.edge_gamma + 0.5));
      break;
    default:
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) {
                          return circle_dist_rev(a, b) <= 1e-12;
                        }),
            out.end());
  return out;
}

SpiralingReport spiraling_validate(const Trajectory& t,
                                   std::vector<double> betas,
                                   int probes_per_cone, int k_lo, int k_hi) {
  if (probes_per_cone < 3)
    throw precondition_error(
        "spiraling_validate: need at least 3 probes per cone");
  SpiralingReport rep;
  rep.excluded = excluded_directions(t);

  if (betas.empty()) {
    if (rep.excluded.empty()) {
      for (int j = 0; j < 6; ++j) betas.push_back(j / 6.0);
    } else {
      // Gap midpoints between consecutive excluded directions, plus the
      // excluded directions themselves for the one-sided diagnostics.
      std::size_t n = rep.excluded.size();
      for (std::size_t i = 0; i < n; ++i) {
        double a = rep.excluded[i];
        double b = rep.excluded[(i + 1) % n] + (i + 1 == n ? 1.0 : 0.0);
        betas.push_back(wrap_rev(0.5 * (a + b)));
        betas.push_back(rep.excluded[i]);
      }
    }
  }

  auto cone_distance = [&](double beta, bool skip_self) {
    double d = 1.0;
    for (double g : rep.excluded) {
      double dd = circle_dist_rev(beta, g);
      if (skip_self && dd <= 1e-12) continue;
      d = std::min(d, dd);
    }
    return d;
  };

  std::vector<double> all_eta;
  long total_orientation = 0;
  rep.monotone = true;
  rep.flat = true;
  rep.equispaced = true;
  rep.velocity_converged = true;

  for (double beta : betas) {
    ConeReport cone;
    cone.beta = wrap_rev(beta);
    cone.excluded_direction =
        cone_distance(cone.beta, false) <= 1e-12 && !rep.excluded.empty();
    cone.alpha = std::min(cone_distance(cone.beta, cone.excluded_direction),
                          1.0 / 8.0);
    if (cone.alpha <= 1e-9)
      throw precondition_error(
          "spiraling_validate: escape cone collapsed at beta=" +
          std::to_string(cone.beta));

    std::vector<double> offsets;
    if (cone.excluded_direction) {
      for (double f : {-0.9, -0.5, -0.1, 0.1, 0.5, 0.9})
        offsets.push_back(f * cone.alpha);
    } else {
      for (int j = 0; j < probes_per_cone; ++j)
        offsets.push_back(
            0.9 * cone.alpha *
            (-1.0 + 2.0 * j / (probes_per_cone - 1)));
    }

    // First pass: ray crossings per probe, cone-wide consistency checks.
    std::vector<std::vector<RayCrossing>> crossings;
    int count_min = 1 << 30, count_max = 0;
    for (double th : offsets) {
      auto cr = ray_crossings(t, cone.beta + th);
      count_min = std::min(count_min, static_cast<int>(cr.size()));
      count_max = std::max(count_max, static_cast<int>(cr.size()));
      crossings.push_back(std::move(cr));
    }
    if (count_min < 4) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "spiraling_validate: escape cone at beta=%.6f has only "
                    "%d ray crossings; cannot parametrize the radial graph",
                    cone.beta, count_min);
      throw precondition_error(buf);
    }
    int slack = 1 + std::max(1, count_max / 20);
    if (count_max - count_min > slack) {
      char buf[200];
      std::snprintf(buf, sizeof(buf),
                    "spiraling_validate: crossing count varies from %d to %d "
                    "across the escape cone at beta=%.6f; the cone "
                    "intersection is not a radial graph",
                    count_min, count_max, cone.beta);
      throw precondition_error(buf);
    }

    double cone_curv_peak = 0.0, cone_curv_mid = 0.0;
    for (std::size_t pi = 0; pi < offsets.size(); ++pi) {
      const auto& cr = crossings[pi];
      int m = static_cast<int>(cr.size());
      ConeProbe probe;
      probe.theta = offsets[pi];
      probe.crossings = m;
      int hi = (k_hi > 0 && k_hi <= m) ? k_hi : std::max(1, m - 1);
      int lo = (k_lo > 0 && k_lo <= hi) ? k_lo : std::max(1, hi / 2);
      LinearFitWindow late = fit_window(cr, lo, hi);
      int elo = std::max(1, hi / 4);
      int ehi = std::max(elo + 1, hi / 2);
      LinearFitWindow early = fit_window(cr, elo, std::min(ehi, hi));
      probe.eta_fit = late.eta;
      probe.rho_fit = late.rho;
      probe.resid_late = late.resid;
      probe.resid_early = early.resid;
      int mid = std::max(1, (lo + hi) / 2);
      probe.dir = richardson_dir(cr, mid, hi);
      probe.dir_drift = (cr[hi - 1].tangent - cr[mid - 1].tangent).norm();
      Vec2 ray = unit_dir(cone.beta + probe.theta);
      probe.dir_transversal = std::fabs(ray.cross(probe.dir)) > 0.05;

      for (const auto& c : cr) total_orientation += c.orientation;
      cone_curv_peak = std::max(cone_curv_peak, cr[hi - 1].curvature);
      cone_curv_mid = std::max(cone_curv_mid, cr[mid - 1].curvature);
      all_eta.push_back(probe.eta_fit);
      cone.probes.push_back(probe);
    }
    cone.curvature_peak = cone_curv_peak;
    cone.curvature_trend =
        cone_curv_mid > 1e-14 ? cone_curv_peak / cone_curv_mid : 0.0;

    // One-sided direction limits: innermost probes on each side.
    Vec2 dminus = cone.probes.front().dir;
    Vec2 dplus = cone.probes.back().dir;
    double best_neg = -1e9, best_pos = 1e9;
    for (const auto& p : cone.probes) {
      if (p.theta < 0.0 && p.theta > best_neg) {
        best_neg = p.theta;
        dminus = p.dir;
      }
      if (p.theta >= 0.0 && p.theta < best_pos) {
        best_pos = p.theta;
        dplus = p.dir;
      }
    }
    cone.dir_minus = dminus;
    cone.dir_plus = dplus;
    rep.cones.push_back(std::move(cone));
  }

  // Second pass over the stored crossings for winding-corrected
  // monotonicity: majority orientation defines the forward direction.
  int wind = total_orientation >= 0 ? 1 : -1;
  for (std::size_t ci = 0; ci < rep.cones.size(); ++ci) {
    ConeReport& cone = rep.cones[ci];
    for (const auto& probe : cone.probes) {
      auto cr = ray_crossings(t, cone.beta + probe.theta);
      int m = static_cast<int>(cr.size());
      int last_violation = 0;
      for (int k = 0; k < m; ++k) {
        if (cr[k].orientation * wind < 0) {
          ++cone.retrograde;
          last_violation = k + 1;
        }
        if (k > 0 && cr[k].traversal < cr[k - 1].traversal) {
          ++cone.order_violations;
          last_violation = k + 1;
        }
      }
      cone.monotone_from = std::max(cone.monotone_from, last_violation + 1);
      if (last_violation > m / 2) rep.monotone = false;
    }
    // 1/r curvature decay gives a trend near r_mid / r_last (about 3/4
    // for the automatic window); a curve of persistent curvature sits at 1.
    if (!(cone.curvature_peak <= 1e-12 || cone.curvature_trend <= 0.8))
      rep.flat = false;
    for (const auto& probe : cone.probes) {
      if (!(probe.resid_late <= 1e-6 ||
            probe.resid_late <= 0.6 * probe.resid_early))
        rep.equispaced = false;
      if (!probe.dir_transversal || probe.dir_drift > 0.25)
        rep.velocity_converged = false;
    }
  }

  std::sort(all_eta.begin(), all_eta.end());
  if (!all_eta.empty()) rep.eta_hat = all_eta[all_eta.size() / 2];
  return rep;
}

}  // namespace gst
