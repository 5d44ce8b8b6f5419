// Batch front door for the time-frequency sampling toolkit: parses one
// subcommand, runs the corresponding library call, writes artifacts under
// --out, and prints a one-line JSON summary.  All numerics live in the
// library; this file only adapts flags and serializes results.
//
// Exit codes: 0 ok, 2 schema/usage violation, 3 numerical failure,
// 4 module precondition violation.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gst/frame.hpp"
#include "gst/hermite.hpp"
#include "gst/io.hpp"
#include "gst/reconstruct.hpp"
#include "gst/spiraling.hpp"
#include "gst/stft.hpp"
#include "gst/trajectory.hpp"
#include "gst/weak_limit.hpp"

namespace {

using gst::Trajectory;
using gst::Vec2;
using ordered_json = nlohmann::ordered_json;

/// Config/usage violations detected after flag parsing (exit 2).
struct schema_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty())
    throw schema_error("bad number \"" + s + "\"");
  return v;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const std::string& p : split(s, ',')) out.push_back(parse_double(p));
  if (out.empty()) throw schema_error("empty number list");
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_doubles(s)) {
    if (v != std::floor(v)) throw schema_error("expected integers in list");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

Vec2 parse_vec(const std::string& s) {
  auto parts = split(s, ':');
  if (parts.size() != 2)
    throw schema_error("expected a point as x:y, got \"" + s + "\"");
  return {parse_double(parts[0]), parse_double(parts[1])};
}

std::vector<Vec2> parse_vecs(const std::string& s) {
  std::vector<Vec2> out;
  for (const std::string& p : split(s, ',')) out.push_back(parse_vec(p));
  if (out.empty()) throw schema_error("empty point list");
  return out;
}

// ---- shared option bundles -------------------------------------------------

struct CommonOpts {
  std::string out = "out";
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out, "Artifact directory")->capture_default_str();
  cmd->add_option("--format", o.format, "Artifact flavor for tables")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->fallthrough();  // let the top-level --config apply to this subcommand
}

struct TrajOpts {
  std::string family = "circles";
  std::string file;
  double eta = 1.0;
  int kmax = 8;
  int rounds = 8;
  std::string points;
  double angle = 0.0;
  std::string offsets = "0";
  double box = 6.0;
  double gamma = 0.0;
  std::string dminus = "0:1";
  std::string dplus = "1:0";
  double turns = 8.0;
};

void add_traj(CLI::App* cmd, TrajOpts& o) {
  cmd->add_option("--family", o.family,
                  "circles|polygons|point-path|lines|edges|archimedes")
      ->check(CLI::IsMember({"circles", "polygons", "point-path", "lines",
                             "edges", "archimedes"}))
      ->capture_default_str();
  cmd->add_option("--traj-file", o.file,
                  "Load the trajectory from a JSON artifact instead");
  cmd->add_option("--eta", o.eta, "Radial pitch")->capture_default_str();
  cmd->add_option("--kmax", o.kmax, "Circle/polygon count")
      ->capture_default_str();
  cmd->add_option("--rounds", o.rounds, "Point-path rounds")
      ->capture_default_str();
  cmd->add_option("--points", o.points,
                  "Generators x:y,x:y,... (polygons, point-path)");
  cmd->add_option("--angle", o.angle, "Line angle (revolutions)")
      ->capture_default_str();
  cmd->add_option("--offsets", o.offsets, "Line offsets a,b,...")
      ->capture_default_str();
  cmd->add_option("--box", o.box, "Clip box half-width (lines, edges)")
      ->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "Edge vertex direction (revolutions)")
      ->capture_default_str();
  cmd->add_option("--dminus", o.dminus, "Edge backward direction x:y")
      ->capture_default_str();
  cmd->add_option("--dplus", o.dplus, "Edge forward direction x:y")
      ->capture_default_str();
  cmd->add_option("--turns", o.turns, "Spiral turns")->capture_default_str();
}

Trajectory build_traj(const TrajOpts& o) {
  if (!o.file.empty())
    return gst::trajectory_from_json(gst::read_text_file(o.file));
  switch (gst::family_from_name(o.family)) {
    case gst::Family::circles:
      return gst::make_circles(o.eta, o.kmax);
    case gst::Family::polygons:
      if (o.points.empty())
        throw schema_error("--points is required for polygons");
      return gst::make_polygon_family(parse_vecs(o.points), o.eta, o.kmax);
    case gst::Family::point_path:
      if (o.points.empty())
        throw schema_error("--points is required for point-path");
      return gst::make_point_path(parse_vecs(o.points), o.eta, o.rounds);
    case gst::Family::lines:
      return gst::make_parallel_lines(o.angle, parse_doubles(o.offsets), o.box);
    case gst::Family::edges:
      return gst::make_edges(o.gamma, o.eta, parse_vec(o.dminus),
                             parse_vec(o.dplus), o.box);
    case gst::Family::archimedes:
      return gst::make_archimedes(o.eta, o.turns);
    case gst::Family::custom:
      break;
  }
  throw schema_error("--family \"" + o.family + "\" is not buildable");
}

struct SignalOpts {
  std::string signal = "random";
  int degree = 6;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
};

void add_signal(CLI::App* cmd, SignalOpts& o) {
  cmd->add_option("--signal", o.signal,
                  "\"random\" or a window spec (h terms, list, @file)")
      ->capture_default_str();
  cmd->add_option("--signal-degree", o.degree, "Degree of the random signal")
      ->capture_default_str();
  o.seed_opt = cmd->add_option("--seed", o.seed, "Seed for random signals");
}

gst::HermiteExpansion build_signal(const SignalOpts& o) {
  if (o.signal == "random") {
    if (o.seed_opt->count() == 0)
      throw schema_error("--seed is required when the signal is random");
    return gst::random_expansion(o.degree, o.seed);
  }
  return gst::parse_window_spec(o.signal);
}

gst::OffsetSet parse_offset_set(bool periodic, double offset_eta,
                                const std::string& values) {
  if (periodic) return gst::OffsetSet::arithmetic(offset_eta);
  return gst::OffsetSet::finite(parse_doubles(values));
}

// ---- artifact plumbing -----------------------------------------------------

struct Emitter {
  CommonOpts common;
  ordered_json artifacts = ordered_json::array();

  void write(const std::string& name, const std::string& content) {
    std::string path = common.out + "/" + name;
    gst::write_text_file(path, content);
    artifacts.push_back(path);
  }
  bool csv() const { return common.format == "csv"; }
};

void print_summary(ordered_json j) {
  std::string line = j.dump();
  line += "\n";
  std::fwrite(line.data(), 1, line.size(), stdout);
  std::fflush(stdout);
}

// ---- subcommands -----------------------------------------------------------

void setup_trajectory(CLI::App& app) {
  CLI::App* group = app.add_subcommand("trajectory", "Build and scan node curves");
  group->require_subcommand(1);
  group->fallthrough();

  {
    auto o = std::make_shared<TrajOpts>();
    auto c = std::make_shared<CommonOpts>();
    auto quad_h = std::make_shared<double>(0.0);
    CLI::App* cmd = group->add_subcommand("gen", "Build a trajectory artifact");
    add_traj(cmd, *o);
    add_common(cmd, *c);
    cmd->add_option("--quad-h", *quad_h,
                    "Also write the quadrature table at this spacing");
    cmd->callback([o, c, quad_h]() {
      Trajectory t = build_traj(*o);
      Emitter em{*c};
      em.write("trajectory.json", gst::to_json(t));
      if (*quad_h > 0.0)
        em.write("quadrature.csv", gst::to_csv(gst::quadrature(t, *quad_h)));
      ordered_json s;
      s["command"] = "trajectory gen";
      s["family"] = gst::family_name(t.family);
      s["segments"] = t.segments.size();
      s["length"] = t.length();
      s["r_trunc"] = t.r_trunc;
      s["artifacts"] = em.artifacts;
      print_summary(s);
    });
  }

  {
    auto o = std::make_shared<TrajOpts>();
    auto c = std::make_shared<CommonOpts>();
    auto R = std::make_shared<double>(1.0);
    auto extent = std::make_shared<double>(2.0);
    auto step = std::make_shared<double>(0.25);
    CLI::App* cmd =
        group->add_subcommand("density", "Length bounds of ball intersections");
    add_traj(cmd, *o);
    add_common(cmd, *c);
    cmd->add_option("--R", *R, "Ball radius")->capture_default_str();
    cmd->add_option("--extent", *extent, "Scan half-width")->capture_default_str();
    cmd->add_option("--step", *step, "Scan step")->capture_default_str();
    cmd->callback([o, c, R, extent, step]() {
      Trajectory t = build_traj(*o);
      gst::DensityReport r =
          gst::density_scan(t, *R, gst::GridSpec::centered(*extent, *step));
      Emitter em{*c};
      em.write("density.json", gst::to_json(r));
      ordered_json s;
      s["command"] = "trajectory density";
      s["R"] = r.R;
      s["lower"] = r.m_est;
      s["upper"] = r.M_est;
      s["artifacts"] = em.artifacts;
      print_summary(s);
    });
  }

  {
    auto o = std::make_shared<TrajOpts>();
    auto c = std::make_shared<CommonOpts>();
    auto R_list = std::make_shared<std::string>("0.25,0.5,0.75");
    auto extent = std::make_shared<double>(2.0);
    auto step = std::make_shared<double>(0.25);
    auto phi = std::make_shared<std::string>("const");
    CLI::App* cmd = group->add_subcommand(
        "regularity", "Worst ball-length ratio against a growth profile");
    add_traj(cmd, *o);
    add_common(cmd, *c);
    cmd->add_option("--R-list", *R_list, "Ball radii a,b,...")
        ->capture_default_str();
    cmd->add_option("--extent", *extent, "Scan half-width")->capture_default_str();
    cmd->add_option("--step", *step, "Scan step")->capture_default_str();
    cmd->add_option("--phi", *phi, "Growth profile: const|sqrt|linear")
        ->check(CLI::IsMember({"const", "sqrt", "linear"}))
        ->capture_default_str();
    cmd->callback([o, c, R_list, extent, step, phi]() {
      Trajectory t = build_traj(*o);
      std::function<double(double)> profile;
      if (*phi == "const") profile = [](double) { return 1.0; };
      if (*phi == "sqrt") profile = [](double R) { return std::sqrt(R); };
      if (*phi == "linear") profile = [](double R) { return R; };
      gst::RegularityReport r = gst::phi_regularity_check(
          t, profile, parse_doubles(*R_list),
          gst::GridSpec::centered(*extent, *step));
      Emitter em{*c};
      em.write("regularity.json", gst::to_json(r));
      ordered_json s;
      s["command"] = "trajectory regularity";
      s["worst_ratio"] = r.worst_ratio;
      s["satisfied"] = r.satisfied;
      s["artifacts"] = em.artifacts;
      print_summary(s);
    });
  }
}

void setup_frame(CLI::App& app) {
  CLI::App* group =
      app.add_subcommand("frame", "Frame bounds and sampling criteria");
  group->require_subcommand(1);
  group->fallthrough();

  {
    auto c = std::make_shared<CommonOpts>();
    auto window = std::make_shared<std::string>("h0");
    auto theta = std::make_shared<double>(0.0);
    auto periodic = std::make_shared<bool>(false);
    auto offset_eta = std::make_shared<double>(1.0);
    auto offsets = std::make_shared<std::string>("0");
    auto tmin = std::make_shared<double>(-6.0);
    auto tmax = std::make_shared<double>(6.0);
    auto tstep = std::make_shared<double>(0.01);
    CLI::App* cmd = group->add_subcommand(
        "lines", "Translate-sum bounds for a parallel-line family");
    add_common(cmd, *c);
    cmd->add_option("--window", *window, "Window spec")->capture_default_str();
    cmd->add_option("--theta", *theta, "Line angle (revolutions)")
        ->capture_default_str();
    cmd->add_flag("--periodic", *periodic, "Arithmetic offset progression");
    cmd->add_option("--offset-eta", *offset_eta, "Progression spacing")
        ->capture_default_str();
    cmd->add_option("--offsets", *offsets, "Finite offsets a,b,...")
        ->capture_default_str();
    cmd->add_option("--tmin", *tmin)->capture_default_str();
    cmd->add_option("--tmax", *tmax)->capture_default_str();
    cmd->add_option("--tstep", *tstep)->capture_default_str();
    cmd->callback([c, window, theta, periodic, offset_eta, offsets, tmin, tmax,
                   tstep]() {
      gst::HermiteExpansion g = gst::parse_window_spec(*window);
      gst::OffsetSet set = parse_offset_set(*periodic, *offset_eta, *offsets);
      if (*tstep <= 0.0) throw schema_error("--tstep must be positive");
      std::vector<double> grid;
      for (double t = *tmin; t <= *tmax + 1e-12; t += *tstep)
        grid.push_back(t);
      gst::LineFrameBounds b = gst::line_frame_bounds(g, *theta, set, grid);
      Emitter em{*c};
      em.write("line_bounds.json", gst::line_bounds_json(b, *theta, set));
      ordered_json s;
      s["command"] = "frame lines";
      s["A"] = b.A;
      s["B"] = b.B;
      s["artifacts"] = em.artifacts;
      print_summary(s);
    });
  }

  {
    auto c = std::make_shared<CommonOpts>();
    auto window = std::make_shared<std::string>("h0");
    auto R = std::make_shared<double>(0.5);
    auto lower = std::make_shared<double>(0.0);
    auto upper = std::make_shared<double>(0.0);
    auto have_density = std::make_shared<bool>(false);
    CLI::App* cmd = group->add_subcommand(
        "delta", "Perturbation criterion at scale R and the critical radius");
    add_common(cmd, *c);
    cmd->add_option("--window", *window, "Window spec")->capture_default_str();
    cmd->add_option("--R", *R, "Covering scale")->capture_default_str();
    CLI::Option* lo =
        cmd->add_option("--density-lower", *lower, "Lower density bound m");
    CLI::Option* hi =
        cmd->add_option("--density-upper", *upper, "Upper density bound M");
    lo->needs(hi);
    hi->needs(lo);
    cmd->callback([c, window, R, lower, upper, have_density, lo]() {
      *have_density = lo->count() > 0;
      gst::HermiteExpansion g = gst::parse_window_spec(*window);
      std::optional<std::pair<double, double>> density;
      if (*have_density) density = std::make_pair(*lower, *upper);
      gst::DeltaCriterion d = gst::delta_criterion(g, *R, density);
      double r_star = gst::delta_critical_radius(g);
      Emitter em{*c};
      em.write("delta.json", gst::to_json(d));
      ordered_json s;
      s["command"] = "frame delta";
      s["R"] = d.R;
      s["delta"] = d.delta;
      s["satisfied"] = d.satisfied;
      s["critical_radius"] = r_star;
      s["artifacts"] = em.artifacts;
      print_summary(s);
    });
  }

  {
    auto o = std::make_shared<TrajOpts>();
    auto c = std::make_shared<CommonOpts>();
    auto window = std::make_shared<std::string>("h0");
    auto h = std::make_shared<double>(0.05);
    auto N = std::make_shared<int>(8);
    CLI::App* cmd = group->add_subcommand(
        "gram", "Section Gram spectrum over a trajectory node set");
    add_traj(cmd, *o);
    add_common(cmd, *c);
    cmd->add_option("--window", *window, "Window spec")->capture_default_str();
    cmd->add_option("--quad-h", *h, "Quadrature spacing")->capture_default_str();
    cmd->add_option("--N", *N, "Section degree")->capture_default_str();
    cmd->callback([o, c, window, h, N]() {
      gst::HermiteExpansion g = gst::parse_window_spec(*window);
      Trajectory t = build_traj(*o);
      gst::QuadratureSet q = gst::quadrature(t, *h);
      gst::FrameReport r =
          gst::gram_frame_bounds(g, q, *N, gst::family_name(t.family));
      Emitter em{*c};
      em.write("gram.json", gst::to_json(r));
      if (em.csv()) em.write("spectrum.csv", gst::spectrum_csv(r));
      ordered_json s;
      s["command"] = "frame gram";
      s["N"] = r.N;
      s["A_N"] = r.A_N;
      s["B_N"] = r.B_N;
      s["warning"] = r.warning;
      s["artifacts"] = em.artifacts;
      print_summary(s);
    });
  }
}

void setup_reconstruct(CLI::App& app) {
  CLI::App* group =
      app.add_subcommand("reconstruct", "Recover signals from samples");
  group->require_subcommand(1);
  group->fallthrough();

  {
    auto o = std::make_shared<TrajOpts>();
    auto c = std::make_shared<CommonOpts>();
    auto sig = std::make_shared<SignalOpts>();
    auto window = std::make_shared<std::string>("h0");
    auto h = std::make_shared<double>(0.02);
    auto N = std::make_shared<int>(8);
    auto tol = std::make_shared<double>(1e-10);
    CLI::App* cmd = group->add_subcommand(
        "cg", "Krylov recovery of Hermite coefficients from field samples");
    add_traj(cmd, *o);
    add_common(cmd, *c);
    add_signal(cmd, *sig);
    cmd->add_option("--window", *window, "Window spec")->capture_default_str();
    cmd->add_option("--quad-h", *h, "Quadrature spacing")->capture_default_str();
    cmd->add_option("--N", *N, "Section degree")->capture_default_str();
    cmd->add_option("--tol", *tol, "Relative residual target")
        ->capture_default_str();
    cmd->callback([o, c, sig, window, h, N, tol]() {
      gst::HermiteExpansion g = gst::parse_window_spec(*window);
      gst::HermiteExpansion f = build_signal(*sig);
      Trajectory t = build_traj(*o);
      gst::SampledField samples =
          gst::sample_field(f, g, gst::quadrature(t, *h));
      gst::ReconstructionResult r = gst::cg_reconstruct(samples, g, *N, *tol, f);
      Emitter em{*c};
      em.write("cg.json", gst::to_json(r));
      if (em.csv()) {
        em.write("samples.csv", gst::to_csv(samples));
        em.write("residual.csv", gst::residual_csv(r));
      }
      ordered_json s;
      s["command"] = "reconstruct cg";
      s["iterations"] = r.iterations;
      s["residual"] = r.residual;
      s["frame_lower_bound"] = r.frame_lower_bound;
      if (r.relative_error)
        s["relative_error"] = *r.relative_error;
      else
        s["relative_error"] = nullptr;
      s["artifacts"] = em.artifacts;
      print_summary(s);
    });
  }

  {
    auto c = std::make_shared<CommonOpts>();
    auto sig = std::make_shared<SignalOpts>();
    auto window = std::make_shared<std::string>("h0+h1");
    auto radii = std::make_shared<std::string>("4,5");
    auto M = std::make_shared<int>(512);
    auto points = std::make_shared<std::string>(
        "0.7:0,0.5:0.5,0:0.7,-0.5:0.5,-0.7:0,-0.5:-0.5,0:-0.7,0.5:-0.5");
    CLI::App* cmd = group->add_subcommand(
        "cauchy", "Circle-data reconstruction via contour integrals");
    add_common(cmd, *c);
    add_signal(cmd, *sig);
    cmd->add_option("--window", *window, "Window spec")->capture_default_str();
    cmd->add_option("--radii", *radii, "Sampling circle radii a,b,...")
        ->capture_default_str();
    cmd->add_option("--M", *M, "Angular samples per circle")
        ->capture_default_str();
    cmd->add_option("--points", *points, "Query points x:y,...")
        ->capture_default_str();
    cmd->callback([c, sig, window, radii, M, points]() {
      gst::HermiteExpansion g = gst::parse_window_spec(*window);
      gst::HermiteExpansion f = build_signal(*sig);
      std::vector<double> rs = parse_doubles(*radii);
      std::vector<Vec2> qs = parse_vecs(*points);
      ordered_json errors = ordered_json::array();
      ordered_json pts = ordered_json::array();
      double worst = 0.0;
      for (Vec2 z : qs) {
        gst::cdouble recon = gst::stft_circle_reconstruct(f, g, rs, z, *M);
        gst::cdouble direct = gst::stft_point(f, g, z);
        double err = std::abs(recon - direct);
        worst = std::max(worst, err);
        pts.push_back(ordered_json::array({z.x, z.y}));
        errors.push_back(err);
      }
      ordered_json report;
      report["radii"] = rs;
      report["M"] = *M;
      report["points"] = pts;
      report["errors"] = errors;
      report["max_error"] = worst;
      Emitter em{*c};
      em.write("cauchy.json", report.dump());
      ordered_json s;
      s["command"] = "reconstruct cauchy";
      s["points"] = qs.size();
      s["max_error"] = worst;
      s["artifacts"] = em.artifacts;
      print_summary(s);
    });
  }
}

void setup_uniqueness(CLI::App& app) {
  CLI::App* group =
      app.add_subcommand("uniqueness", "Zero-set uniqueness verdicts");
  group->require_subcommand(1);
  group->fallthrough();

  auto c = std::make_shared<CommonOpts>();
  auto window = std::make_shared<std::string>("h1");
  auto theta = std::make_shared<double>(0.0);
  auto periodic = std::make_shared<bool>(false);
  auto offset_eta = std::make_shared<double>(1.0);
  auto offsets = std::make_shared<std::string>("0");
  CLI::App* cmd = group->add_subcommand(
      "lines", "Uniqueness of a parallel-line family for the rotated window");
  add_common(cmd, *c);
  cmd->add_option("--window", *window, "Window spec")->capture_default_str();
  cmd->add_option("--theta", *theta, "Line angle (revolutions)")
      ->capture_default_str();
  cmd->add_flag("--periodic", *periodic, "Arithmetic offset progression");
  cmd->add_option("--offset-eta", *offset_eta, "Progression spacing")
      ->capture_default_str();
  cmd->add_option("--offsets", *offsets, "Finite offsets a,b,...")
      ->capture_default_str();
  cmd->callback([c, window, theta, periodic, offset_eta, offsets]() {
    gst::HermiteExpansion g = gst::parse_window_spec(*window);
    gst::OffsetSet set = parse_offset_set(*periodic, *offset_eta, *offsets);
    gst::UniquenessReport r = gst::line_uniqueness_check(g, *theta, set);
    Emitter em{*c};
    em.write("uniqueness.json", gst::to_json(r));
    ordered_json s;
    s["command"] = "uniqueness lines";
    s["unique"] = r.unique;
    if (r.witness)
      s["witness"] = *r.witness;
    else
      s["witness"] = nullptr;
    s["artifacts"] = em.artifacts;
    print_summary(s);
  });
}

void setup_weaklimit(CLI::App& app) {
  auto o = std::make_shared<TrajOpts>();
  auto c = std::make_shared<CommonOpts>();
  auto rule = std::make_shared<std::string>("escape");
  auto seq_eta = std::make_shared<double>(1.0);
  auto seq_rho = std::make_shared<double>(0.0);
  auto theta_star = std::make_shared<double>(0.0);
  auto drift = std::make_shared<double>(0.0);
  auto shift_z = std::make_shared<std::string>("0:0");
  auto k_list = std::make_shared<std::string>("4,8,16,32,64");
  auto h = std::make_shared<double>(0.005);
  auto threshold = std::make_shared<double>(1e-2);
  CLI::App* cmd = app.add_subcommand(
      "weaklimit", "Predict and verify the weak limit of a translate sequence");
  add_traj(cmd, *o);
  add_common(cmd, *c);
  cmd->add_option("--rule", *rule, "Sequence rule: escape|shift")
      ->check(CLI::IsMember({"escape", "shift"}))
      ->capture_default_str();
  cmd->add_option("--seq-eta", *seq_eta, "Escape radial spacing")
      ->capture_default_str();
  cmd->add_option("--seq-rho", *seq_rho, "Escape radial offset")
      ->capture_default_str();
  cmd->add_option("--theta-star", *theta_star, "Escape angle (revolutions)")
      ->capture_default_str();
  cmd->add_option("--drift", *drift, "Escape angle drift coefficient")
      ->capture_default_str();
  cmd->add_option("--shift", *shift_z, "Constant translate x:y")
      ->capture_default_str();
  cmd->add_option("--k-list", *k_list, "Indices to test")->capture_default_str();
  cmd->add_option("--quad-h", *h, "Quadrature spacing")->capture_default_str();
  cmd->add_option("--threshold", *threshold, "Final discrepancy target")
      ->capture_default_str();
  cmd->callback([o, c, rule, seq_eta, seq_rho, theta_star, drift, shift_z,
                 k_list, h, threshold]() {
    Trajectory t = build_traj(*o);
    gst::TranslateSequence seq =
        *rule == "escape"
            ? gst::TranslateSequence::escape(*seq_eta, *seq_rho, *theta_star,
                                             *drift)
            : gst::TranslateSequence::shift(parse_vec(*shift_z));
    gst::WeakLimitReport r =
        gst::verify_limit(t, seq, parse_ints(*k_list),
                          gst::BumpFamily::standard(), *h, *threshold);
    Emitter em{*c};
    em.write("weaklimit.json", gst::to_json(r));
    if (em.csv()) em.write("discrepancy.csv", gst::discrepancy_csv(r));
    ordered_json s;
    s["command"] = "weaklimit";
    s["kind"] = ordered_json::parse(gst::to_json(r.predicted))["kind"];
    s["final"] = r.final_value;
    s["non_increasing"] = r.non_increasing;
    s["verdict"] = r.verdict;
    s["artifacts"] = em.artifacts;
    print_summary(s);
  });
}

void setup_validate(CLI::App& app) {
  CLI::App* group =
      app.add_subcommand("validate", "Structural checks on trajectories");
  group->require_subcommand(1);
  group->fallthrough();

  auto o = std::make_shared<TrajOpts>();
  auto c = std::make_shared<CommonOpts>();
  auto betas = std::make_shared<std::string>("");
  auto probes = std::make_shared<int>(5);
  CLI::App* cmd = group->add_subcommand(
      "spiraling", "Escape-cone parametrization and equispacing checks");
  add_traj(cmd, *o);
  add_common(cmd, *c);
  cmd->add_option("--betas", *betas, "Cone centers a,b,... (default automatic)");
  cmd->add_option("--probes", *probes, "Probe angles per cone")
      ->capture_default_str();
  cmd->callback([o, c, betas, probes]() {
    Trajectory t = build_traj(*o);
    std::vector<double> centers;
    if (!betas->empty()) centers = parse_doubles(*betas);
    gst::SpiralingReport r = gst::spiraling_validate(t, centers, *probes);
    Emitter em{*c};
    em.write("spiraling.json", gst::to_json(r));
    ordered_json s;
    s["command"] = "validate spiraling";
    s["monotone"] = r.monotone;
    s["flat"] = r.flat;
    s["equispaced"] = r.equispaced;
    s["velocity_converged"] = r.velocity_converged;
    s["eta_hat"] = r.eta_hat;
    s["artifacts"] = em.artifacts;
    print_summary(s);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Time-frequency sampling toolkit: trajectories, frame bounds, "
      "reconstruction, uniqueness, weak limits"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "INI config; section [command.sub] holds that subcommand's "
                 "keys; flags override");
  app.allow_config_extras(false);

  setup_trajectory(app);
  setup_frame(app);
  setup_reconstruct(app);
  setup_uniqueness(app);
  setup_weaklimit(app);
  setup_validate(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const schema_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gst::numerical_error& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  } catch (const gst::precondition_error& e) {
    std::fprintf(stderr, "precondition violated: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
