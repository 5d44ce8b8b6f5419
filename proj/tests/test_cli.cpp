#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "gst/frame.hpp"
#include "gst/hermite.hpp"
#include "gst/io.hpp"
#include "gst/reconstruct.hpp"
#include "gst/trajectory.hpp"
#include "gst/weak_limit.hpp"

using namespace gst;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

/// Run the installed tool with the given argument string, capturing stdout.
RunResult run_tool(const std::string& args) {
  std::string cmd = std::string(GST_TOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = out;
  return r;
}

/// A clean per-case scratch directory under the system temp root.
fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / "gst_cli_tests" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

json summary_of(const RunResult& r) {
  json j = json::parse(r.out, nullptr, false);
  REQUIRE_MESSAGE(!j.is_discarded(), "summary line is not JSON: " << r.out);
  return j;
}

std::string file_bytes(const fs::path& p) {
  REQUIRE_MESSAGE(fs::exists(p), "missing artifact " << p.string());
  return read_text_file(p.string());
}

}  // namespace

TEST_CASE("trajectory gen artifact is the library serialization") {
  fs::path d = fresh_dir("gen");
  RunResult r = run_tool("trajectory gen --family circles --eta 1 --kmax 5 --out " +
                         d.string());
  CHECK(r.exit_code == 0);
  json s = summary_of(r);
  CHECK(s["command"] == "trajectory gen");
  CHECK(s["length"].get<double>() ==
        doctest::Approx(30.0 * kPi).epsilon(1e-14));

  std::string bytes = file_bytes(d / "trajectory.json");
  CHECK(bytes == to_json(make_circles(1.0, 5)));

  Trajectory back = trajectory_from_json(bytes);
  CHECK(back.family == Family::circles);
  CHECK(back.length() == doctest::Approx(30.0 * kPi).epsilon(1e-14));
}

TEST_CASE("trajectory gen quadrature table matches the library quadrature") {
  fs::path d = fresh_dir("quad");
  RunResult r = run_tool(
      "trajectory gen --family polygons --points 1:1,-1:1,-1:-1,1:-1 "
      "--eta 0.5 --kmax 6 --quad-h 0.05 --out " +
      d.string());
  CHECK(r.exit_code == 0);
  Trajectory t = make_polygon_family(
      {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, 0.5, 6);
  CHECK(file_bytes(d / "quadrature.csv") == to_csv(quadrature(t, 0.05)));
}

TEST_CASE("frame delta reports the perturbation criterion verbatim") {
  fs::path d = fresh_dir("delta");
  RunResult r = run_tool("frame delta --window h0 --R 0.5 --out " + d.string());
  CHECK(r.exit_code == 0);
  json s = summary_of(r);

  DeltaCriterion dc = delta_criterion(parse_window_spec("h0"), 0.5);
  CHECK(s["delta"].get<double>() == dc.delta);
  CHECK(s["satisfied"].get<bool>() == dc.satisfied);
  CHECK(s["critical_radius"].get<double>() ==
        doctest::Approx(0.6509).epsilon(2e-3));
  CHECK(file_bytes(d / "delta.json") == to_json(dc));
}

TEST_CASE("frame gram csv mode adds a spectrum table with identical bytes") {
  fs::path d = fresh_dir("gram");
  RunResult r = run_tool(
      "frame gram --family circles --eta 0.5 --kmax 16 --window h0 "
      "--quad-h 0.05 --N 8 --format csv --out " +
      d.string());
  CHECK(r.exit_code == 0);
  json s = summary_of(r);

  FrameReport direct = gram_frame_bounds(
      parse_window_spec("h0"), quadrature(make_circles(0.5, 16), 0.05), 8,
      "circles");
  CHECK(s["A_N"].get<double>() == direct.A_N);
  CHECK(s["B_N"].get<double>() == direct.B_N);
  CHECK(file_bytes(d / "gram.json") == to_json(direct));
  CHECK(file_bytes(d / "spectrum.csv") == spectrum_csv(direct));
}

TEST_CASE("reconstruct cg round-trips a seeded signal through samples") {
  fs::path d = fresh_dir("cg");
  RunResult r = run_tool(
      "reconstruct cg --family circles --eta 0.5 --kmax 16 --window h0 "
      "--quad-h 0.02 --N 8 --signal random --signal-degree 6 --seed 11 "
      "--tol 1e-10 --format csv --out " +
      d.string());
  CHECK(r.exit_code == 0);
  json s = summary_of(r);
  REQUIRE(!s["relative_error"].is_null());
  CHECK(s["relative_error"].get<double>() <= 1e-8);

  HermiteExpansion g = parse_window_spec("h0");
  HermiteExpansion f = random_expansion(6, 11);
  SampledField samples = sample_field(f, g, quadrature(make_circles(0.5, 16), 0.02));
  ReconstructionResult direct = cg_reconstruct(samples, g, 8, 1e-10, f);
  CHECK(s["iterations"].get<int>() == direct.iterations);
  CHECK(file_bytes(d / "cg.json") == to_json(direct));
  CHECK(file_bytes(d / "samples.csv") == to_csv(samples));
  CHECK(file_bytes(d / "residual.csv") == residual_csv(direct));
}

TEST_CASE("reconstruct cauchy meets the advertised error budget") {
  fs::path d = fresh_dir("cauchy");
  RunResult r = run_tool(
      "reconstruct cauchy --window h0+h1 --radii 4,5 --seed 7 --out " +
      d.string());
  CHECK(r.exit_code == 0);
  json s = summary_of(r);
  CHECK(s["max_error"].get<double>() <= 1e-6);

  json report = json::parse(file_bytes(d / "cauchy.json"));
  CHECK(report["errors"].size() == report["points"].size());
  CHECK(report["max_error"].get<double>() == s["max_error"].get<double>());
}

TEST_CASE("uniqueness lines matches the library verdict") {
  fs::path d = fresh_dir("uniq");
  RunResult r = run_tool(
      "uniqueness lines --window h1 --theta 0 --offsets 0 --out " + d.string());
  CHECK(r.exit_code == 0);
  json s = summary_of(r);
  UniquenessReport direct =
      line_uniqueness_check(parse_window_spec("h1"), 0.0,
                            OffsetSet::finite({0.0}));
  CHECK(s["unique"].get<bool>() == direct.unique);
  CHECK(s["witness"].is_null() == !direct.witness.has_value());
  CHECK(file_bytes(d / "uniqueness.json") == to_json(direct));
}

TEST_CASE("weaklimit verdict and tables match the library run") {
  fs::path d = fresh_dir("wl");
  RunResult r = run_tool(
      "weaklimit --family circles --eta 1 --kmax 70 --rule escape "
      "--seq-eta 1 --seq-rho 0 --theta-star 0 --format csv --out " +
      d.string());
  CHECK(r.exit_code == 0);
  json s = summary_of(r);
  CHECK(s["kind"] == "lines");
  CHECK(s["verdict"].get<bool>());

  WeakLimitReport direct = verify_limit(make_circles(1.0, 70),
                                        TranslateSequence::escape(1.0, 0.0, 0.0));
  CHECK(file_bytes(d / "weaklimit.json") == to_json(direct));
  CHECK(file_bytes(d / "discrepancy.csv") == discrepancy_csv(direct));
}

TEST_CASE("identical invocations produce byte-identical artifacts") {
  fs::path a = fresh_dir("det_a");
  fs::path b = fresh_dir("det_b");
  std::string args =
      "reconstruct cauchy --window h0+h1 --radii 4,5 --seed 7 --M 256 --out ";
  CHECK(run_tool(args + a.string()).exit_code == 0);
  CHECK(run_tool(args + b.string()).exit_code == 0);
  CHECK(file_bytes(a / "cauchy.json") == file_bytes(b / "cauchy.json"));

  std::string wl =
      "weaklimit --family circles --eta 1 --kmax 70 --format csv --out ";
  CHECK(run_tool(wl + a.string()).exit_code == 0);
  CHECK(run_tool(wl + b.string()).exit_code == 0);
  CHECK(file_bytes(a / "weaklimit.json") == file_bytes(b / "weaklimit.json"));
  CHECK(file_bytes(a / "discrepancy.csv") == file_bytes(b / "discrepancy.csv"));
}

TEST_CASE("config file seeds options and flags override it") {
  fs::path d = fresh_dir("cfg");
  fs::path ini = d / "run.ini";
  {
    std::ofstream f(ini);
    f << "[trajectory.gen]\n"
      << "family=circles\n"
      << "eta=1\n"
      << "kmax=5\n"
      << "out=" << (d / "from_cfg").string() << "\n";
  }
  RunResult r = run_tool("trajectory gen --config " + ini.string());
  CHECK(r.exit_code == 0);
  CHECK(summary_of(r)["segments"].get<int>() == 5);
  CHECK(fs::exists(d / "from_cfg" / "trajectory.json"));

  RunResult o = run_tool("trajectory gen --config " + ini.string() +
                         " --kmax 7 --out " + (d / "override").string());
  CHECK(o.exit_code == 0);
  CHECK(summary_of(o)["segments"].get<int>() == 7);

  fs::path bad = d / "bad.ini";
  {
    std::ofstream f(bad);
    f << "[trajectory.gen]\nnonsense=1\n";
  }
  CHECK(run_tool("trajectory gen --config " + bad.string()).exit_code == 2);
}

TEST_CASE("trajectory artifacts can be fed back with --traj-file") {
  fs::path d = fresh_dir("reuse");
  CHECK(run_tool("trajectory gen --family circles --eta 0.5 --kmax 16 --out " +
                 d.string())
            .exit_code == 0);
  RunResult r = run_tool("frame gram --traj-file " +
                         (d / "trajectory.json").string() +
                         " --window h0 --quad-h 0.05 --N 6 --out " +
                         (d / "gram").string());
  CHECK(r.exit_code == 0);
  json s = summary_of(r);
  FrameReport direct = gram_frame_bounds(
      parse_window_spec("h0"), quadrature(make_circles(0.5, 16), 0.05), 6,
      "circles");
  CHECK(s["A_N"].get<double>() == direct.A_N);
}

TEST_CASE("exit codes separate usage, numerical, and precondition failures") {
  fs::path d = fresh_dir("codes");

  SUBCASE("usage violations exit 2") {
    CHECK(run_tool("reconstruct cg --signal random --out " + d.string())
              .exit_code == 2);  // random without --seed
    CHECK(run_tool("trajectory gen --family nosuch").exit_code == 2);
    CHECK(run_tool("trajectory gen --bogus 1").exit_code == 2);
    CHECK(run_tool("trajectory").exit_code == 2);  // missing subcommand
    CHECK(run_tool("frame lines --tstep 0 --out " + d.string()).exit_code == 2);
    CHECK(run_tool("--help").exit_code == 0);
  }

  SUBCASE("numerical failures exit 3") {
    // Coarse circle family far beyond the critical radius: the section Gram
    // collapses and the solver refuses the ill-posed system.
    CHECK(run_tool("reconstruct cg --family circles --eta 4 --kmax 3 "
                   "--window h0 --quad-h 0.02 --N 8 --signal random --seed 11 "
                   "--out " +
                   d.string())
              .exit_code == 3);
  }

  SUBCASE("module preconditions exit 4") {
    // Translates leave the truncated trajectory: the library refuses to
    // measure discrepancies against missing geometry.
    CHECK(run_tool("weaklimit --family circles --eta 1 --kmax 10 --out " +
                   d.string())
              .exit_code == 4);
    CHECK(run_tool("frame delta --window h99 --R 0.5 --out " + d.string())
              .exit_code == 4);  // unknown basis index in the window spec
  }
}
