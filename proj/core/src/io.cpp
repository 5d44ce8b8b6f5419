#include "gst/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gst {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json vec_json(Vec2 v) { return ordered_json::array({v.x, v.y}); }

Vec2 vec_from(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2)
    throw precondition_error("expected a two-element [x, y] array");
  return {j[0].get<double>(), j[1].get<double>()};
}

ordered_json coeff_array(const std::vector<cdouble>& coeffs) {
  ordered_json arr = ordered_json::array();
  for (const cdouble& c : coeffs)
    arr.push_back(ordered_json::array({c.real(), c.imag()}));
  return arr;
}

ordered_json parse_text(const std::string& text, const char* what) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw precondition_error(std::string(what) + ": malformed JSON");
  return j;
}

const ordered_json& field(const ordered_json& j, const char* key,
                          const char* what) {
  auto it = j.find(key);
  if (it == j.end())
    throw precondition_error(std::string(what) + ": missing key \"" + key + "\"");
  return *it;
}

double num_field(const ordered_json& j, const char* key, const char* what) {
  const ordered_json& v = field(j, key, what);
  if (!v.is_number())
    throw precondition_error(std::string(what) + ": key \"" + key +
                             "\" must be a number");
  return v.get<double>();
}

ordered_json limit_json(const PredictedLimit& p) {
  ordered_json j;
  switch (p.kind) {
    case PredictedLimit::Kind::shift:
      j["kind"] = "shift";
      j["shift"] = vec_json(p.shift_vector);
      break;
    case PredictedLimit::Kind::lines:
      j["kind"] = "lines";
      j["direction"] = vec_json(p.direction);
      j["lambda"] = p.lambda;
      j["tau"] = p.tau;
      j["anchor"] = vec_json(p.anchor);
      break;
    case PredictedLimit::Kind::edges:
      j["kind"] = "edges";
      j["gamma"] = p.edge_gamma;
      j["eta"] = p.edge_eta;
      j["dminus"] = vec_json(p.edge_dminus);
      j["dplus"] = vec_json(p.edge_dplus);
      j["shift"] = vec_json(p.edge_shift);
      break;
  }
  return j;
}

}  // namespace

// ---- Window expansions -----------------------------------------------------

std::string to_json(const HermiteExpansion& g) {
  ordered_json j;
  j["coefficients"] = coeff_array(g.coeffs());
  return j.dump();
}

HermiteExpansion expansion_from_json(const std::string& text) {
  ordered_json j = parse_text(text, "expansion");
  const ordered_json& arr = field(j, "coefficients", "expansion");
  if (!arr.is_array())
    throw precondition_error("expansion: \"coefficients\" must be an array");
  std::vector<cdouble> coeffs;
  for (const auto& c : arr) {
    if (!c.is_array() || c.size() != 2)
      throw precondition_error(
          "expansion: each coefficient must be a [re, im] pair");
    coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  return HermiteExpansion(std::move(coeffs));
}

HermiteExpansion parse_window_spec(const std::string& spec) {
  if (spec.empty()) throw precondition_error("window spec is empty");
  if (spec[0] == '@')
    return expansion_from_json(read_text_file(spec.substr(1)));

  if (spec.find('h') != std::string::npos) {
    // Signed combination of scaled basis terms: [scale]h<index> ...
    std::vector<cdouble> coeffs;
    std::size_t i = 0;
    while (i < spec.size()) {
      double sign = 1.0;
      if (spec[i] == '+') {
        ++i;
      } else if (spec[i] == '-') {
        sign = -1.0;
        ++i;
      }
      std::size_t h = spec.find('h', i);
      if (h == std::string::npos)
        throw precondition_error("window spec: expected an h<index> term in \"" +
                                 spec + "\"");
      double scale = 1.0;
      if (h > i) {
        std::size_t used = 0;
        try {
          scale = std::stod(spec.substr(i, h - i), &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != h - i)
          throw precondition_error("window spec: bad scale \"" +
                                   spec.substr(i, h - i) + "\"");
      }
      std::size_t d = h + 1;
      std::size_t dend = d;
      while (dend < spec.size() && std::isdigit(static_cast<unsigned char>(spec[dend])))
        ++dend;
      if (dend == d)
        throw precondition_error("window spec: h must be followed by an index");
      int n = std::stoi(spec.substr(d, dend - d));
      if (n > 64)
        throw precondition_error("window spec: basis index exceeds 64");
      if (coeffs.size() < static_cast<std::size_t>(n) + 1)
        coeffs.resize(n + 1, cdouble(0.0, 0.0));
      coeffs[n] += sign * scale;
      i = dend;
    }
    return HermiteExpansion(std::move(coeffs));
  }

  // Comma-separated real coefficient list.
  std::vector<cdouble> coeffs;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty())
      throw precondition_error("window spec: bad coefficient \"" + item + "\"");
    coeffs.emplace_back(v, 0.0);
  }
  if (coeffs.empty()) throw precondition_error("window spec is empty");
  if (coeffs.size() > 65)
    throw precondition_error("window spec: more than 65 coefficients");
  return HermiteExpansion(std::move(coeffs));
}

// ---- Trajectories ----------------------------------------------------------

std::string to_json(const Trajectory& t) {
  ordered_json j;
  j["family"] = family_name(t.family);
  switch (t.family) {
    case Family::circles:
      j["eta"] = t.eta;
      j["k_max"] = t.k_max;
      break;
    case Family::polygons: {
      ordered_json verts = ordered_json::array();
      for (Vec2 v : t.generators) verts.push_back(vec_json(v));
      j["vertices"] = verts;
      j["eta"] = t.eta;
      j["k_max"] = t.k_max;
      break;
    }
    case Family::point_path: {
      ordered_json pts = ordered_json::array();
      for (Vec2 v : t.generators) pts.push_back(vec_json(v));
      j["points"] = pts;
      j["eta"] = t.eta;
      j["rounds"] = t.rounds;
      break;
    }
    case Family::lines:
      j["angle"] = t.line_angle;
      j["offsets"] = t.line_offsets;
      j["box_half_width"] = t.r_trunc / std::sqrt(2.0);
      break;
    case Family::edges:
      j["gamma"] = t.edge_gamma;
      j["eta"] = t.edge_eta;
      j["dminus"] = vec_json(t.edge_dminus);
      j["dplus"] = vec_json(t.edge_dplus);
      j["box_half_width"] = t.r_trunc / std::sqrt(2.0);
      break;
    case Family::archimedes:
      j["eta"] = t.eta;
      j["turns"] = t.r_trunc / t.eta;
      break;
    case Family::custom:
      throw precondition_error(
          "custom trajectories carry no rebuild parameters and cannot be "
          "serialized");
  }
  j["r_trunc"] = t.r_trunc;
  j["segments"] = t.segments.size();
  j["length"] = t.length();
  return j.dump();
}

Trajectory trajectory_from_json(const std::string& text) {
  ordered_json j = parse_text(text, "trajectory");
  std::string fam = field(j, "family", "trajectory").get<std::string>();
  Family family = family_from_name(fam);
  switch (family) {
    case Family::circles:
      return make_circles(num_field(j, "eta", "trajectory"),
                          field(j, "k_max", "trajectory").get<int>());
    case Family::polygons: {
      std::vector<Vec2> verts;
      for (const auto& v : field(j, "vertices", "trajectory"))
        verts.push_back(vec_from(v));
      return make_polygon_family(verts, num_field(j, "eta", "trajectory"),
                                 field(j, "k_max", "trajectory").get<int>());
    }
    case Family::point_path: {
      std::vector<Vec2> pts;
      for (const auto& v : field(j, "points", "trajectory"))
        pts.push_back(vec_from(v));
      return make_point_path(pts, num_field(j, "eta", "trajectory"),
                             field(j, "rounds", "trajectory").get<int>());
    }
    case Family::lines: {
      std::vector<double> offsets;
      for (const auto& v : field(j, "offsets", "trajectory"))
        offsets.push_back(v.get<double>());
      return make_parallel_lines(num_field(j, "angle", "trajectory"), offsets,
                                 num_field(j, "box_half_width", "trajectory"));
    }
    case Family::edges:
      return make_edges(num_field(j, "gamma", "trajectory"),
                        num_field(j, "eta", "trajectory"),
                        vec_from(field(j, "dminus", "trajectory")),
                        vec_from(field(j, "dplus", "trajectory")),
                        num_field(j, "box_half_width", "trajectory"));
    case Family::archimedes:
      return make_archimedes(num_field(j, "eta", "trajectory"),
                             num_field(j, "turns", "trajectory"));
    case Family::custom:
      break;
  }
  throw precondition_error("trajectory: family \"" + fam +
                           "\" cannot be rebuilt from JSON");
}

// ---- Tables ----------------------------------------------------------------

std::string to_csv(const QuadratureSet& q) {
  std::string out = "x,xi,weight\n";
  for (std::size_t i = 0; i < q.nodes.size(); ++i)
    out += num(q.nodes[i].x) + "," + num(q.nodes[i].y) + "," +
           num(q.weights[i]) + "\n";
  return out;
}

std::string to_csv(const SampledField& f) {
  std::string out = "x,xi,weight,re,im\n";
  for (std::size_t i = 0; i < f.nodes.size(); ++i)
    out += num(f.nodes[i].x) + "," + num(f.nodes[i].y) + "," +
           num(f.weights[i]) + "," + num(f.values[i].real()) + "," +
           num(f.values[i].imag()) + "\n";
  return out;
}

std::string to_csv(const PolyanalyticSamples& s) {
  std::string out = "circle,radius,angle,re,im\n";
  for (std::size_t k = 0; k < s.values.size(); ++k)
    for (int j = 0; j < s.M; ++j) {
      double angle = static_cast<double>(j) / s.M;
      out += std::to_string(k) + "," + num(s.radii[k]) + "," + num(angle) +
             "," + num(s.values[k][j].real()) + "," +
             num(s.values[k][j].imag()) + "\n";
    }
  return out;
}

std::string residual_csv(const ReconstructionResult& r) {
  std::string out = "iteration,residual\n";
  for (std::size_t i = 0; i < r.residual_history.size(); ++i)
    out += std::to_string(i) + "," + num(r.residual_history[i]) + "\n";
  return out;
}

std::string spectrum_csv(const FrameReport& r) {
  std::string out = "index,eigenvalue\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
    out += std::to_string(i) + "," + num(r.eigenvalues[i]) + "\n";
  return out;
}

std::string discrepancy_csv(const WeakLimitReport& r) {
  std::string out = "k,discrepancy\n";
  for (std::size_t i = 0; i < r.k_list.size(); ++i)
    out += std::to_string(r.k_list[i]) + "," + num(r.discrepancy[i]) + "\n";
  return out;
}

// ---- Reports ---------------------------------------------------------------

std::string to_json(const DensityReport& r) {
  ordered_json j;
  j["R"] = r.R;
  j["lower"] = r.m_est;
  j["upper"] = r.M_est;
  j["grid"] = {{"lo", vec_json(r.grid.lo)},
               {"hi", vec_json(r.grid.hi)},
               {"nx", r.grid.nx},
               {"ny", r.grid.ny}};
  return j.dump();
}

std::string to_json(const RegularityReport& r) {
  ordered_json j;
  j["worst_ratio"] = r.worst_ratio;
  j["worst_R"] = r.worst_R;
  j["worst_z"] = vec_json(r.worst_z);
  j["satisfied"] = r.satisfied;
  return j.dump();
}

std::string to_json(const CoveringReport& r) {
  ordered_json j;
  j["inf_ratio"] = r.inf_ratio;
  j["satisfied"] = r.satisfied;
  return j.dump();
}

std::string to_json(const DeltaCriterion& d) {
  ordered_json j;
  j["R"] = d.R;
  j["delta"] = d.delta;
  j["satisfied"] = d.satisfied;
  j["norms"] = {{"l2", d.norms.l2},
                {"derivative", d.norms.deriv},
                {"t_weighted", d.norms.t_weighted},
                {"t_weighted_derivative", d.norms.t_weighted_deriv}};
  if (d.has_sampling_bounds) {
    j["lower_bound"] = d.lower_bound;
    j["upper_bound"] = d.upper_bound;
  }
  return j.dump();
}

std::string to_json(const FrameReport& r) {
  ordered_json j;
  j["N"] = r.N;
  j["h"] = r.h;
  j["A_N"] = r.A_N;
  j["B_N"] = r.B_N;
  j["eigenvalues"] = r.eigenvalues;
  j["trajectory"] = r.trajectory_tag;
  j["window_digest"] = r.window_digest;
  j["warning"] = r.warning;
  return j.dump();
}

std::string to_json(const ReconstructionResult& r) {
  ordered_json j;
  j["iterations"] = r.iterations;
  j["residual"] = r.residual;
  j["frame_lower_bound"] = r.frame_lower_bound;
  if (r.relative_error)
    j["relative_error"] = *r.relative_error;
  else
    j["relative_error"] = nullptr;
  j["coefficients"] = coeff_array(r.estimate.coeffs());
  j["residual_history"] = r.residual_history;
  return j.dump();
}

std::string to_json(const UniquenessReport& r) {
  ordered_json j;
  j["unique"] = r.unique;
  if (r.witness)
    j["witness"] = *r.witness;
  else
    j["witness"] = nullptr;
  j["zero_set"] = r.zero_set;
  return j.dump();
}

std::string to_json(const PredictedLimit& p) { return limit_json(p).dump(); }

std::string to_json(const WeakLimitReport& r) {
  ordered_json j;
  j["predicted"] = limit_json(r.predicted);
  j["k"] = r.k_list;
  j["discrepancy"] = r.discrepancy;
  j["bump_family"] = r.bump_family;
  j["threshold"] = r.threshold;
  j["non_increasing"] = r.non_increasing;
  j["final"] = r.final_value;
  j["verdict"] = r.verdict;
  return j.dump();
}

std::string to_json(const SpiralingReport& r) {
  ordered_json j;
  j["excluded"] = r.excluded;
  j["eta_hat"] = r.eta_hat;
  j["monotone"] = r.monotone;
  j["flat"] = r.flat;
  j["equispaced"] = r.equispaced;
  j["velocity_converged"] = r.velocity_converged;
  ordered_json cones = ordered_json::array();
  for (const ConeReport& c : r.cones) {
    ordered_json cj;
    cj["beta"] = c.beta;
    cj["alpha"] = c.alpha;
    cj["excluded_direction"] = c.excluded_direction;
    cj["retrograde"] = c.retrograde;
    cj["order_violations"] = c.order_violations;
    cj["monotone_from"] = c.monotone_from;
    cj["curvature_peak"] = c.curvature_peak;
    cj["curvature_trend"] = c.curvature_trend;
    cj["dir_minus"] = vec_json(c.dir_minus);
    cj["dir_plus"] = vec_json(c.dir_plus);
    ordered_json probes = ordered_json::array();
    for (const ConeProbe& p : c.probes) {
      ordered_json pj;
      pj["theta"] = p.theta;
      pj["crossings"] = p.crossings;
      pj["eta_fit"] = p.eta_fit;
      pj["rho_fit"] = p.rho_fit;
      pj["resid_early"] = p.resid_early;
      pj["resid_late"] = p.resid_late;
      pj["dir"] = vec_json(p.dir);
      pj["dir_drift"] = p.dir_drift;
      pj["dir_transversal"] = p.dir_transversal;
      probes.push_back(std::move(pj));
    }
    cj["probes"] = std::move(probes);
    cones.push_back(std::move(cj));
  }
  j["cones"] = std::move(cones);
  return j.dump();
}

std::string line_bounds_json(const LineFrameBounds& b, double theta_rev,
                             const OffsetSet& offsets) {
  ordered_json j;
  j["A"] = b.A;
  j["B"] = b.B;
  j["theta"] = theta_rev;
  if (offsets.periodic) {
    j["offsets"] = {{"periodic", true}, {"eta", offsets.eta}};
  } else {
    j["offsets"] = {{"periodic", false}, {"values", offsets.values}};
  }
  return j.dump();
}

// ---- Files -----------------------------------------------------------------

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec)
      throw precondition_error("cannot create directory " +
                               p.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) throw precondition_error("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw precondition_error("short write to " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw precondition_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gst
