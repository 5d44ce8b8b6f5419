#pragma once

#include <string>

#include "gst/frame.hpp"
#include "gst/reconstruct.hpp"
#include "gst/spiraling.hpp"
#include "gst/stft.hpp"
#include "gst/trajectory.hpp"
#include "gst/weak_limit.hpp"

namespace gst {

/// Serialization layer: JSON for structured reports (stable key order,
/// round-trip number formatting) and CSV for plot-ready tables (%.17g
/// columns).  Identical inputs produce identical bytes.

// ---- Window expansions -----------------------------------------------------

/// {"coefficients": [[re, im], ...]}
std::string to_json(const HermiteExpansion& g);
HermiteExpansion expansion_from_json(const std::string& text);

/// Window grammar used by the command-line tool and config files:
///   "h0", "h3"           basis functions
///   "h0+h1", "h0-0.5h2"  signed combinations with optional real scales
///   "1,0,0.5"            plain real coefficient list for c_0, c_1, ...
///   "@path"              JSON expansion file as written by to_json
HermiteExpansion parse_window_spec(const std::string& spec);

// ---- Trajectories ----------------------------------------------------------

/// Family tag plus the parameters needed to rebuild the object; custom
/// trajectories (transformed copies) are refused.
std::string to_json(const Trajectory& t);
Trajectory trajectory_from_json(const std::string& text);

// ---- Tables (CSV, one header line, %.17g values) ---------------------------

std::string to_csv(const QuadratureSet& q);           // x,xi,weight
std::string to_csv(const SampledField& f);            // x,xi,weight,re,im
std::string to_csv(const PolyanalyticSamples& s);     // circle,radius,angle,re,im
std::string residual_csv(const ReconstructionResult& r);  // iteration,residual
std::string spectrum_csv(const FrameReport& r);           // index,eigenvalue
std::string discrepancy_csv(const WeakLimitReport& r);    // k,discrepancy

// ---- Reports ---------------------------------------------------------------

std::string to_json(const DensityReport& r);
std::string to_json(const RegularityReport& r);
std::string to_json(const CoveringReport& r);
std::string to_json(const DeltaCriterion& d);
std::string to_json(const FrameReport& r);  // spectrum included, raw Gram not
std::string to_json(const ReconstructionResult& r);
std::string to_json(const UniquenessReport& r);
std::string to_json(const PredictedLimit& p);
std::string to_json(const WeakLimitReport& r);
std::string to_json(const SpiralingReport& r);
std::string line_bounds_json(const LineFrameBounds& b, double theta_rev,
                             const OffsetSet& offsets);

// ---- Files -----------------------------------------------------------------

/// Write content to path, creating parent directories as needed.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace gst
