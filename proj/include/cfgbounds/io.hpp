#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cfgbounds/bounds.hpp"
#include "cfgbounds/configspace.hpp"
#include "cfgbounds/dpfit.hpp"
#include "cfgbounds/piecewise.hpp"
#include "cfgbounds/solver.hpp"

// Text schemas for every file the toolkit reads or writes. Parsers throw
// IoError on malformed input; decoded objects go through the usual
// constructors, so invariant violations surface as ArgumentError.
namespace cfgbounds::io {

std::string read_file(const std::filesystem::path& path);
/// Writes atomically (temporary file + rename); creates parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

/// {"lo","hi","breaks","values"}; breaks include both endpoints.
std::string piecewise_to_json(const PiecewiseConstant& f);
PiecewiseConstant piecewise_from_json(const std::string& text);

/// Piecewise payload of the approximant plus "error" and "splits".
std::string fit_to_json(const dpfit::FitResult& fit);

/// {"n","m","c","rows":[{"idx","coef","b"}],"binary"}
std::string program_to_json(const solver::IntegerProgram& ip);
solver::IntegerProgram program_from_json(const std::string& text);

/// Piecewise payload plus "instance","kappa","grid_eps","rules","node_policy","n_vars","evaluations".
std::string dual_to_json(const configspace::DualExtraction& d);
configspace::DualExtraction dual_from_json(const std::string& text);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

/// Header `j,e_hat`, one row per j of the profile.
std::string profile_to_csv(const bounds::ApproxProfile& profile);
/// Rebuilds j_lo and e_hat (m and j_star are not part of the file).
bounds::ApproxProfile profile_from_csv(const std::string& text);

/// Header `N,worst_case,srm,srm_best_j,baseline`.
std::string curve_to_csv(const bounds::BoundCurve& curve);
bounds::BoundCurve curve_from_csv(const std::string& text);

/// Header `N,reported`: min(worst_case, srm) per row.
std::string reported_to_csv(const bounds::BoundCurve& curve);

}  // namespace cfgbounds::io
