#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "ricciforge/reconstruct.hpp"

namespace ricciforge::cli {

/// Check groups. 2-D: flatness, moroianu, equivalence, zeros, flux,
/// ricci-boundary, roundtrip. n-D: gauss, minimality, abar, condition_i,
/// condition_ii, umbilic.
const std::vector<std::string>& check_names(bool two_d);
std::vector<std::string> default_checks(const Geometry& g);

struct CheckRun {
  ReportBundle bundle;
  /// Extra facts worth printing: zero-set class, definiteness counts.
  nlohmann::json summary = nlohmann::json::object();
};

CheckRun run_checks(const Geometry& g, const std::vector<std::string>& checks, const CheckOptions& opt,
                    Phase phase = {});

/// Group that produces a report of the given name, for convergence studies.
std::string group_of(const std::string& report, bool two_d);

}  // namespace ricciforge::cli
