#include "ricciforge/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ricciforge {

std::string to_string(Status s) {
  switch (s) {
    case Status::passed: return "passed";
    case Status::failed: return "failed";
    case Status::degenerate: return "degenerate";
  }
  return "?";
}

ResidualReport make_report(std::string check, std::vector<double> residual, std::vector<std::uint8_t> mask,
                           double weight, double tol, std::string mode, GridInfo grid, std::string degenerate_note) {
  ResidualReport r;
  r.check = std::move(check);
  r.tol = tol;
  r.mode = std::move(mode);
  r.grid = std::move(grid);
  r.total = residual.size();
  if (mask.empty()) mask.assign(residual.size(), 0);
  double sum_sq = 0.0;
  bool non_finite = false;
  for (std::size_t i = 0; i < residual.size(); ++i) {
    if (mask[i]) {
      ++r.excluded;
      continue;
    }
    const double a = std::abs(residual[i]);
    if (!std::isfinite(a)) non_finite = true;
    r.sup = std::max(r.sup, a);
    sum_sq += a * a;
  }
  r.l2 = std::sqrt(sum_sq * weight);
  if (r.total > 0 && r.excluded == r.total) {
    r.status = Status::degenerate;
    r.note = std::move(degenerate_note);
  } else if (non_finite) {
    r.status = Status::failed;
    r.sup = INFINITY;
    r.note = "non-finite residual";
  } else {
    r.status = r.sup <= tol ? Status::passed : Status::failed;
  }
  r.residual = std::move(residual);
  r.mask = std::move(mask);
  return r;
}

Status combine(std::span<const ResidualReport> reports) {
  bool degenerate = false;
  for (const auto& r : reports) {
    if (r.status == Status::failed) return Status::failed;
    if (r.status == Status::degenerate) degenerate = true;
  }
  return degenerate ? Status::degenerate : Status::passed;
}

const ResidualReport& ReportBundle::find(const std::string& check) const {
  for (const auto& r : reports)
    if (r.check == check) return r;
  throw std::out_of_range("no report named " + check);
}

}  // namespace ricciforge
