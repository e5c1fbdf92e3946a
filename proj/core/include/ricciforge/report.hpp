#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ricciforge {

enum class Status { passed, failed, degenerate };

std::string to_string(Status s);

/// Shape of the grid a report was computed on.
struct GridInfo {
  std::vector<int> dims;
  std::vector<double> spacing;
};

/// Norms of one residual check. `excluded[i]` marks masked samples; the L2
/// norm is the quadrature-weighted root sum over unmasked samples.
struct ResidualReport {
  std::string check;
  double sup = 0.0;
  double l2 = 0.0;
  std::size_t excluded = 0;
  std::size_t total = 0;
  double tol = 0.0;
  Status status = Status::failed;
  std::string mode;
  GridInfo grid;
  std::string note;
  std::vector<double> residual;
  std::vector<std::uint8_t> mask;

  bool passed() const { return status == Status::passed; }
  bool degenerate() const { return status == Status::degenerate; }
};

/// Builds a report from residual samples. `mask` may be empty (nothing
/// excluded). `weight` is the quadrature weight per sample. Everything masked
/// yields a degenerate report carrying `degenerate_note`.
ResidualReport make_report(std::string check, std::vector<double> residual, std::vector<std::uint8_t> mask,
                           double weight, double tol, std::string mode, GridInfo grid,
                           std::string degenerate_note = "every sample masked");

/// Combined verdict over several reports: failed if any failed, degenerate if
/// none failed and any is degenerate, otherwise passed.
Status combine(std::span<const ResidualReport> reports);

/// Several reports judged together.
struct ReportBundle {
  std::vector<ResidualReport> reports;

  Status status() const { return combine(reports); }
  const ResidualReport& find(const std::string& check) const;
};

}  // namespace ricciforge
