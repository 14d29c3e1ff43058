#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "camforge/inverse_design.hpp"

namespace camforge {

inline constexpr const char* kToolVersion = "camforge 1.0.0";

/// Where the target force came from, enough to rebuild it.
struct ForceEcho {
  std::string kind;  // "polynomial", "expression" or "table"
  std::string text;  // source text, or the table path
  std::vector<double> coefficients;
  std::string interpolation;  // tables only: "cubic" or "linear"

  bool operator==(const ForceEcho&) const = default;
};

struct BranchRecord {
  std::string label;
  int sign{};
  std::string stiffness_class;  // "positive" | "negative"
  std::string preload_class;    // "nonzero" | "zero"
  double stiffness{};
  double preload{};
  double domain_lo{};
  double domain_hi{};
  std::string lo_kind;
  std::string hi_kind;
  bool lo_closed{};
  bool hi_closed{};
  double residual_sup_abs{};
  double residual_rms_abs{};
  double residual_sup_rel{};
  double residual_rms_rel{};
  std::vector<std::array<double, 2>> samples;  // (X, Y)

  bool operator==(const BranchRecord&) const = default;
};

/// Machine-readable outcome of one design run. Field names are the JSON keys.
struct DesignReport {
  std::string tool_version{kToolVersion};
  ForceEcho force;
  double stiffness{};
  double preload{};
  double travel_limit{};
  double search_window{};
  double boundary_tolerance{};
  double quadrature_tolerance{};
  bool exact_params{};
  std::vector<BranchRecord> branches;
  std::vector<std::string> existence_notes;
  /// Only present when timing was requested; keeps default reports byte-stable.
  std::optional<double> wall_clock_s;

  bool operator==(const DesignReport&) const = default;
};

std::string_view to_string(BoundaryKind kind);

/// Evenly spaced (X, Y) samples across the branch domain shrunk by the boundary tolerance.
std::vector<TrackSample> sample_branch(const TrackBranch& branch, std::size_t count);

DesignReport make_report(const BranchSet& set, ForceEcho force, bool exact_params,
                         std::size_t samples_per_branch, std::size_t residual_samples);

std::string serialize_report(const DesignReport& report);
/// Throws IoError on malformed documents.
DesignReport parse_report(const std::string& text);

}  // namespace camforge
