#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "camforge/dynamics.hpp"
#include "camforge/forward_model.hpp"

namespace camforge::csv {

/// Two numeric columns. A first line that does not parse as numbers is
/// treated as a header. Throws IoError on unreadable or malformed files.
struct Columns {
  std::vector<double> first;
  std::vector<double> second;
};

Columns read_two_columns(const std::filesystem::path& path);

/// X,Y track table with shortest round-trip numbers.
std::string format_track(const std::vector<TrackSample>& samples);

/// t,X,V,E trajectory table with 17 significant digits.
std::string format_trajectory(const SimResult& result);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace camforge::csv
