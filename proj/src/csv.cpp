#include "camforge/csv.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "camforge/error.hpp"
#include "camforge/numfmt.hpp"

namespace camforge {

std::string format_shortest(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ec == std::errc() ? ptr : buf.data());
}

std::string format_17(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), ec == std::errc() ? ptr : buf.data());
}

double parse_double(const std::string& text) {
  std::size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (begin < end && text[begin] == '+') ++begin;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data() + begin, text.data() + end, value);
  if (begin == end || ec != std::errc() || ptr != text.data() + end) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + text + "'");
  }
  return value;
}

namespace csv {

Columns read_two_columns(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  Columns out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw Error(ErrorCode::IoError, path.string() + ":" + std::to_string(line_no) + ": expected two columns");
    }
    try {
      const double a = parse_double(line.substr(0, comma));
      const double b = parse_double(line.substr(comma + 1));
      out.first.push_back(a);
      out.second.push_back(b);
    } catch (const Error&) {
      if (out.first.empty() && line_no == 1) continue;  // header
      throw Error(ErrorCode::IoError, path.string() + ":" + std::to_string(line_no) + ": malformed number");
    }
  }
  return out;
}

std::string format_track(const std::vector<TrackSample>& samples) {
  std::string out = "X,Y\n";
  for (const auto& s : samples) out += format_shortest(s.x) + "," + format_shortest(s.y) + "\n";
  return out;
}

std::string format_trajectory(const SimResult& result) {
  std::string out = "t,X,V,E\n";
  for (const auto& s : result.samples) {
    out += format_17(s.t) + "," + format_17(s.x) + "," + format_17(s.v) + "," + format_17(s.energy) + "\n";
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace csv
}  // namespace camforge
