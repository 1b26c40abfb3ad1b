// Copyright 2026 The mapeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mapeval/pointcloud_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "mapeval/error.hpp"

namespace mapeval {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  for (std::string tok; in >> tok;) tokens.push_back(std::move(tok));
  return tokens;
}

std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<long long> parse_int(std::string_view s) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

struct PcdField {
  std::string name;
  int size = 4;
  char type = 'F';
  int count = 1;
};

struct PcdHeader {
  std::vector<PcdField> fields;
  std::size_t points = 0;
  std::string data;
  // Token offset (ascii) / byte offset (binary) of x, y, z within a row.
  std::array<std::size_t, 3> token_offset{};
  std::array<std::size_t, 3> byte_offset{};
  std::size_t tokens_per_row = 0;
  std::size_t bytes_per_row = 0;
};

std::string describe(const std::filesystem::path& path) { return path.string(); }

PcdHeader parse_header(std::istream& in, const std::filesystem::path& path) {
  PcdHeader header;
  bool have_fields = false;
  bool have_points = false;
  bool have_data = false;
  std::vector<int> sizes;
  std::vector<char> types;
  std::vector<int> counts;

  std::string raw;
  while (!have_data && std::getline(in, raw)) {
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto tokens = split_ws(line);
    const std::string key = tokens.front();
    tokens.erase(tokens.begin());

    if (key == "FIELDS") {
      for (auto& name : tokens) header.fields.push_back({name});
      have_fields = !tokens.empty();
    } else if (key == "SIZE" || key == "COUNT") {
      auto& dst = key == "SIZE" ? sizes : counts;
      for (const auto& t : tokens) {
        const auto v = parse_int(t);
        if (!v || *v <= 0) {
          throw Error(ErrorCode::MalformedHeader, describe(path) + ": bad " + key + " entry '" + t + "'");
        }
        dst.push_back(static_cast<int>(*v));
      }
    } else if (key == "TYPE") {
      for (const auto& t : tokens) types.push_back(t.empty() ? '?' : t.front());
    } else if (key == "POINTS") {
      const auto v = tokens.size() == 1 ? parse_int(tokens[0]) : std::nullopt;
      if (!v || *v < 0) throw Error(ErrorCode::MalformedHeader, describe(path) + ": bad POINTS line");
      header.points = static_cast<std::size_t>(*v);
      have_points = true;
    } else if (key == "DATA") {
      if (tokens.size() != 1) throw Error(ErrorCode::MalformedHeader, describe(path) + ": bad DATA line");
      header.data = tokens[0];
      have_data = true;
    }
    // VERSION, WIDTH, HEIGHT, VIEWPOINT carry nothing we need.
  }

  if (!have_fields || !have_points || !have_data) {
    std::string missing;
    if (!have_fields) missing += " FIELDS";
    if (!have_points) missing += " POINTS";
    if (!have_data) missing += " DATA";
    throw Error(ErrorCode::MalformedHeader, describe(path) + ": missing header line(s):" + missing);
  }
  if (header.data == "binary_compressed") {
    throw Error(ErrorCode::UnsupportedEncoding, describe(path) + ": DATA binary_compressed is not supported");
  }
  if (header.data != "ascii" && header.data != "binary") {
    throw Error(ErrorCode::UnsupportedEncoding, describe(path) + ": unknown DATA encoding '" + header.data + "'");
  }

  const std::size_t n = header.fields.size();
  auto check_len = [&](std::size_t len, const char* what) {
    if (len != 0 && len != n) {
      throw Error(ErrorCode::MalformedHeader, describe(path) + ": " + what + " has " + std::to_string(len) +
                                                  " entries, FIELDS has " + std::to_string(n));
    }
  };
  check_len(sizes.size(), "SIZE");
  check_len(types.size(), "TYPE");
  check_len(counts.size(), "COUNT");
  for (std::size_t i = 0; i < n; ++i) {
    if (!sizes.empty()) header.fields[i].size = sizes[i];
    if (!types.empty()) header.fields[i].type = types[i];
    if (!counts.empty()) header.fields[i].count = counts[i];
  }

  constexpr std::array<const char*, 3> kAxes{"x", "y", "z"};
  for (std::size_t axis = 0; axis < 3; ++axis) {
    std::size_t tokens = 0;
    std::size_t bytes = 0;
    bool found = false;
    for (const auto& f : header.fields) {
      if (f.name == kAxes[axis]) {
        if (f.size != 4 || f.type != 'F' || f.count != 1) {
          throw Error(ErrorCode::MalformedHeader,
                      describe(path) + ": field '" + f.name + "' must be a single 4-byte float");
        }
        found = true;
        break;
      }
      tokens += static_cast<std::size_t>(f.count);
      bytes += static_cast<std::size_t>(f.size) * static_cast<std::size_t>(f.count);
    }
    if (!found) {
      throw Error(ErrorCode::MalformedHeader, describe(path) + ": FIELDS lacks '" + kAxes[axis] + "'");
    }
    header.token_offset[axis] = tokens;
    header.byte_offset[axis] = bytes;
  }
  for (const auto& f : header.fields) {
    header.tokens_per_row += static_cast<std::size_t>(f.count);
    header.bytes_per_row += static_cast<std::size_t>(f.size) * static_cast<std::size_t>(f.count);
  }
  return header;
}

float load_le_float(const char* bytes) {
  std::uint32_t bits = 0;
  std::memcpy(&bits, bytes, sizeof(bits));
  if constexpr (std::endian::native == std::endian::big) {
    bits = ((bits & 0xFFu) << 24) | ((bits & 0xFF00u) << 8) | ((bits >> 8) & 0xFF00u) | (bits >> 24);
  }
  return std::bit_cast<float>(bits);
}

void store_le_float(float value, char* bytes) {
  auto bits = std::bit_cast<std::uint32_t>(value);
  if constexpr (std::endian::native == std::endian::big) {
    bits = ((bits & 0xFFu) << 24) | ((bits & 0xFF00u) << 8) | ((bits >> 8) & 0xFF00u) | (bits >> 24);
  }
  std::memcpy(bytes, &bits, sizeof(bits));
}

void push_point(PcdReadResult& result, float x, float y, float z) {
  const Point3 p(x, y, z);
  if (is_finite(p)) {
    result.cloud.points.push_back(p);
  } else {
    ++result.dropped_non_finite;
  }
}

}  // namespace

PcdReadResult read_pcd(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + describe(path));

  const PcdHeader header = parse_header(in, path);
  PcdReadResult result;
  result.cloud.frame_label = "map";
  result.cloud.points.reserve(header.points);

  if (header.data == "ascii") {
    std::size_t rows = 0;
    std::string raw;
    while (rows < header.points && std::getline(in, raw)) {
      const std::string line = trim(raw);
      if (line.empty()) continue;
      const auto tokens = split_ws(line);
      if (tokens.size() < header.tokens_per_row) {
        throw Error(ErrorCode::TruncatedBody, describe(path) + ": data row " + std::to_string(rows + 1) +
                                                  " has " + std::to_string(tokens.size()) + " values, expected " +
                                                  std::to_string(header.tokens_per_row));
      }
      std::array<float, 3> xyz{};
      for (std::size_t axis = 0; axis < 3; ++axis) {
        const auto& tok = tokens[header.token_offset[axis]];
        const auto v = parse_double(tok);
        if (!v) {
          throw Error(ErrorCode::MalformedBody,
                      describe(path) + ": data row " + std::to_string(rows + 1) + ": bad number '" + tok + "'");
        }
        xyz[axis] = static_cast<float>(*v);
      }
      push_point(result, xyz[0], xyz[1], xyz[2]);
      ++rows;
    }
    if (rows != header.points) {
      throw Error(ErrorCode::TruncatedBody, describe(path) + ": POINTS " + std::to_string(header.points) +
                                                " but only " + std::to_string(rows) + " data rows");
    }
  } else {
    std::vector<char> row(header.bytes_per_row);
    for (std::size_t i = 0; i < header.points; ++i) {
      if (!in.read(row.data(), static_cast<std::streamsize>(row.size()))) {
        throw Error(ErrorCode::TruncatedBody, describe(path) + ": POINTS " + std::to_string(header.points) +
                                                  " but binary body ends after " + std::to_string(i) + " points");
      }
      push_point(result, load_le_float(row.data() + header.byte_offset[0]),
                 load_le_float(row.data() + header.byte_offset[1]),
                 load_le_float(row.data() + header.byte_offset[2]));
    }
  }
  return result;
}

void write_pcd(const PointCloud& cloud, const std::filesystem::path& path, PcdEncoding encoding) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + describe(path) + " for writing");

  const std::size_t n = cloud.size();
  out << "# .PCD v0.7 - Point Cloud Data file format\n"
      << "VERSION 0.7\n"
      << "FIELDS x y z\n"
      << "SIZE 4 4 4\n"
      << "TYPE F F F\n"
      << "COUNT 1 1 1\n"
      << "WIDTH " << n << "\n"
      << "HEIGHT 1\n"
      << "VIEWPOINT 0 0 0 1 0 0 0\n"
      << "POINTS " << n << "\n"
      << "DATA " << (encoding == PcdEncoding::Ascii ? "ascii" : "binary") << "\n";

  if (encoding == PcdEncoding::Ascii) {
    out << std::setprecision(std::numeric_limits<float>::max_digits10);
    for (const auto& p : cloud.points) {
      out << static_cast<float>(p.x()) << ' ' << static_cast<float>(p.y()) << ' ' << static_cast<float>(p.z())
          << '\n';
    }
  } else {
    std::vector<char> body(n * 12);
    for (std::size_t i = 0; i < n; ++i) {
      for (int axis = 0; axis < 3; ++axis) {
        store_le_float(static_cast<float>(cloud.points[i][axis]), body.data() + i * 12 + axis * 4);
      }
    }
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
  }
  if (!out) throw Error(ErrorCode::IoFailure, "write to " + describe(path) + " failed");
}

std::vector<GpsTargetPose> read_gps_poses(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + describe(path));

  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line = trim(line.substr(3));
    if (line != "target_id,x,y,z") {
      throw Error(ErrorCode::MalformedRow,
                  describe(path) + ":" + std::to_string(line_no) + ": expected header 'target_id,x,y,z'");
    }
    have_header = true;
  }
  if (!have_header) throw Error(ErrorCode::EmptyFile, describe(path) + ": no header");

  std::vector<GpsTargetPose> poses;
  std::unordered_set<std::string> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::string where = describe(path) + ":" + std::to_string(line_no);

    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string col; std::getline(ss, col, ',');) cols.push_back(trim(col));
    if (!line.empty() && line.back() == ',') cols.emplace_back();
    if (cols.size() != 4) {
      throw Error(ErrorCode::MalformedRow, where + ": expected 4 columns, got " + std::to_string(cols.size()));
    }
    if (cols[0].empty()) throw Error(ErrorCode::MalformedRow, where + ": empty target_id");

    GpsTargetPose pose;
    pose.target_id = cols[0];
    for (int axis = 0; axis < 3; ++axis) {
      const auto v = parse_double(cols[axis + 1]);
      if (!v || !std::isfinite(*v)) {
        throw Error(ErrorCode::MalformedRow, where + ": non-numeric coordinate '" + cols[axis + 1] + "'");
      }
      pose.position[axis] = *v;
    }
    if (!seen.insert(pose.target_id).second) {
      throw Error(ErrorCode::DuplicateTargetId, where + ": duplicate target_id '" + pose.target_id + "'");
    }
    poses.push_back(std::move(pose));
  }
  if (poses.empty()) throw Error(ErrorCode::EmptyFile, describe(path) + ": no data rows");
  return poses;
}

void write_gps_poses(const std::vector<GpsTargetPose>& poses, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + describe(path) + " for writing");
  out << "target_id,x,y,z\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& p : poses) {
    out << p.target_id << ',' << p.position.x() << ',' << p.position.y() << ',' << p.position.z() << '\n';
  }
  if (!out) throw Error(ErrorCode::IoFailure, "write to " + describe(path) + " failed");
}

}  // namespace mapeval
