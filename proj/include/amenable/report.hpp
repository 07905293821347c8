#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "rational.hpp"
#include "sets.hpp"

namespace amenable {

/// Runs [start, length] of consecutive integers; input must be sorted.
inline std::vector<std::pair<std::int64_t, std::int64_t>> run_length_encode(const std::vector<std::int64_t>& sorted)
{
  std::vector<std::pair<std::int64_t, std::int64_t>> runs;
  for (auto x : sorted) {
    if (!runs.empty() && runs.back().first + runs.back().second == x)
      ++runs.back().second;
    else
      runs.emplace_back(x, 1);
  }
  return runs;
}

inline std::vector<std::int64_t> run_length_decode(const std::vector<std::pair<std::int64_t, std::int64_t>>& runs)
{
  std::vector<std::int64_t> out;
  for (const auto& [start, length] : runs) {
    if (length <= 0)
      throw InvalidConfig("run length must be positive");
    for (std::int64_t i = 0; i < length; ++i)
      out.push_back(start + i);
  }
  return out;
}

/// {"lo", "hi", "count", "members": [[start, length], ...]}.
inline nlohmann::json integer_window_json(const SubsetSpec<IntegerGroup>& e, std::int64_t lo, std::int64_t hi)
{
  auto members = materialize(e, integer_range(lo, hi));
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& [start, length] : run_length_encode(members))
    runs.push_back({start, length});
  return {{"lo", lo}, {"hi", hi}, {"count", members.size()}, {"members", runs}};
}

/// The finite set recorded by integer_window_json; membership outside the
/// window is false.
inline SubsetSpec<IntegerGroup> integer_window_set(const nlohmann::json& j, std::string name)
{
  if (!j.contains("members") || !j["members"].is_array())
    throw InvalidConfig("window JSON lacks a members array");
  std::vector<std::pair<std::int64_t, std::int64_t>> runs;
  for (const auto& r : j["members"]) {
    if (!r.is_array() || r.size() != 2)
      throw InvalidConfig("members must be [start, length] pairs");
    runs.emplace_back(r[0].get<std::int64_t>(), r[1].get<std::int64_t>());
  }
  return finite_set(IntegerGroup{}, run_length_decode(runs), std::move(name));
}

inline void write_density_csv(std::ostream& os, const DensityReport& report)
{
  os << "N,count,size,ratio\n";
  for (const auto& r : report.rows)
    os << r.index << ',' << r.count << ',' << r.size << ',' << to_string(r.ratio) << '\n';
}

/// Writes through a temporary file and renames it into place.
inline void write_file_atomically(const std::filesystem::path& path, const std::string& content)
{
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os)
      throw InvalidConfig("cannot write " + tmp.string());
    os << content;
    if (!os)
      throw InvalidConfig("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

} // namespace amenable
