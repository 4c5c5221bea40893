//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/profile.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

namespace exprmol {
namespace {
  std::string location(std::size_t row, std::size_t col) {
    return "row " + std::to_string(row) + ", column " + std::to_string(col);
  }

  bool next_line(std::istream &in, std::string &line) {
    if (!std::getline(in, line))
      return false;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    return true;
  }

  double parse_cell(const std::string &cell, std::size_t row, std::size_t col) {
    double v = 0.0;
    const char *first = cell.data();
    const char *last = cell.data() + cell.size();
    // from_chars does not accept a leading '+'.
    if (first != last && *first == '+')
      ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || cell.empty()) {
      throw IngestError("non-numeric cell \"" + cell + "\" at " + location(row, col), row,
                        col);
    }
    if (!std::isfinite(v)) {
      throw IngestError("non-finite value \"" + cell + "\" at " + location(row, col), row,
                        col);
    }
    return v;
  }
} // namespace

const Profile *ProfileSet::find(std::string_view sample_id) const {
  for (const auto &p: profiles) {
    if (p.sample_id == sample_id)
      return &p;
  }
  return nullptr;
}

std::vector<std::string> split_line(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

ProfileSet load_profiles(std::istream &in, Delimiter delim) {
  const char d = static_cast<char>(delim);
  ProfileSet set;
  std::string line;
  if (!next_line(in, line) || line.empty())
    throw IngestError("missing header row", 1, 1);

  auto header = split_line(line, d);
  if (header[0] != "sample_id") {
    throw IngestError("header must start with \"sample_id\", got \"" + header[0] + "\"", 1,
                      1);
  }
  if (header.size() < 2)
    throw IngestError("header declares no genes", 1, 2);
  std::set<std::string> seen_genes;
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c].empty())
      throw IngestError("empty gene id at " + location(1, c + 1), 1, c + 1);
    if (!seen_genes.insert(header[c]).second)
      throw IngestError("duplicate gene id \"" + header[c] + "\"", 1, c + 1);
    set.gene_ids.push_back(header[c]);
  }

  std::set<std::string> seen_ids;
  std::size_t row = 1;
  while (next_line(in, line)) {
    ++row;
    if (line.empty())
      continue;
    auto cells = split_line(line, d);
    if (cells.size() != header.size()) {
      throw IngestError("ragged row: expected " + std::to_string(header.size())
                            + " cells, got " + std::to_string(cells.size()) + " at row "
                            + std::to_string(row),
                        row, std::min(cells.size(), header.size()) + 1);
    }
    if (cells[0].empty())
      throw IngestError("empty sample_id at " + location(row, 1), row, 1);
    if (!seen_ids.insert(cells[0]).second) {
      throw IngestError("duplicate sample_id \"" + cells[0] + "\" at row "
                            + std::to_string(row),
                        row, 1);
    }
    Profile p;
    p.sample_id = cells[0];
    p.values.reserve(cells.size() - 1);
    for (std::size_t c = 1; c < cells.size(); ++c)
      p.values.push_back(parse_cell(cells[c], row, c + 1));
    set.profiles.push_back(std::move(p));
  }
  return set;
}

ProfileSet load_profiles(const std::filesystem::path &path, Delimiter delim) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open profile file " + path.string());
  return load_profiles(in, delim);
}

void write_profiles(std::ostream &out, const ProfileSet &set, Delimiter delim) {
  const char d = static_cast<char>(delim);
  out << "sample_id";
  for (const auto &g: set.gene_ids)
    out << d << g;
  out << '\n';
  for (const auto &p: set.profiles) {
    out << p.sample_id;
    for (double v: p.values)
      out << d << format_double(v);
    out << '\n';
  }
}

ProfileSet standardize(const ProfileSet &set) {
  if (set.profiles.empty())
    throw std::invalid_argument("standardize: empty profile set");
  const std::size_t t = set.gene_count();
  const double n = static_cast<double>(set.profiles.size());
  NormalizationStats stats;
  stats.mean.assign(t, 0.0);
  stats.stddev.assign(t, 0.0);
  stats.degenerate.assign(t, false);

  for (const auto &p: set.profiles) {
    for (std::size_t g = 0; g < t; ++g)
      stats.mean[g] += p.values[g];
  }
  for (double &m: stats.mean)
    m /= n;
  for (const auto &p: set.profiles) {
    for (std::size_t g = 0; g < t; ++g) {
      const double d = p.values[g] - stats.mean[g];
      stats.stddev[g] += d * d;
    }
  }
  for (std::size_t g = 0; g < t; ++g) {
    stats.stddev[g] = std::sqrt(stats.stddev[g] / n);
    stats.degenerate[g] = !(stats.stddev[g] > 0.0);
  }

  ProfileSet out = set;
  for (auto &p: out.profiles)
    p.values = apply_stats(std::move(p.values), stats);
  out.stats = std::move(stats);
  return out;
}

std::vector<double> apply_stats(std::vector<double> values, const NormalizationStats &stats) {
  if (values.size() != stats.mean.size()) {
    throw std::invalid_argument("profile has " + std::to_string(values.size())
                                + " genes, normalization stats have "
                                + std::to_string(stats.mean.size()));
  }
  for (std::size_t g = 0; g < values.size(); ++g) {
    values[g] = stats.degenerate[g] ? 0.0 : (values[g] - stats.mean[g]) / stats.stddev[g];
  }
  return values;
}

std::map<std::string, std::string> load_group_map(std::istream &in, Delimiter delim) {
  std::map<std::string, std::string> group;
  std::string line;
  std::size_t row = 0;
  while (next_line(in, line)) {
    ++row;
    if (line.empty() || line[0] == '#')
      continue;
    auto cells = split_line(line, static_cast<char>(delim));
    if (cells.size() != 2) {
      throw IngestError("group file rows need exactly 2 cells at row " + std::to_string(row),
                        row, cells.size());
    }
    if (row == 1 && cells[0] == "sample_id")
      continue;
    if (!group.emplace(cells[0], cells[1]).second) {
      throw IngestError("duplicate sample_id \"" + cells[0] + "\" in group file", row, 1);
    }
  }
  return group;
}

ProfileSet average_replicates(const ProfileSet &set,
                              const std::map<std::string, std::string> &group) {
  std::vector<std::string> keys;
  std::map<std::string, std::pair<std::vector<double>, std::size_t>> acc;
  for (const auto &p: set.profiles) {
    auto it = group.find(p.sample_id);
    if (it == group.end()) {
      throw std::invalid_argument("sample_id \"" + p.sample_id
                                  + "\" has no group assignment");
    }
    auto [slot, inserted] =
        acc.try_emplace(it->second, std::vector<double>(set.gene_count(), 0.0), 0);
    if (inserted)
      keys.push_back(it->second);
    auto &[sums, count] = slot->second;
    for (std::size_t g = 0; g < sums.size(); ++g)
      sums[g] += p.values[g];
    ++count;
  }

  ProfileSet out;
  out.gene_ids = set.gene_ids;
  for (const auto &key: keys) {
    auto &[sums, count] = acc.at(key);
    Profile p;
    p.sample_id = key;
    p.values = sums;
    for (double &v: p.values)
      v /= static_cast<double>(count);
    out.profiles.push_back(std::move(p));
  }
  return out;
}

Profile reverse_profile(const Profile &p) {
  Profile out;
  out.sample_id = p.sample_id + "_rev";
  out.values = p.values;
  for (double &v: out.values)
    v = v == 0.0 ? 0.0 : -v;
  return out;
}

ProfileSet reverse_profiles(const ProfileSet &set) {
  ProfileSet out;
  out.gene_ids = set.gene_ids;
  for (const auto &p: set.profiles)
    out.profiles.push_back(reverse_profile(p));
  return out;
}

} // namespace exprmol
