//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_PROFILE_H_
#define EXPRMOL_PROFILE_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exprmol {

/// One gene expression profile: fold-change values for T genes.
struct Profile {
  std::string sample_id;
  std::vector<double> values;

  friend bool operator==(const Profile &, const Profile &) = default;
};

/// Per-gene standardization statistics (population standard deviation).
struct NormalizationStats {
  std::vector<double> mean;
  std::vector<double> stddev;
  // Genes with zero variance; they are mapped to 0.
  std::vector<bool> degenerate;

  friend bool operator==(const NormalizationStats &, const NormalizationStats &) = default;
};

struct ProfileSet {
  std::vector<std::string> gene_ids;
  std::vector<Profile> profiles;
  std::optional<NormalizationStats> stats;

  std::size_t gene_count() const { return gene_ids.size(); }
  std::size_t size() const { return profiles.size(); }
  const Profile *find(std::string_view sample_id) const;
};

/// Malformed ingestion input. Row and column are 1-based; the header is row 1.
class IngestError: public std::runtime_error {
public:
  IngestError(const std::string &what, std::size_t row, std::size_t column)
      : std::runtime_error(what), row_(row), column_(column) { }

  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

private:
  std::size_t row_;
  std::size_t column_;
};

enum class Delimiter : char {
  kComma = ',',
  kTab = '\t',
};

// Header "sample_id,<gene_1>,...,<gene_T>", then one row per sample.
ProfileSet load_profiles(std::istream &in, Delimiter delim = Delimiter::kComma);
ProfileSet load_profiles(const std::filesystem::path &path,
                         Delimiter delim = Delimiter::kComma);
// Shortest round-trip float formatting, so load(write(set)) is bit-exact.
void write_profiles(std::ostream &out, const ProfileSet &set,
                    Delimiter delim = Delimiter::kComma);

// Per-gene z-scores over the set. The result carries the stats it used.
ProfileSet standardize(const ProfileSet &set);
// Applies previously computed stats (e.g. from a checkpoint) to new profiles.
std::vector<double> apply_stats(std::vector<double> values, const NormalizationStats &stats);

// Two-column file: sample_id, group key.
std::map<std::string, std::string> load_group_map(std::istream &in,
                                                  Delimiter delim = Delimiter::kComma);

// One profile per group key (elementwise mean), in first-appearance order.
ProfileSet average_replicates(const ProfileSet &set,
                              const std::map<std::string, std::string> &group);

// Negated values; the id gets a "_rev" suffix.
Profile reverse_profile(const Profile &p);
ProfileSet reverse_profiles(const ProfileSet &set);

std::vector<std::string> split_line(std::string_view line, char delim);
std::string format_double(double v);

} // namespace exprmol

#endif // EXPRMOL_PROFILE_H_
