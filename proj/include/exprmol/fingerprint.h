//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_FINGERPRINT_H_
#define EXPRMOL_FINGERPRINT_H_

#include <cstdint>
#include <map>
#include <vector>

#include "exprmol/mol_graph.h"

namespace exprmol {

/// Fixed-width bit vector.
class Fingerprint {
public:
  Fingerprint() = default;
  explicit Fingerprint(int nbits);

  int size() const { return nbits_; }
  bool test(int bit) const { return (words_[bit >> 6] >> (bit & 63)) & 1; }
  void set(int bit) { words_[bit >> 6] |= std::uint64_t { 1 } << (bit & 63); }
  int count() const;
  std::vector<int> on_bits() const;
  const std::vector<std::uint64_t> &words() const { return words_; }

  friend bool operator==(const Fingerprint &, const Fingerprint &) = default;

private:
  int nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct Environment {
  std::uint64_t id;
  int center;
  int radius;
};

// Circular atom environments up to `radius` bonds, after removing
// environments that cover the same bond set as one seen before. Hashes use
// the mix64 / hash_combine functions from random.h.
std::vector<Environment> morgan_environments(const MolGraph &g, int radius);

// Environment id -> occurrence count.
std::map<std::uint64_t, int> morgan_counts(const MolGraph &g, int radius);

// ECFP-style bit vector: every environment id folded modulo nbits.
Fingerprint ecfp(const MolGraph &g, int radius = 2, int nbits = 2048);

// |A & B| / |A | B|; 1.0 when both are empty. Throws std::invalid_argument
// on width mismatch.
double tanimoto(const Fingerprint &a, const Fingerprint &b);

} // namespace exprmol

#endif // EXPRMOL_FINGERPRINT_H_
