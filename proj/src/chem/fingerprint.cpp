//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/fingerprint.h"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <tuple>

#include "exprmol/random.h"

namespace exprmol {
namespace {
  constexpr std::uint64_t kAtomSeed = 0x45434650ULL; // "ECFP"

  std::uint64_t atom_invariant(const MolGraph &g, int i) {
    const Atom &a = g.atom(i);
    std::uint64_t h = kAtomSeed;
    h = hash_combine(h, static_cast<std::uint64_t>(a.atomic_number));
    h = hash_combine(h, static_cast<std::uint64_t>(g.heavy_degree(i)));
    h = hash_combine(h, static_cast<std::uint64_t>(a.charge + 128));
    h = hash_combine(h, static_cast<std::uint64_t>(g.total_hydrogens(i)));
    h = hash_combine(h, a.aromatic ? 1U : 0U);
    return h;
  }
} // namespace

Fingerprint::Fingerprint(int nbits): nbits_(nbits), words_((nbits + 63) / 64, 0) {
  if (nbits <= 0)
    throw std::invalid_argument("fingerprint width must be positive");
}

int Fingerprint::count() const {
  int n = 0;
  for (auto w: words_)
    n += std::popcount(w);
  return n;
}

std::vector<int> Fingerprint::on_bits() const {
  std::vector<int> out;
  for (int i = 0; i < nbits_; ++i) {
    if (test(i))
      out.push_back(i);
  }
  return out;
}

std::vector<Environment> morgan_environments(const MolGraph &g, int radius) {
  const int n = g.atom_count();
  std::vector<Environment> out;
  std::vector<std::uint64_t> inv(n);
  for (int i = 0; i < n; ++i) {
    inv[i] = atom_invariant(g, i);
    out.push_back({ inv[i], i, 0 });
  }

  using BondSet = std::vector<bool>;
  std::vector<BondSet> cover(n, BondSet(g.bond_count(), false));
  std::set<BondSet> seen;
  std::vector<bool> dead(n, false);
  for (int i = 0; i < n; ++i)
    dead[i] = g.degree(i) == 0;

  for (int layer = 1; layer <= radius; ++layer) {
    std::vector<std::uint64_t> next(n);
    std::vector<BondSet> next_cover(n);
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> nbrs;
      next_cover[i] = cover[i];
      for (const auto &nb: g.neighbors(i)) {
        nbrs.emplace_back(static_cast<std::uint64_t>(g.bond(nb.bond).order), inv[nb.atom]);
        next_cover[i][nb.bond] = true;
        for (int b = 0; b < g.bond_count(); ++b) {
          if (cover[nb.atom][b])
            next_cover[i][b] = true;
        }
      }
      std::sort(nbrs.begin(), nbrs.end());
      std::uint64_t h = hash_combine(static_cast<std::uint64_t>(layer), inv[i]);
      for (const auto &[bond, id]: nbrs) {
        h = hash_combine(h, bond);
        h = hash_combine(h, id);
      }
      next[i] = h;
    }

    // Within a layer, equal bond sets keep the smallest id (then atom).
    std::vector<int> order;
    for (int i = 0; i < n; ++i) {
      if (!dead[i])
        order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::tie(next_cover[a], next[a], a) < std::tie(next_cover[b], next[b], b);
    });
    for (int i: order) {
      if (!seen.insert(next_cover[i]).second) {
        dead[i] = true;
        continue;
      }
      out.push_back({ next[i], i, layer });
    }
    inv = std::move(next);
    cover = std::move(next_cover);
  }
  return out;
}

std::map<std::uint64_t, int> morgan_counts(const MolGraph &g, int radius) {
  std::map<std::uint64_t, int> counts;
  for (const auto &e: morgan_environments(g, radius))
    ++counts[e.id];
  return counts;
}

Fingerprint ecfp(const MolGraph &g, int radius, int nbits) {
  Fingerprint fp(nbits);
  for (const auto &e: morgan_environments(g, radius))
    fp.set(static_cast<int>(e.id % static_cast<std::uint64_t>(nbits)));
  return fp;
}

double tanimoto(const Fingerprint &a, const Fingerprint &b) {
  if (a.size() != b.size())
    throw std::invalid_argument("tanimoto: fingerprint widths differ (" + std::to_string(a.size())
                                + " vs " + std::to_string(b.size()) + ")");
  int both = 0;
  int either = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w) {
    both += std::popcount(a.words()[w] & b.words()[w]);
    either += std::popcount(a.words()[w] | b.words()[w]);
  }
  if (either == 0)
    return 1.0;
  return static_cast<double>(both) / static_cast<double>(either);
}

} // namespace exprmol
