//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/vocabulary.h"

#include <set>

#include "exprmol/smiles.h"

namespace exprmol {
namespace {
  const std::vector<std::string> kSpecials = { "<PAD>", "<SOS>", "<EOS>", "<UNK>" };
}

std::vector<std::string> token_lexemes(std::string_view smiles) {
  auto r = tokenize(smiles);
  if (!r.ok())
    throw VocabularyError("cannot tokenize \"" + std::string(smiles) + "\": " + r.error->message);
  std::vector<std::string> out;
  out.reserve(r.tokens.size());
  for (auto &t: r.tokens)
    out.push_back(std::move(t.lexeme));
  return out;
}

Vocabulary::Vocabulary(): Vocabulary(from_tokens(kSpecials)) { }

Vocabulary Vocabulary::build(const std::vector<std::string> &smiles) {
  std::set<std::string> seen;
  for (const auto &s: smiles) {
    for (auto &t: token_lexemes(s))
      seen.insert(std::move(t));
  }
  std::vector<std::string> tokens = kSpecials;
  tokens.insert(tokens.end(), seen.begin(), seen.end());
  return from_tokens(std::move(tokens));
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  if (tokens.size() < kSpecials.size()
      || !std::equal(kSpecials.begin(), kSpecials.end(), tokens.begin())) {
    throw VocabularyError("vocabulary must start with <PAD>, <SOS>, <EOS>, <UNK>");
  }
  Vocabulary v { Empty {} };
  v.tokens_ = std::move(tokens);
  for (std::size_t i = 0; i < v.tokens_.size(); ++i) {
    if (!v.lookup_.emplace(v.tokens_[i], static_cast<int>(i)).second)
      throw VocabularyError("duplicate vocabulary token \"" + v.tokens_[i] + "\"");
  }
  return v;
}

int Vocabulary::index(std::string_view token) const {
  auto it = lookup_.find(std::string(token));
  return it == lookup_.end() ? -1 : it->second;
}

std::vector<int> Vocabulary::encode(std::string_view smiles, bool allow_unknown) const {
  std::vector<int> ids = { kSos };
  for (const auto &t: token_lexemes(smiles)) {
    int id = index(t);
    if (id < 0 || is_special(id)) {
      if (!allow_unknown)
        throw VocabularyError("token \"" + t + "\" is not in the vocabulary");
      id = kUnk;
    }
    ids.push_back(id);
  }
  ids.push_back(kEos);
  return ids;
}

std::string Vocabulary::decode(std::span<const int> ids) const {
  std::string out;
  for (int id: ids) {
    if (id == kEos)
      break;
    if (!is_special(id))
      out += token(id);
  }
  return out;
}

} // namespace exprmol
