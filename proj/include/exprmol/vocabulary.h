//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_VOCABULARY_H_
#define EXPRMOL_VOCABULARY_H_

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace exprmol {

class VocabularyError: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// SMILES token inventory. Indices 0..3 are <PAD>, <SOS>, <EOS>, <UNK>;
/// corpus tokens follow in lexicographic order.
class Vocabulary {
public:
  static constexpr int kPad = 0;
  static constexpr int kSos = 1;
  static constexpr int kEos = 2;
  static constexpr int kUnk = 3;
  static constexpr int kSpecialCount = 4;

  Vocabulary();
  // Throws VocabularyError on a string that does not tokenize.
  static Vocabulary build(const std::vector<std::string> &smiles);
  // Inverse of tokens(); the specials must come first, in order.
  static Vocabulary from_tokens(std::vector<std::string> tokens);

  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string> &tokens() const { return tokens_; }
  const std::string &token(int index) const { return tokens_.at(index); }
  // -1 when absent.
  int index(std::string_view token) const;
  static bool is_special(int index) { return index >= 0 && index < kSpecialCount; }

  // <SOS> tokens... <EOS>. Unknown tokens map to <UNK> when allowed and
  // throw VocabularyError otherwise.
  std::vector<int> encode(std::string_view smiles, bool allow_unknown = false) const;
  // Concatenates lexemes up to the first <EOS>, skipping other specials.
  std::string decode(std::span<const int> ids) const;

  friend bool operator==(const Vocabulary &a, const Vocabulary &b) {
    return a.tokens_ == b.tokens_;
  }

private:
  struct Empty { };
  explicit Vocabulary(Empty) { }

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> lookup_;
};

// Lexemes of the SMILES tokens; throws VocabularyError on a lex error.
std::vector<std::string> token_lexemes(std::string_view smiles);

} // namespace exprmol

#endif // EXPRMOL_VOCABULARY_H_
