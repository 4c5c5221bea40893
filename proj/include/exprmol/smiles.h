//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_SMILES_H_
#define EXPRMOL_SMILES_H_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "exprmol/mol_graph.h"

namespace exprmol {

enum class TokenKind {
  kAtom,
  kBracketAtom,
  kBond,
  kRingClosure,
  kBranchOpen,
  kBranchClose,
  kDot,
};

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t offset = 0; // byte offset in the source string

  friend bool operator==(const Token &, const Token &) = default;
};

enum class SmilesErrorKind {
  kEmpty,
  kLex,
  kSyntax,
  kUnclosedRing,
  kUnmatchedBranch,
  kValence,
  kRingBondConflict,
  kBracketAtom,
  kAromaticity,
};

std::string_view error_kind_name(SmilesErrorKind kind);
std::optional<SmilesErrorKind> error_kind_from_name(std::string_view name);

struct SmilesError {
  SmilesErrorKind kind;
  std::size_t offset;
  std::string message;
};

class SmilesException: public std::runtime_error {
public:
  explicit SmilesException(SmilesError error);

  const SmilesError &error() const { return error_; }

private:
  SmilesError error_;
};

struct TokenizeResult {
  std::vector<Token> tokens;
  std::optional<SmilesError> error;

  bool ok() const { return !error.has_value(); }
};

struct ParseResult {
  MolGraph graph;
  std::optional<SmilesError> error;

  bool ok() const { return !error.has_value(); }
};

// Maximal-munch tokenizer. Never throws; failures carry a byte offset.
TokenizeResult tokenize(std::string_view smiles);

// Builds and validates the graph: ring closures, branches, implicit
// hydrogens, valences and aromaticity.
ParseResult parse(std::span<const Token> tokens);
ParseResult parse_smiles(std::string_view smiles);
// Throws SmilesException.
MolGraph parse_smiles_or_throw(std::string_view smiles);
bool is_valid_smiles(std::string_view smiles);

// Hydrogen count an unbracketed atom would get in this bonding context, or
// -1 when no allowed valence fits.
int default_hydrogens(const MolGraph &g, int atom);

// Depth-first writer. Each component starts at its lowest-ranked atom and
// neighbors are visited in ascending rank.
std::string write_smiles(const MolGraph &g, std::span<const int> ranks);
// Ranks equal to atom indices.
std::string write_smiles(const MolGraph &g);

} // namespace exprmol

#endif // EXPRMOL_SMILES_H_
