//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/smiles.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <utility>

#include "exprmol/elements.h"
#include "exprmol/rings.h"

namespace exprmol {
namespace {
  constexpr std::array<std::string_view, 9> kErrorNames = {
    "empty", "lex", "syntax", "unclosed_ring", "unmatched_branch",
    "valence", "ring_bond_conflict", "bracket_atom", "aromaticity",
  };

  SmilesError make_error(SmilesErrorKind kind, std::size_t offset, std::string msg) {
    return { kind, offset, std::move(msg) };
  }

  bool is_bond_char(char c) {
    return c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\';
  }

  std::string at(std::size_t offset) {
    return " at offset " + std::to_string(offset);
  }

  struct BondSpec {
    char symbol = 0; // 0 when no bond symbol was written
    std::size_t offset = 0;
  };

  BondOrder order_of(char symbol) {
    switch (symbol) {
    case '=':
      return BondOrder::kDouble;
    case '#':
      return BondOrder::kTriple;
    case ':':
      return BondOrder::kAromatic;
    default:
      return BondOrder::kSingle;
    }
  }

  BondDirection direction_of(char symbol) {
    if (symbol == '/')
      return BondDirection::kUp;
    if (symbol == '\\')
      return BondDirection::kDown;
    return BondDirection::kNone;
  }

  BondDirection flip(BondDirection d) {
    if (d == BondDirection::kUp)
      return BondDirection::kDown;
    if (d == BondDirection::kDown)
      return BondDirection::kUp;
    return d;
  }

  // Organic-subset token to atom. The tokenizer guarantees the lexeme.
  Atom organic_atom(std::string_view lexeme) {
    Atom a;
    std::string sym(lexeme);
    if (std::islower(static_cast<unsigned char>(sym[0]))) {
      a.aromatic = true;
      sym[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sym[0])));
    }
    a.atomic_number = find_element(sym)->atomic_number;
    return a;
  }

  std::optional<std::string> parse_bracket(std::string_view lexeme, Atom &a) {
    std::string_view s = lexeme.substr(1, lexeme.size() - 2);
    std::size_t p = 0;
    auto digits = [&](int &out) {
      const std::size_t start = p;
      int v = 0;
      while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) {
        v = v * 10 + (s[p] - '0');
        if (v > 999)
          return false;
        ++p;
      }
      out = v;
      return p > start;
    };

    a = Atom {};
    a.bracketed = true;
    int iso = 0;
    if (digits(iso)) {
      if (iso == 0)
        return "isotope must be positive";
      a.isotope = iso;
    }
    if (p >= s.size())
      return "missing element symbol";
    if (s[p] == '*')
      return "wildcard atoms are not supported";

    if (std::islower(static_cast<unsigned char>(s[p]))) {
      static constexpr std::array<std::string_view, 9> kAromatic = {
        "se", "as", "te", "b", "c", "n", "o", "p", "s",
      };
      std::string_view found;
      for (auto sym: kAromatic) {
        if (s.substr(p, sym.size()) == sym) {
          found = sym;
          break;
        }
      }
      if (found.empty())
        return "unknown aromatic symbol";
      std::string up(found);
      up[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(up[0])));
      a.atomic_number = find_element(up)->atomic_number;
      a.aromatic = true;
      p += found.size();
    } else if (std::isupper(static_cast<unsigned char>(s[p]))) {
      const Element *e = nullptr;
      if (p + 1 < s.size() && std::islower(static_cast<unsigned char>(s[p + 1])))
        e = find_element(s.substr(p, 2));
      if (e != nullptr) {
        p += 2;
      } else {
        e = find_element(s.substr(p, 1));
        if (e == nullptr)
          return "unknown element";
        ++p;
      }
      a.atomic_number = e->atomic_number;
    } else {
      return "missing element symbol";
    }

    if (p < s.size() && s[p] == '@') {
      ++p;
      a.chirality = Chirality::kCounterClockwise;
      if (p < s.size() && s[p] == '@') {
        ++p;
        a.chirality = Chirality::kClockwise;
      }
      if (p < s.size() && std::isupper(static_cast<unsigned char>(s[p])) && s[p] != 'H')
        return "only @ and @@ chirality is supported";
    }

    if (p < s.size() && s[p] == 'H') {
      ++p;
      int h = 1;
      if (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) {
        h = s[p] - '0';
        ++p;
      }
      a.hydrogens = h;
    }

    if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
      const char sign = s[p++];
      int magnitude = 1;
      int v = 0;
      if (digits(v)) {
        if (v > 15)
          return "charge out of range";
        magnitude = v;
      } else {
        while (p < s.size() && s[p] == sign) {
          ++magnitude;
          ++p;
        }
      }
      a.charge = sign == '+' ? magnitude : -magnitude;
    }

    if (p < s.size() && s[p] == ':')
      return "atom classes are not supported";
    if (p != s.size())
      return "unexpected character '" + std::string(1, s[p]) + "'";
    if (a.aromatic && !can_be_aromatic(a.atomic_number))
      return "element cannot be aromatic";
    return std::nullopt;
  }

  // Aromatic atoms that still need a double bond in some Kekule structure.
  bool needs_double_bond(const MolGraph &g, int i) {
    const Atom &a = g.atom(i);
    if (!a.aromatic)
      return false;
    int buf[4];
    const auto allowed = allowed_valences(a.atomic_number, a.charge, buf);
    const int used = g.bond_order_sum(i) + a.hydrogens;
    for (int v: allowed) {
      if (v >= used)
        return v > used;
    }
    return false;
  }

  // Backtracking perfect matching of the atoms that need a double bond over
  // aromatic bonds. Gives up (and accepts) after a fixed number of steps.
  class KekuleMatcher {
  public:
    explicit KekuleMatcher(const MolGraph &g): g_(g), need_(g.atom_count()) {
      for (int i = 0; i < g.atom_count(); ++i)
        need_[i] = needs_double_bond(g, i);
      mate_.assign(g.atom_count(), -1);
    }

    // Index of an atom that cannot be matched, or -1.
    int run() {
      for (int i = 0; i < g_.atom_count(); ++i) {
        if (need_[i] && mate_[i] < 0) {
          if (!solve())
            return budget_ > 0 ? first_unmatched() : -1;
          break;
        }
      }
      return -1;
    }

  private:
    int first_unmatched() const {
      for (int i = 0; i < g_.atom_count(); ++i) {
        if (need_[i] && mate_[i] < 0)
          return i;
      }
      return 0;
    }

    int options(int u) const {
      int n = 0;
      for (const auto &nb: g_.neighbors(u)) {
        if (g_.bond(nb.bond).order == BondOrder::kAromatic && need_[nb.atom]
            && mate_[nb.atom] < 0)
          ++n;
      }
      return n;
    }

    bool solve() {
      if (--budget_ <= 0)
        return true;
      int best = -1;
      int best_opts = 0;
      for (int i = 0; i < g_.atom_count(); ++i) {
        if (!need_[i] || mate_[i] >= 0)
          continue;
        const int o = options(i);
        if (best < 0 || o < best_opts) {
          best = i;
          best_opts = o;
        }
      }
      if (best < 0)
        return true;
      if (best_opts == 0)
        return false;
      for (const auto &nb: g_.neighbors(best)) {
        if (g_.bond(nb.bond).order != BondOrder::kAromatic || !need_[nb.atom]
            || mate_[nb.atom] >= 0)
          continue;
        mate_[best] = nb.atom;
        mate_[nb.atom] = best;
        if (solve())
          return true;
        mate_[best] = -1;
        mate_[nb.atom] = -1;
      }
      return false;
    }

    const MolGraph &g_;
    std::vector<bool> need_;
    std::vector<int> mate_;
    long budget_ = 200000;
  };

  std::string element_text(const Atom &a) {
    std::string sym(element(a.atomic_number).symbol);
    if (a.aromatic)
      sym[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(sym[0])));
    return sym;
  }

  std::string atom_text(const MolGraph &g, int i) {
    const Atom &a = g.atom(i);
    const bool plain = is_organic_subset(a.atomic_number) && a.charge == 0 && a.isotope == 0
                       && a.chirality == Chirality::kNone
                       && a.hydrogens == default_hydrogens(g, i);
    if (plain)
      return element_text(a);

    std::string s = "[";
    if (a.isotope > 0)
      s += std::to_string(a.isotope);
    s += element_text(a);
    if (a.chirality == Chirality::kCounterClockwise)
      s += "@";
    else if (a.chirality == Chirality::kClockwise)
      s += "@@";
    if (a.hydrogens > 0) {
      s += "H";
      if (a.hydrogens > 1)
        s += std::to_string(a.hydrogens);
    }
    if (a.charge != 0) {
      s += a.charge > 0 ? "+" : "-";
      const int m = a.charge > 0 ? a.charge : -a.charge;
      if (m > 1)
        s += std::to_string(m);
    }
    s += "]";
    return s;
  }

  std::string bond_text(const MolGraph &g, int bond, int from) {
    const Bond &b = g.bond(bond);
    switch (b.order) {
    case BondOrder::kDouble:
      return "=";
    case BondOrder::kTriple:
      return "#";
    case BondOrder::kAromatic:
      return g.atom(b.begin).aromatic && g.atom(b.end).aromatic ? "" : ":";
    case BondOrder::kSingle:
      break;
    }
    BondDirection d = b.direction;
    if (from != b.begin)
      d = flip(d);
    if (d == BondDirection::kUp)
      return "/";
    if (d == BondDirection::kDown)
      return "\\";
    return g.atom(b.begin).aromatic && g.atom(b.end).aromatic ? "-" : "";
  }

  std::string ring_label(int digit) {
    if (digit < 10)
      return std::string(1, static_cast<char>('0' + digit));
    if (digit > 99)
      throw std::runtime_error("more than 99 simultaneously open rings");
    return "%" + std::to_string(digit);
  }

  class Writer {
  public:
    Writer(const MolGraph &g, std::span<const int> ranks)
        : g_(g), ranks_(ranks), order_(g.atom_count(), -1),
          parent_bond_(g.atom_count(), -1), children_(g.atom_count()),
          ring_bonds_(g.atom_count()), classified_(g.bond_count(), false),
          digit_of_bond_(g.bond_count(), -1) { }

    std::string run() {
      std::vector<int> by_rank(g_.atom_count());
      for (int i = 0; i < g_.atom_count(); ++i)
        by_rank[i] = i;
      std::sort(by_rank.begin(), by_rank.end(),
                [&](int a, int b) { return ranks_[a] < ranks_[b]; });

      bool first = true;
      for (int root: by_rank) {
        if (order_[root] >= 0)
          continue;
        build(root);
        if (!first)
          out_ += '.';
        first = false;
        emit(root);
      }
      return out_;
    }

  private:
    std::vector<Neighbor> sorted_neighbors(int u) const {
      auto nbrs = g_.neighbors(u);
      std::vector<Neighbor> v(nbrs.begin(), nbrs.end());
      std::sort(v.begin(), v.end(), [&](const Neighbor &a, const Neighbor &b) {
        return ranks_[a.atom] < ranks_[b.atom];
      });
      return v;
    }

    // Iterative DFS assigning tree edges and ring-closure bonds.
    void build(int root) {
      struct Frame {
        int atom;
        std::vector<Neighbor> nbrs;
        std::size_t next;
      };
      std::vector<Frame> stack;
      order_[root] = counter_++;
      stack.push_back({ root, sorted_neighbors(root), 0 });
      while (!stack.empty()) {
        Frame &f = stack.back();
        if (f.next == f.nbrs.size()) {
          stack.pop_back();
          continue;
        }
        const Neighbor nb = f.nbrs[f.next++];
        if (classified_[nb.bond])
          continue;
        classified_[nb.bond] = true;
        if (order_[nb.atom] >= 0) {
          ring_bonds_[f.atom].push_back(nb.bond);
          ring_bonds_[nb.atom].push_back(nb.bond);
          continue;
        }
        const int u = f.atom;
        order_[nb.atom] = counter_++;
        parent_bond_[nb.atom] = nb.bond;
        children_[u].push_back(nb.atom);
        stack.push_back({ nb.atom, sorted_neighbors(nb.atom), 0 });
      }
    }

    int take_digit() {
      for (int d = 1;; ++d) {
        if (std::find(used_digits_.begin(), used_digits_.end(), d) == used_digits_.end()) {
          used_digits_.push_back(d);
          return d;
        }
      }
    }

    void emit(int root) {
      struct Frame {
        int atom;
        std::size_t next_child;
        bool in_branch;
      };
      std::vector<Frame> stack;
      auto open_atom = [&](int u) {
        out_ += atom_text(g_, u);
        auto &rings = ring_bonds_[u];
        std::vector<int> closing, opening;
        for (int b: rings)
          (digit_of_bond_[b] >= 0 ? closing : opening).push_back(b);
        std::sort(closing.begin(), closing.end(),
                  [&](int a, int b) { return digit_of_bond_[a] < digit_of_bond_[b]; });
        std::sort(opening.begin(), opening.end(), [&](int a, int b) {
          return order_[g_.bond(a).other(u)] < order_[g_.bond(b).other(u)];
        });
        std::vector<int> released;
        for (int b: closing) {
          out_ += ring_label(digit_of_bond_[b]);
          released.push_back(digit_of_bond_[b]);
        }
        for (int b: opening) {
          const int d = take_digit();
          digit_of_bond_[b] = d;
          out_ += bond_text(g_, b, u);
          out_ += ring_label(d);
        }
        for (int d: released)
          used_digits_.erase(std::find(used_digits_.begin(), used_digits_.end(), d));
      };

      open_atom(root);
      stack.push_back({ root, 0, false });
      while (!stack.empty()) {
        Frame &f = stack.back();
        const auto &kids = children_[f.atom];
        if (f.next_child == kids.size()) {
          if (f.in_branch)
            out_ += ')';
          stack.pop_back();
          continue;
        }
        const int parent = f.atom;
        const int child = kids[f.next_child++];
        const bool branch = f.next_child < kids.size();
        if (branch)
          out_ += '(';
        out_ += bond_text(g_, parent_bond_[child], parent);
        open_atom(child);
        stack.push_back({ child, 0, branch });
      }
    }

    const MolGraph &g_;
    std::span<const int> ranks_;
    std::vector<int> order_;
    std::vector<int> parent_bond_;
    std::vector<std::vector<int>> children_;
    std::vector<std::vector<int>> ring_bonds_;
    std::vector<bool> classified_;
    std::vector<int> digit_of_bond_;
    std::vector<int> used_digits_;
    int counter_ = 0;
    std::string out_;
  };
} // namespace

std::string_view error_kind_name(SmilesErrorKind kind) {
  return kErrorNames[static_cast<std::size_t>(kind)];
}

std::optional<SmilesErrorKind> error_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kErrorNames.size(); ++i) {
    if (kErrorNames[i] == name)
      return static_cast<SmilesErrorKind>(i);
  }
  return std::nullopt;
}

SmilesException::SmilesException(SmilesError error)
    : std::runtime_error(std::string(error_kind_name(error.kind)) + " error: " + error.message),
      error_(std::move(error)) { }

TokenizeResult tokenize(std::string_view smiles) {
  TokenizeResult r;
  std::size_t i = 0;
  auto push = [&](TokenKind kind, std::size_t len) {
    r.tokens.push_back({ kind, std::string(smiles.substr(i, len)), i });
    i += len;
  };
  while (i < smiles.size()) {
    const char c = smiles[i];
    switch (c) {
    case 'B':
    case 'C':
      if (i + 1 < smiles.size() && smiles[i + 1] == (c == 'B' ? 'r' : 'l'))
        push(TokenKind::kAtom, 2);
      else
        push(TokenKind::kAtom, 1);
      continue;
    case 'N':
    case 'O':
    case 'P':
    case 'S':
    case 'F':
    case 'I':
    case 'b':
    case 'c':
    case 'n':
    case 'o':
    case 'p':
    case 's':
      push(TokenKind::kAtom, 1);
      continue;
    case '[': {
      const std::size_t close = smiles.find_first_of("[]", i + 1);
      if (close == std::string_view::npos || smiles[close] == '[') {
        r.error = make_error(SmilesErrorKind::kLex, i, "unterminated bracket atom" + at(i));
        return r;
      }
      push(TokenKind::kBracketAtom, close - i + 1);
      continue;
    }
    case '(':
      push(TokenKind::kBranchOpen, 1);
      continue;
    case ')':
      push(TokenKind::kBranchClose, 1);
      continue;
    case '.':
      push(TokenKind::kDot, 1);
      continue;
    case '%':
      if (i + 2 < smiles.size() && std::isdigit(static_cast<unsigned char>(smiles[i + 1]))
          && std::isdigit(static_cast<unsigned char>(smiles[i + 2]))) {
        push(TokenKind::kRingClosure, 3);
        continue;
      }
      r.error = make_error(SmilesErrorKind::kLex, i, "'%' must be followed by two digits" + at(i));
      return r;
    default:
      break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      push(TokenKind::kRingClosure, 1);
    } else if (is_bond_char(c)) {
      push(TokenKind::kBond, 1);
    } else {
      std::string shown = std::isprint(static_cast<unsigned char>(c))
                              ? "'" + std::string(1, c) + "'"
                              : "byte " + std::to_string(static_cast<unsigned char>(c));
      r.error = make_error(SmilesErrorKind::kLex, i, "illegal character " + shown + at(i));
      return r;
    }
  }
  return r;
}

int default_hydrogens(const MolGraph &g, int i) {
  const Atom &a = g.atom(i);
  int buf[4];
  const auto allowed = allowed_valences(a.atomic_number, a.charge, buf);
  if (allowed.empty())
    return 0;
  const int sum = g.bond_order_sum(i);
  for (int v: allowed) {
    if (v >= sum)
      return a.aromatic ? std::max(0, v - sum - 1) : v - sum;
  }
  return -1;
}

ParseResult parse(std::span<const Token> tokens) {
  ParseResult r;
  if (tokens.empty()) {
    r.error = make_error(SmilesErrorKind::kEmpty, 0, "empty SMILES");
    return r;
  }
  MolGraph &g = r.graph;
  std::vector<std::size_t> atom_offset;
  std::vector<bool> implicit_bond;
  std::vector<std::size_t> bond_offset;

  struct OpenRing {
    int atom;
    BondSpec bond;
    std::size_t offset;
  };
  std::map<int, OpenRing> rings;
  std::vector<std::pair<int, std::size_t>> branches;
  int prev = -1;
  BondSpec pending_spec;
  bool pending = false;

  auto fail = [&](SmilesErrorKind kind, std::size_t offset, std::string msg) {
    r.error = make_error(kind, offset, std::move(msg) + at(offset));
    return r;
  };

  auto connect = [&](int a, int b, char symbol, std::size_t offset) -> std::optional<std::string> {
    BondOrder order = order_of(symbol);
    if (symbol == 0 && g.atom(a).aromatic && g.atom(b).aromatic)
      order = BondOrder::kAromatic;
    if (symbol == ':' && !(g.atom(a).aromatic && g.atom(b).aromatic))
      return "aromatic bond between non-aromatic atoms";
    g.add_bond(a, b, order, direction_of(symbol));
    implicit_bond.push_back(symbol == 0);
    bond_offset.push_back(offset);
    return std::nullopt;
  };

  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const Token &tok = tokens[t];
    switch (tok.kind) {
    case TokenKind::kAtom:
    case TokenKind::kBracketAtom: {
      Atom a;
      if (tok.kind == TokenKind::kAtom) {
        a = organic_atom(tok.lexeme);
      } else if (auto err = parse_bracket(tok.lexeme, a)) {
        return fail(SmilesErrorKind::kBracketAtom, tok.offset,
                    "invalid bracket atom " + tok.lexeme + ": " + *err);
      }
      const int id = g.add_atom(a);
      atom_offset.push_back(tok.offset);
      if (prev >= 0) {
        const BondSpec spec = (pending ? pending_spec : BondSpec { 0, tok.offset });
        if (auto err = connect(prev, id, spec.symbol, spec.offset))
          return fail(SmilesErrorKind::kAromaticity, spec.offset, *err);
      } else if (pending) {
        return fail(SmilesErrorKind::kSyntax, pending_spec.offset, "bond without a preceding atom");
      }
      pending = false;
      prev = id;
      break;
    }
    case TokenKind::kBond:
      if (prev < 0)
        return fail(SmilesErrorKind::kSyntax, tok.offset, "bond without a preceding atom");
      if (pending)
        return fail(SmilesErrorKind::kSyntax, tok.offset, "two consecutive bond symbols");
      pending_spec = BondSpec { tok.lexeme[0], tok.offset };
      pending = true;
      break;
    case TokenKind::kRingClosure: {
      if (prev < 0)
        return fail(SmilesErrorKind::kSyntax, tok.offset, "ring closure without an atom");
      const int number = tok.lexeme[0] == '%' ? std::stoi(tok.lexeme.substr(1))
                                              : tok.lexeme[0] - '0';
      const BondSpec here = (pending ? pending_spec : BondSpec { 0, tok.offset });
      pending = false;
      auto it = rings.find(number);
      if (it == rings.end()) {
        rings.emplace(number, OpenRing { prev, here, tok.offset });
        break;
      }
      const OpenRing open = it->second;
      rings.erase(it);
      if (open.atom == prev)
        return fail(SmilesErrorKind::kRingBondConflict, tok.offset,
                    "ring closure " + tok.lexeme + " bonds an atom to itself");
      if (g.bond_between(open.atom, prev))
        return fail(SmilesErrorKind::kRingBondConflict, tok.offset,
                    "ring closure " + tok.lexeme + " duplicates an existing bond");
      char symbol = open.bond.symbol;
      if (here.symbol != 0) {
        if (symbol != 0 && order_of(symbol) != order_of(here.symbol))
          return fail(SmilesErrorKind::kRingBondConflict, tok.offset,
                      "ring closure " + tok.lexeme + " has conflicting bond symbols");
        if (symbol == 0 || direction_of(symbol) == BondDirection::kNone) {
          // A mark written at the closing digit points from the closing atom
          // back to the opening one.
          symbol = here.symbol == '/' ? '\\' : here.symbol == '\\' ? '/' : here.symbol;
        }
      }
      if (auto err = connect(open.atom, prev, symbol, open.offset))
        return fail(SmilesErrorKind::kAromaticity, tok.offset, *err);
      break;
    }
    case TokenKind::kBranchOpen:
      if (prev < 0)
        return fail(SmilesErrorKind::kSyntax, tok.offset, "branch without a preceding atom");
      if (pending)
        return fail(SmilesErrorKind::kSyntax, tok.offset, "bond symbol before '('");
      if (t + 1 < tokens.size() && tokens[t + 1].kind == TokenKind::kBranchClose)
        return fail(SmilesErrorKind::kSyntax, tok.offset, "empty branch");
      branches.emplace_back(prev, tok.offset);
      break;
    case TokenKind::kBranchClose:
      if (branches.empty())
        return fail(SmilesErrorKind::kUnmatchedBranch, tok.offset, "unmatched ')'");
      if (pending)
        return fail(SmilesErrorKind::kSyntax, pending_spec.offset, "bond symbol before ')'");
      prev = branches.back().first;
      branches.pop_back();
      break;
    case TokenKind::kDot:
      if (prev < 0 || pending)
        return fail(SmilesErrorKind::kSyntax, tok.offset, "misplaced '.'");
      if (!branches.empty())
        return fail(SmilesErrorKind::kSyntax, tok.offset, "'.' inside a branch");
      prev = -1;
      break;
    }
  }

  const std::size_t end = tokens.back().offset + tokens.back().lexeme.size();
  if (pending)
    return fail(SmilesErrorKind::kSyntax, pending_spec.offset, "dangling bond symbol");
  if (prev < 0)
    return fail(SmilesErrorKind::kSyntax, end, "SMILES ends without an atom");
  if (!branches.empty())
    return fail(SmilesErrorKind::kUnmatchedBranch, branches.back().second, "unclosed '('");
  if (!rings.empty()) {
    const auto &[number, open] = *rings.begin();
    return fail(SmilesErrorKind::kUnclosedRing, open.offset,
                "ring bond " + std::to_string(number) + " is never closed");
  }

  // An unmarked bond between aromatic atoms outside any ring is single.
  const auto in_ring = ring_bond_flags(g);
  for (int b = 0; b < g.bond_count(); ++b) {
    if (g.bond(b).order != BondOrder::kAromatic || in_ring[b])
      continue;
    if (!implicit_bond[b])
      return fail(SmilesErrorKind::kAromaticity, bond_offset[b],
                  "aromatic bond outside a ring");
    g.bond(b).order = BondOrder::kSingle;
  }

  for (int i = 0; i < g.atom_count(); ++i) {
    Atom &a = g.atom(i);
    if (!a.bracketed) {
      const int h = default_hydrogens(g, i);
      if (h < 0)
        return fail(SmilesErrorKind::kValence, atom_offset[i],
                    "valence exceeded on " + element_text(a));
      a.hydrogens = h;
      continue;
    }
    int buf[4];
    const auto allowed = allowed_valences(a.atomic_number, a.charge, buf);
    if (!allowed.empty() && g.bond_order_sum(i) + a.hydrogens > allowed.back())
      return fail(SmilesErrorKind::kValence, atom_offset[i],
                  "valence exceeded on " + element_text(a));
  }

  for (int i = 0; i < g.atom_count(); ++i) {
    if (!g.atom(i).aromatic)
      continue;
    int aromatic_bonds = 0;
    for (const auto &nb: g.neighbors(i))
      aromatic_bonds += g.bond(nb.bond).order == BondOrder::kAromatic;
    if (aromatic_bonds < 2)
      return fail(SmilesErrorKind::kAromaticity, atom_offset[i],
                  "aromatic atom not in an aromatic ring");
  }

  const int bad = KekuleMatcher(g).run();
  if (bad >= 0)
    return fail(SmilesErrorKind::kAromaticity, atom_offset[bad],
                "aromatic system has no Kekule structure");
  return r;
}

ParseResult parse_smiles(std::string_view smiles) {
  if (smiles.empty()) {
    ParseResult r;
    r.error = make_error(SmilesErrorKind::kEmpty, 0, "empty SMILES");
    return r;
  }
  auto toks = tokenize(smiles);
  if (!toks.ok()) {
    ParseResult r;
    r.error = std::move(toks.error);
    return r;
  }
  return parse(toks.tokens);
}

MolGraph parse_smiles_or_throw(std::string_view smiles) {
  auto r = parse_smiles(smiles);
  if (!r.ok())
    throw SmilesException(std::move(*r.error));
  return std::move(r.graph);
}

bool is_valid_smiles(std::string_view smiles) {
  return parse_smiles(smiles).ok();
}

std::string write_smiles(const MolGraph &g, std::span<const int> ranks) {
  if (ranks.size() != static_cast<std::size_t>(g.atom_count()))
    throw std::invalid_argument("write_smiles: rank count does not match atom count");
  return Writer(g, ranks).run();
}

std::string write_smiles(const MolGraph &g) {
  std::vector<int> ranks(g.atom_count());
  for (int i = 0; i < g.atom_count(); ++i)
    ranks[i] = i;
  return write_smiles(g, ranks);
}

} // namespace exprmol
