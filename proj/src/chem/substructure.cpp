//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/substructure.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "exprmol/elements.h"
#include "exprmol/rings.h"

namespace exprmol {

MatchContext::MatchContext(const MolGraph &g)
    : g_(g), valence_(g.atom_count()), ring_count_(g.atom_count(), 0),
      smallest_ring_(g.atom_count(), 0), ring_bond_(ring_bond_flags(g)) {
  for (int i = 0; i < g.atom_count(); ++i) {
    const Atom &a = g.atom(i);
    const int used = g.bond_order_sum(i) + a.hydrogens;
    valence_[i] = used;
    if (!a.aromatic)
      continue;
    // An aromatic atom also carries its share of the delocalized bond.
    int buf[4];
    const auto allowed = allowed_valences(a.atomic_number, a.charge, buf);
    valence_[i] = used + 1;
    for (int v: allowed) {
      if (v >= used) {
        valence_[i] = v;
        break;
      }
    }
  }
  for (const auto &ring: sssr(g)) {
    const int size = static_cast<int>(ring.atoms.size());
    for (int a: ring.atoms) {
      ++ring_count_[a];
      if (smallest_ring_[a] == 0 || size < smallest_ring_[a])
        smallest_ring_[a] = size;
    }
  }
}

namespace {
  enum class Prim {
    kTrue,
    kAtomicNum,
    kElement, // value = Z, value2 = aromatic
    kAromatic,
    kAliphatic,
    kHydrogens,
    kConnectivity,
    kDegree,
    kValence,
    kRingCount, // value < 0: in any ring
    kRingSize,  // value < 0: in any ring
    kCharge,
    kIsotope,
    kRecursive,
    kBondSingle,
    kBondDouble,
    kBondTriple,
    kBondAromatic,
    kBondRing,
  };

  struct Expr {
    enum class Op { kPrim, kNot, kAnd, kOr };
    Op op = Op::kPrim;
    Prim prim = Prim::kTrue;
    int value = 0;
    int value2 = 0;
    std::vector<Expr> kids;

    static Expr leaf(Prim p, int v = 0, int v2 = 0) {
      Expr e;
      e.prim = p;
      e.value = v;
      e.value2 = v2;
      return e;
    }
    static Expr join(Op op, std::vector<Expr> kids) {
      if (kids.size() == 1)
        return std::move(kids[0]);
      Expr e;
      e.op = op;
      e.kids = std::move(kids);
      return e;
    }
  };

  struct PAtom {
    Expr expr;
    int parent_bond = -1;
  };

  struct PBond {
    int a;
    int b;
    Expr expr;
  };

  Expr default_bond() {
    return Expr::join(Expr::Op::kOr,
                      { Expr::leaf(Prim::kBondSingle), Expr::leaf(Prim::kBondAromatic) });
  }
} // namespace

struct Pattern::Impl {
  std::string source;
  std::vector<PAtom> atoms;
  std::vector<PBond> bonds;
  std::vector<std::vector<int>> adj; // pattern bond ids per atom
  std::vector<Pattern> recursive;

  bool eval_atom(const Expr &e, const MatchContext &ctx, int t) const;
  bool eval_bond(const Expr &e, const MatchContext &ctx, int bond) const;
  // Calls `visit` for every complete mapping until it returns true.
  bool search(const MatchContext &ctx, int root,
              const std::function<bool(const std::vector<int> &)> &visit) const;
};

namespace {
  class Parser {
  public:
    Parser(std::string_view s, Pattern::Impl &impl): s_(s), impl_(impl) { }

    void run() {
      int prev = -1;
      std::vector<int> branches;
      std::optional<Expr> pending;
      struct Open {
        int atom;
        std::optional<Expr> bond;
      };
      std::map<int, Open> rings;

      while (p_ < s_.size()) {
        const char c = s_[p_];
        if (c == '(') {
          if (prev < 0)
            fail("branch without an atom");
          branches.push_back(prev);
          ++p_;
        } else if (c == ')') {
          if (branches.empty())
            fail("unmatched ')'");
          prev = branches.back();
          branches.pop_back();
          ++p_;
        } else if (c == '.') {
          prev = -1;
          ++p_;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
          if (prev < 0)
            fail("ring closure without an atom");
          int num = 0;
          if (c == '%') {
            if (p_ + 2 >= s_.size())
              fail("bad ring closure");
            num = (s_[p_ + 1] - '0') * 10 + (s_[p_ + 2] - '0');
            p_ += 3;
          } else {
            num = c - '0';
            ++p_;
          }
          auto it = rings.find(num);
          if (it == rings.end()) {
            rings[num] = { prev, std::move(pending) };
          } else {
            Expr e = pending ? std::move(*pending)
                             : (it->second.bond ? std::move(*it->second.bond) : default_bond());
            add_bond(it->second.atom, prev, std::move(e), false);
            rings.erase(it);
          }
          pending.reset();
        } else if (is_bond_start(c)) {
          pending = parse_bond_expr();
        } else {
          Expr e = parse_atom();
          const int id = static_cast<int>(impl_.atoms.size());
          impl_.atoms.push_back({ std::move(e), -1 });
          impl_.adj.emplace_back();
          if (prev >= 0) {
            add_bond(prev, id, pending ? std::move(*pending) : default_bond(), true);
          }
          pending.reset();
          prev = id;
        }
      }
      if (!branches.empty() || !rings.empty() || impl_.atoms.empty())
        fail("incomplete pattern");
    }

  private:
    [[noreturn]] void fail(const std::string &what) const {
      throw PatternError("pattern \"" + std::string(s_) + "\": " + what + " at offset "
                         + std::to_string(p_));
    }

    static bool is_bond_start(char c) {
      return c == '-' || c == '=' || c == '#' || c == ':' || c == '~' || c == '@'
             || c == '!' || c == '/' || c == '\\';
    }

    void add_bond(int a, int b, Expr e, bool tree) {
      const int id = static_cast<int>(impl_.bonds.size());
      impl_.bonds.push_back({ a, b, std::move(e) });
      impl_.adj[a].push_back(id);
      impl_.adj[b].push_back(id);
      if (tree)
        impl_.atoms[b].parent_bond = id;
    }

    // Bond expression: ';' < ',' < '&' < implicit and < '!'.
    Expr parse_bond_expr() { return parse_level(0, true); }

    Expr parse_level(int level, bool bond) {
      static constexpr char kOps[] = { ';', ',', '&' };
      if (level == 3) {
        std::vector<Expr> parts;
        while (p_ < s_.size()) {
          if (bond ? !is_bond_start(s_[p_]) : !starts_primitive())
            break;
          parts.push_back(parse_unary(bond));
        }
        if (parts.empty())
          fail("empty expression");
        return Expr::join(Expr::Op::kAnd, std::move(parts));
      }
      std::vector<Expr> parts { parse_level(level + 1, bond) };
      while (p_ < s_.size() && s_[p_] == kOps[level]) {
        ++p_;
        parts.push_back(parse_level(level + 1, bond));
      }
      return Expr::join(level == 1 ? Expr::Op::kOr : Expr::Op::kAnd, std::move(parts));
    }

    bool starts_primitive() const {
      const char c = s_[p_];
      return c != ']' && c != ';' && c != ',' && c != '&' && c != ')';
    }

    Expr parse_unary(bool bond) {
      if (s_[p_] == '!') {
        ++p_;
        Expr e;
        e.op = Expr::Op::kNot;
        e.kids.push_back(parse_unary(bond));
        return e;
      }
      return bond ? parse_bond_primitive() : parse_atom_primitive();
    }

    Expr parse_bond_primitive() {
      switch (s_[p_++]) {
      case '-':
      case '/':
      case '\\':
        return Expr::leaf(Prim::kBondSingle);
      case '=':
        return Expr::leaf(Prim::kBondDouble);
      case '#':
        return Expr::leaf(Prim::kBondTriple);
      case ':':
        return Expr::leaf(Prim::kBondAromatic);
      case '~':
        return Expr::leaf(Prim::kTrue);
      case '@':
        return Expr::leaf(Prim::kBondRing);
      default:
        --p_;
        fail("bad bond primitive");
      }
    }

    int read_number(int fallback) {
      if (p_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[p_])))
        return fallback;
      int v = 0;
      while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_])))
        v = v * 10 + (s_[p_++] - '0');
      return v;
    }

    std::optional<Expr> aromatic_symbol() {
      static constexpr std::string_view kSyms[] = { "se", "as", "te", "b", "c",
                                                    "n",  "o",  "p",  "s" };
      for (auto sym: kSyms) {
        if (s_.substr(p_, sym.size()) == sym) {
          p_ += sym.size();
          std::string up(sym);
          up[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(up[0])));
          return Expr::leaf(Prim::kElement, find_element(up)->atomic_number, 1);
        }
      }
      return std::nullopt;
    }

    Expr parse_atom_primitive() {
      const char c = s_[p_];
      if (std::isdigit(static_cast<unsigned char>(c)))
        return Expr::leaf(Prim::kIsotope, read_number(0));
      if (c == '$') {
        if (p_ + 1 >= s_.size() || s_[p_ + 1] != '(')
          fail("'$' must be followed by '('");
        std::size_t depth = 0;
        std::size_t q = p_ + 1;
        for (; q < s_.size(); ++q) {
          if (s_[q] == '(')
            ++depth;
          else if (s_[q] == ')' && --depth == 0)
            break;
        }
        if (q >= s_.size())
          fail("unterminated recursive pattern");
        impl_.recursive.push_back(Pattern::parse(s_.substr(p_ + 2, q - p_ - 2)));
        p_ = q + 1;
        return Expr::leaf(Prim::kRecursive, static_cast<int>(impl_.recursive.size()) - 1);
      }
      ++p_;
      switch (c) {
      case '*':
        return Expr::leaf(Prim::kTrue);
      case '#':
        return Expr::leaf(Prim::kAtomicNum, read_number(-1));
      case 'a':
        if (p_ < s_.size() && s_[p_] == 's') {
          --p_;
          return *aromatic_symbol();
        }
        return Expr::leaf(Prim::kAromatic);
      case 'A':
        if (p_ < s_.size() && std::islower(static_cast<unsigned char>(s_[p_]))) {
          --p_;
          break;
        }
        return Expr::leaf(Prim::kAliphatic);
      case 'H':
        if (p_ < s_.size() && std::islower(static_cast<unsigned char>(s_[p_]))) {
          --p_;
          break;
        }
        return Expr::leaf(Prim::kHydrogens, read_number(1));
      case 'X':
        return Expr::leaf(Prim::kConnectivity, read_number(1));
      case 'D':
        return Expr::leaf(Prim::kDegree, read_number(1));
      case 'v':
        return Expr::leaf(Prim::kValence, read_number(1));
      case 'R':
        if (p_ < s_.size() && std::islower(static_cast<unsigned char>(s_[p_]))) {
          --p_;
          break;
        }
        return Expr::leaf(Prim::kRingCount, read_number(-1));
      case 'r':
        return Expr::leaf(Prim::kRingSize, read_number(-1));
      case '+':
      case '-': {
        int v = 1;
        if (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) {
          v = read_number(1);
        } else {
          while (p_ < s_.size() && s_[p_] == c) {
            ++v;
            ++p_;
          }
        }
        return Expr::leaf(Prim::kCharge, c == '+' ? v : -v);
      }
      default:
        --p_;
        break;
      }
      if (std::islower(static_cast<unsigned char>(s_[p_]))) {
        if (auto e = aromatic_symbol())
          return *e;
        fail("unknown aromatic symbol");
      }
      if (std::isupper(static_cast<unsigned char>(s_[p_]))) {
        const Element *e = nullptr;
        if (p_ + 1 < s_.size() && std::islower(static_cast<unsigned char>(s_[p_ + 1])))
          e = find_element(s_.substr(p_, 2));
        if (e != nullptr) {
          p_ += 2;
        } else {
          e = find_element(s_.substr(p_, 1));
          if (e == nullptr)
            fail("unknown element");
          ++p_;
        }
        return Expr::leaf(Prim::kElement, e->atomic_number, 0);
      }
      fail("bad atom primitive");
    }

    Expr parse_atom() {
      const char c = s_[p_];
      if (c == '[') {
        ++p_;
        Expr e = parse_level(0, false);
        if (p_ >= s_.size() || s_[p_] != ']')
          fail("expected ']'");
        ++p_;
        return e;
      }
      if (c == '*') {
        ++p_;
        return Expr::leaf(Prim::kTrue);
      }
      if (c == 'a') {
        ++p_;
        return Expr::leaf(Prim::kAromatic);
      }
      if (c == 'A') {
        ++p_;
        return Expr::leaf(Prim::kAliphatic);
      }
      if (s_.substr(p_, 2) == "Cl" || s_.substr(p_, 2) == "Br") {
        const int z = s_[p_] == 'C' ? 17 : 35;
        p_ += 2;
        return Expr::leaf(Prim::kElement, z, 0);
      }
      if (std::islower(static_cast<unsigned char>(c))) {
        static constexpr std::string_view kOne = "bcnops";
        if (kOne.find(c) == std::string_view::npos)
          fail("unknown atom");
        return *aromatic_symbol();
      }
      static constexpr std::string_view kOrganic = "BCNOPSFI";
      if (kOrganic.find(c) == std::string_view::npos)
        fail("unknown atom");
      ++p_;
      return Expr::leaf(Prim::kElement, find_element(std::string_view(&c, 1))->atomic_number, 0);
    }

    std::string_view s_;
    Pattern::Impl &impl_;
    std::size_t p_ = 0;
  };
} // namespace

bool Pattern::Impl::eval_atom(const Expr &e, const MatchContext &ctx, int t) const {
  switch (e.op) {
  case Expr::Op::kNot:
    return !eval_atom(e.kids[0], ctx, t);
  case Expr::Op::kAnd:
    return std::all_of(e.kids.begin(), e.kids.end(),
                       [&](const Expr &k) { return eval_atom(k, ctx, t); });
  case Expr::Op::kOr:
    return std::any_of(e.kids.begin(), e.kids.end(),
                       [&](const Expr &k) { return eval_atom(k, ctx, t); });
  case Expr::Op::kPrim:
    break;
  }
  const MolGraph &g = ctx.graph();
  const Atom &a = g.atom(t);
  switch (e.prim) {
  case Prim::kTrue:
    return true;
  case Prim::kAtomicNum:
    return a.atomic_number == e.value;
  case Prim::kElement:
    return a.atomic_number == e.value && a.aromatic == (e.value2 != 0);
  case Prim::kAromatic:
    return a.aromatic;
  case Prim::kAliphatic:
    return !a.aromatic;
  case Prim::kHydrogens:
    return ctx.hydrogens(t) == e.value;
  case Prim::kConnectivity:
    return ctx.connectivity(t) == e.value;
  case Prim::kDegree:
    return g.degree(t) == e.value;
  case Prim::kValence:
    return ctx.valence(t) == e.value;
  case Prim::kRingCount:
    return e.value < 0 ? ctx.ring_count(t) > 0 : ctx.ring_count(t) == e.value;
  case Prim::kRingSize:
    return e.value < 0 ? ctx.smallest_ring(t) > 0 : ctx.smallest_ring(t) == e.value;
  case Prim::kCharge:
    return a.charge == e.value;
  case Prim::kIsotope:
    return a.isotope == e.value;
  case Prim::kRecursive:
    return recursive[e.value].matches_at(ctx, t);
  default:
    return false;
  }
}

bool Pattern::Impl::eval_bond(const Expr &e, const MatchContext &ctx, int bond) const {
  switch (e.op) {
  case Expr::Op::kNot:
    return !eval_bond(e.kids[0], ctx, bond);
  case Expr::Op::kAnd:
    return std::all_of(e.kids.begin(), e.kids.end(),
                       [&](const Expr &k) { return eval_bond(k, ctx, bond); });
  case Expr::Op::kOr:
    return std::any_of(e.kids.begin(), e.kids.end(),
                       [&](const Expr &k) { return eval_bond(k, ctx, bond); });
  case Expr::Op::kPrim:
    break;
  }
  const BondOrder order = ctx.graph().bond(bond).order;
  switch (e.prim) {
  case Prim::kTrue:
    return true;
  case Prim::kBondSingle:
    return order == BondOrder::kSingle;
  case Prim::kBondDouble:
    return order == BondOrder::kDouble;
  case Prim::kBondTriple:
    return order == BondOrder::kTriple;
  case Prim::kBondAromatic:
    return order == BondOrder::kAromatic;
  case Prim::kBondRing:
    return ctx.ring_bond(bond);
  default:
    return false;
  }
}

bool Pattern::Impl::search(const MatchContext &ctx, int root,
                           const std::function<bool(const std::vector<int> &)> &visit) const {
  const MolGraph &g = ctx.graph();
  const int n = static_cast<int>(atoms.size());
  std::vector<int> map(n, -1);
  std::vector<bool> used(g.atom_count(), false);

  auto consistent = [&](int k, int t) {
    if (used[t] || !eval_atom(atoms[k].expr, ctx, t))
      return false;
    for (int b: adj[k]) {
      const PBond &pb = bonds[b];
      const int other = pb.a == k ? pb.b : pb.a;
      if (other > k || b == atoms[k].parent_bond)
        continue;
      const auto tb = g.bond_between(t, map[other]);
      if (!tb || !eval_bond(pb.expr, ctx, *tb))
        return false;
    }
    return true;
  };

  std::function<bool(int)> step = [&](int k) -> bool {
    if (k == n)
      return visit(map);
    auto attempt = [&](int t) {
      if (!consistent(k, t))
        return false;
      map[k] = t;
      used[t] = true;
      const bool stop = step(k + 1);
      used[t] = false;
      map[k] = -1;
      return stop;
    };
    const int pb = atoms[k].parent_bond;
    if (pb >= 0) {
      const int parent = bonds[pb].a == k ? bonds[pb].b : bonds[pb].a;
      for (const auto &nb: g.neighbors(map[parent])) {
        if (eval_bond(bonds[pb].expr, ctx, nb.bond) && attempt(nb.atom))
          return true;
      }
      return false;
    }
    if (k == 0 && root >= 0)
      return attempt(root);
    for (int t = 0; t < g.atom_count(); ++t) {
      if (attempt(t))
        return true;
    }
    return false;
  };
  return step(0);
}

Pattern::Pattern(): impl_(std::make_unique<Impl>()) { }
Pattern::~Pattern() = default;
Pattern::Pattern(Pattern &&) noexcept = default;
Pattern &Pattern::operator=(Pattern &&) noexcept = default;

Pattern Pattern::parse(std::string_view smarts) {
  Pattern p;
  p.impl_->source = std::string(smarts);
  Parser(smarts, *p.impl_).run();
  return p;
}

const std::string &Pattern::source() const {
  return impl_->source;
}

int Pattern::atom_count() const {
  return static_cast<int>(impl_->atoms.size());
}

bool Pattern::matches(const MatchContext &ctx) const {
  return impl_->search(ctx, -1, [](const std::vector<int> &) { return true; });
}

bool Pattern::matches_at(const MatchContext &ctx, int atom) const {
  return impl_->search(ctx, atom, [](const std::vector<int> &) { return true; });
}

int Pattern::count_unique_matches(const MatchContext &ctx) const {
  std::set<std::vector<int>> seen;
  impl_->search(ctx, -1, [&](const std::vector<int> &map) {
    std::vector<int> key = map;
    std::sort(key.begin(), key.end());
    seen.insert(std::move(key));
    return seen.size() >= 10000;
  });
  return static_cast<int>(seen.size());
}

} // namespace exprmol
