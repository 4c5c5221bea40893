//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/descriptors.h"

#include <algorithm>

#include "exprmol/elements.h"
#include "exprmol/rings.h"
#include "exprmol/substructure.h"

namespace exprmol {
namespace {
  struct CrippenRule {
    const char *type;
    const char *smarts;
    double logp;
  };

  // Wildman & Crippen (1999) atom types in matching order; an atom takes
  // the first type whose pattern matches with the atom in first position.
  // clang-format off
  constexpr CrippenRule kCrippenRules[] = {
    { "C1", "[CH4]", 0.1441 },
    { "C1", "[CH3]C", 0.1441 },
    { "C1", "[CH2](C)C", 0.1441 },
    { "C2", "[CH](C)(C)C", 0 },
    { "C2", "[C](C)(C)(C)C", 0 },
    { "C3", "[CH3][N,O,P,S,F,Cl,Br,I]", -0.2035 },
    { "C3", "[CH2X4]([N,O,P,S,F,Cl,Br,I])[A;!#1]", -0.2035 },
    { "C4", "[CH1X4]([N,O,P,S,F,Cl,Br,I])([A;!#1])[A;!#1]", -0.2051 },
    { "C4", "[CH0X4]([N,O,P,S,F,Cl,Br,I])([A;!#1])([A;!#1])[A;!#1]", -0.2051 },
    { "C5", "[C]=[!C;A;!#1]", -0.2783 },
    { "C6", "[CH2]=C", 0.1551 },
    { "C6", "[CH1](=C)[A;!#1]", 0.1551 },
    { "C6", "[CH0](=C)([A;!#1])[A;!#1]", 0.1551 },
    { "C6", "[C](=C)=C", 0.1551 },
    { "C7", "[CX2]#[A;!#1]", 0.0017 },
    { "C8", "[CH3]c", 0.08452 },
    { "C9", "[CH3]a", -0.1444 },
    { "C10", "[CH2X4]a", -0.0516 },
    { "C11", "[CHX4]a", 0.1193 },
    { "C12", "[CH0X4]a", -0.0967 },
    { "C13", "[cH0]-[A;!C;!N;!O;!S;!F;!Cl;!Br;!I;!#1]", -0.5443 },
    { "C14", "[c][#9]", 0 },
    { "C15", "[c][#17]", 0.245 },
    { "C16", "[c][#35]", 0.198 },
    { "C17", "[c][#53]", 0 },
    { "C18", "[cH]", 0.1581 },
    { "C19", "[c](:a)(:a):a", 0.2955 },
    { "C20", "[c](:a)(:a)-a", 0.2713 },
    { "C21", "[c](:a)(:a)-C", 0.136 },
    { "C22", "[c](:a)(:a)-N", 0.4619 },
    { "C23", "[c](:a)(:a)-O", 0.5437 },
    { "C24", "[c](:a)(:a)-S", 0.1893 },
    { "C25", "[c](:a)(:a)=[C,N,O]", -0.8186 },
    { "C26", "[C](=C)(a)[A;!#1]", 0.264 },
    { "C26", "[C](=C)(c)a", 0.264 },
    { "C26", "[CH1](=C)a", 0.264 },
    { "C26", "[C]=c", 0.264 },
    { "C27", "[CX4][A;!C;!N;!O;!P;!S;!F;!Cl;!Br;!I;!#1]", 0.2148 },
    { "CS", "[#6]", 0.08129 },
    { "H1", "[#1][#6,#1]", 0.123 },
    { "H2", "[#1]O[CX4,c]", -0.2677 },
    { "H2", "[#1]O[!#6;!#7;!#8;!#16]", -0.2677 },
    { "H2", "[#1][!#6;!#7;!#8]", -0.2677 },
    { "H3", "[#1][#7]", 0.2142 },
    { "H3", "[#1]O[#7]", 0.2142 },
    { "H4", "[#1]OC=[#6,#7,O,S]", 0.298 },
    { "H4", "[#1]O[O,S]", 0.298 },
    { "HS", "[#1]", 0.1125 },
    { "N1", "[NH2+0][A;!#1]", -1.019 },
    { "N2", "[NH+0]([A;!#1])[A;!#1]", -0.7096 },
    { "N3", "[NH2+0]a", -1.027 },
    { "N4", "[NH1+0]([!#1;A,a])a", -0.5188 },
    { "N5", "[NH+0]=[!#1;A,a]", 0.08387 },
    { "N6", "[N+0](=[!#1;A,a])[!#1;A,a]", 0.1836 },
    { "N7", "[N+0]([A;!#1])([A;!#1])[A;!#1]", -0.3187 },
    { "N8", "[N+0](a)([!#1;A,a])[A;!#1]", -0.4458 },
    { "N8", "[N+0](a)(a)a", -0.4458 },
    { "N9", "[N+0]#[A;!#1]", 0.01508 },
    { "N10", "[NH3,NH2,NH;+,+2,+3]", -1.95 },
    { "N11", "[n+0]", -0.3239 },
    { "N12", "[n;+,+2,+3]", -1.119 },
    { "N13", "[NH0;+,+2,+3]([A;!#1])([A;!#1])([A;!#1])[A;!#1]", -0.3396 },
    { "N13", "[NH0;+,+2,+3](=[A;!#1])([A;!#1])[!#1;A,a]", -0.3396 },
    { "N13", "[NH0;+,+2,+3](=[#6])=[#7]", -0.3396 },
    { "N14", "[N;+,+2,+3]#[A;!#1]", 0.2887 },
    { "N14", "[N;-,-2,-3]", 0.2887 },
    { "N14", "[N;+,+2,+3](=[N;-,-2,-3])=N", 0.2887 },
    { "NS", "[#7]", -0.4806 },
    { "O1", "[o]", 0.1552 },
    { "O2", "[OH,OH2]", -0.2893 },
    { "O3", "[O]([A;!#1])[A;!#1]", -0.0684 },
    { "O4", "[O](a)[!#1;A,a]", -0.4195 },
    { "O5", "[O]=[#7,#8]", 0.0335 },
    { "O5", "[OX1;-,-2,-3][#7]", 0.0335 },
    { "O6", "[OX1;-,-2,-2][#16]", -0.3339 },
    { "O6", "[O;-0]=[#16;-0]", -0.3339 },
    { "O12", "[O-]C(=O)", -1.326 },
    { "O7", "[OX1;-,-2,-3][!#1;!N;!S]", -1.189 },
    { "O8", "[O]=c", 0.1788 },
    { "O9", "[O]=[CH]C", -0.1526 },
    { "O9", "[O]=C(C)([A;!#1])", -0.1526 },
    { "O9", "[O]=[CH][N,O]", -0.1526 },
    { "O9", "[O]=[CH2]", -0.1526 },
    { "O9", "[O]=[CX2]=O", -0.1526 },
    { "O10", "[O]=[CH]c", 0.1129 },
    { "O10", "[O]=C([C,c])[a;!#1]", 0.1129 },
    { "O10", "[O]=C(c)[A;!#1]", 0.1129 },
    { "O11", "[O]=C([!#1;!#6])[!#1;!#6]", 0.4833 },
    { "OS", "[#8]", -0.1188 },
    { "F", "[#9-0]", 0.4202 },
    { "Cl", "[#17-0]", 0.6895 },
    { "Br", "[#35-0]", 0.8456 },
    { "I", "[#53-0]", 0.8857 },
    { "Hal", "[#9,#17,#35,#53;-]", -2.996 },
    { "Hal", "[#53;+,+2,+3]", -2.996 },
    { "Hal", "[+;#3,#11,#19,#37,#55]", -2.996 },
    { "P", "[#15]", 0.8612 },
    { "S2", "[S;-,-2,-3,-4,+1,+2,+3,+5,+6]", -0.0024 },
    { "S2", "[S-0]=[N,O,P,S]", -0.0024 },
    { "S1", "[S;A]", 0.6482 },
    { "S3", "[s;a]", 0.6237 },
    { "Me1", "[#3,#11,#19,#37,#55]", -0.3808 },
    { "Me1", "[#4,#12,#20,#38,#56]", -0.3808 },
    { "Me1", "[#5,#13,#31,#49,#81]", -0.3808 },
    { "Me1", "[#14,#32,#50,#82]", -0.3808 },
    { "Me1", "[#33,#51,#83]", -0.3808 },
    { "Me1", "[#34,#52,#84]", -0.3808 },
    { "Me2", "[#21,#22,#23,#24,#25,#26,#27,#28,#29,#30]", -0.0025 },
    { "Me2", "[#39,#40,#41,#42,#43,#44,#45,#46,#47,#48]", -0.0025 },
    { "Me2", "[#72,#73,#74,#75,#76,#77,#78,#79,#80]", -0.0025 },
  };

  // Structural alerts used by QED (Bickerton et al. 2012).
  const std::vector<std::string_view> kAlertSmarts = {
    "*1[O,S,N]*1",
    "[S,C](=[O,S])[F,Br,Cl,I]",
    "[CX4][Cl,Br,I]",
    "[#6]S(=O)(=O)O[#6]",
    "[$([CH]),$(CC)]#CC(=O)[#6]",
    "[$([CH]),$(CC)]#CC(=O)O[#6]",
    "n[OH]",
    "[$([CH]),$(CC)]#CS(=O)(=O)[#6]",
    "C=C(C=O)C=O",
    "n1c([F,Cl,Br,I])cccc1",
    "[CH1](=O)",
    "[#8][#8]",
    "[C;!R]=[N;!R]",
    "[N!R]=[N!R]",
    "[#6](=O)[#6](=O)",
    "[#16][#16]",
    "[#7][NH2]",
    "C(=O)N[NH2]",
    "[#6]=S",
    "[$([CH2]),$([CH][CX4]),$(C([CX4])[CX4])]=[$([CH2]),$([CH][CX4]),$(C([CX4])[CX4])]",
    "C1(=[O,N])C=CC(=[O,N])C=C1",
    "C1(=[O,N])C(=[O,N])C=CC=C1",
    "a21aa3a(aa1aaaa2)aaaa3",
    "a31a(a2a(aa1)aaaa2)aaaa3",
    "a1aa2a3a(a1)A=AA=A3=AA=A2",
    "c1cc([NH2])ccc1",
    "[Hg,Fe,As,Sb,Zn,Se,se,Te,B,Si,Na,Ca,Ge,Ag,Mg,K,Ba,Sr,Be,Ti,Mo,Mn,Ru,Pd,Ni,Cu,Au,Cd,Al,Ga,Sn,Rh,Tl,Bi,Nb,Li,Pb,Hf,Ho]",
    "I",
    "OS(=O)(=O)[O-]",
    "[N+](=O)[O-]",
    "C(=O)N[OH]",
    "C1NC(=O)NC(=O)1",
    "[SH]",
    "[S-]",
    "c1ccc([Cl,Br,I,F])c([Cl,Br,I,F])c1[Cl,Br,I,F]",
    "c1cc([Cl,Br,I,F])cc([Cl,Br,I,F])c1[Cl,Br,I,F]",
    "[CR1]1[CR1][CR1][CR1][CR1][CR1][CR1]1",
    "[CR1]1[CR1][CR1]cc[CR1][CR1]1",
    "[CR2]1[CR2][CR2][CR2][CR2][CR2][CR2][CR2]1",
    "[CR2]1[CR2][CR2]cc[CR2][CR2][CR2]1",
    "[CH2R2]1N[CH2R2][CH2R2][CH2R2][CH2R2][CH2R2]1",
    "[CH2R2]1N[CH2R2][CH2R2][CH2R2][CH2R2][CH2R2][CH2R2]1",
    "C#C",
    "[OR2,NR2]@[CR2]@[CR2]@[OR2,NR2]@[CR2]@[CR2]@[OR2,NR2]",
    "[$([N+R]),$([n+R]),$([N+]=C)][O-]",
    "[#6]=N[OH]",
    "[#6]=NOC=O",
    "[#6](=O)[CX4,CR0X3,O][#6](=O)",
    "c1ccc2c(c1)ccc(=O)o2",
    "[O+,o+,S+,s+]",
    "N=C=O",
    "[NX3,NX4][F,Cl,Br,I]",
    "c1ccccc1OC(=O)[#6]",
    "[CR0]=[CR0][CR0]=[CR0]",
    "[C+,c+,C-,c-]",
    "N=[N+]=[N-]",
    "C12C(NC(N1)=O)CSC2",
    "c1c([OH])c([OH,NH2,NH])ccc1",
    "P",
    "[N,O,S]C#N",
    "C=C=O",
    "[Si][F,Cl,Br,I]",
    "[SX2]O",
    "[SiR0,CR0](c1ccccc1)(c2ccccc2)(c3ccccc3)",
    "O1CCCCC1OC2CCC3CCCCC3C2",
    "N=[CR0][N,n,O,S]",
    "[cR2]1[cR2][cR2]([Nv3X3,Nv4X4])[cR2][cR2][cR2]1[cR2]2[cR2][cR2][cR2]([Nv3X3,Nv4X4])[cR2][cR2]2",
    "C=[C!r]C#N",
    "[cR2]1[cR2]c([N+0X3R0,nX3R0])c([N+0X3R0,nX3R0])[cR2][cR2]1",
    "[cR2]1[cR2]c([N+0X3R0,nX3R0])[cR2]c([N+0X3R0,nX3R0])[cR2]1",
    "[cR2]1[cR2]c([N+0X3R0,nX3R0])[cR2][cR2]c1([N+0X3R0,nX3R0])",
    "[OH]c1ccc([OH,NH2,NH])cc1",
    "c1ccccc1OC(=O)O",
    "[SX2H0][N]",
    "c12ccccc1(SC(S)=N2)",
    "c12ccccc1(SC(=S)N2)",
    "c1nnnn1C=O",
    "s1c(S)nnc1NC=O",
    "S1C=CSC1=S",
    "C(=O)Onnn",
    "OS(=O)(=O)C(F)(F)F",
    "N#CC[OH]",
    "N#CC(=O)",
    "S(=O)(=O)C#N",
    "N[CH2]C#N",
    "C1(=O)NCC1",
    "S(=O)(=O)[O-,OH]",
    "NC[F,Cl,Br,I]",
    "C=[C!r]O",
    "[NX2+0]=[O+0]",
    "[OR0,NR0][OR0,NR0]",
    "C(=O)O[C,H1].C(=O)O[C,H1].C(=O)O[C,H1]",
    "[CX2R0][NX3R0]",
    "c1ccccc1[C;!R]=[C;!R]c2ccccc2",
    "[NX3R0,NX4R0,OR0,SX2R0][CX4][NX3R0,NX4R0,OR0,SX2R0]",
    "[s,S,c,C,n,N,o,O]~[n+,N+](~[s,S,c,C,n,N,o,O])(~[s,S,c,C,n,N,o,O])~[s,S,c,C,n,N,o,O]",
    "[s,S,c,C,n,N,o,O]~[nX3+,NX3+](~[s,S,c,C,n,N])~[s,S,c,C,n,N]",
    "[*]=[N+]=[*]",
    "[SX3](=O)[O-,OH]",
    "N#N",
    "F.F.F.F",
    "[R0;D2][R0;D2][R0;D2][R0;D2]",
    "[cR,CR]~C(=O)NC(=O)~[cR,CR]",
    "C=!@CC=[O,S]",
    "[#6,#8,#16][#6](=O)O[#6]",
    "c[C;R0](=[O,S])[#6]",
    "c[SX2][C;!R]",
    "C=C=C",
    "c1nc([F,Cl,Br,I,S])ncc1",
    "c1ncnc([F,Cl,Br,I,S])c1",
    "c1nc(c2c(n1)nc(n2)[F,Cl,Br,I])",
    "[#6]S(=O)(=O)c1ccc(cc1)F",
    "[15N]",
    "[13C]",
    "[18O]",
    "[34S]",
  };
  // clang-format on

  struct CompiledCrippen {
    std::vector<Pattern> patterns;
    CompiledCrippen() {
      for (const auto &r: kCrippenRules)
        patterns.push_back(Pattern::parse(r.smarts));
    }
  };

  const CompiledCrippen &crippen_patterns() {
    static const CompiledCrippen compiled;
    return compiled;
  }

  const std::vector<Pattern> &alert_patterns() {
    static const std::vector<Pattern> compiled = [] {
      std::vector<Pattern> v;
      for (auto s: kAlertSmarts)
        v.push_back(Pattern::parse(s));
      return v;
    }();
    return compiled;
  }

  bool in_three_ring(const MolGraph &g, int atom, const std::vector<Ring> &rings) {
    for (const auto &r: rings) {
      if (r.atoms.size() == 3 && std::find(r.atoms.begin(), r.atoms.end(), atom) != r.atoms.end())
        return true;
    }
    (void)g;
    return false;
  }

  double tpsa_nitrogen(int nbrs, int h, int chg, int sing, int doub, int trip, int arom,
                       bool ring3) {
    switch (nbrs) {
    case 1:
      if (h == 0 && chg == 0 && trip == 1)
        return 23.79;
      if (h == 1 && chg == 0 && doub == 1)
        return 23.85;
      if (h == 2 && chg == 0 && sing == 1)
        return 26.02;
      if (h == 2 && chg == 1 && doub == 1)
        return 25.59;
      if (h == 3 && chg == 1 && sing == 1)
        return 27.64;
      break;
    case 2:
      if (h == 0 && chg == 0 && sing == 1 && doub == 1)
        return 12.36;
      if (h == 0 && chg == 0 && trip == 1 && doub == 1)
        return 13.60;
      if (h == 1 && chg == 0 && sing == 2)
        return ring3 ? 21.94 : 12.03;
      if (h == 0 && chg == 1 && trip == 1 && sing == 1)
        return 4.36;
      if (h == 1 && chg == 1 && doub == 1 && sing == 1)
        return 13.97;
      if (h == 2 && chg == 1 && sing == 2)
        return 16.61;
      if (h == 0 && chg == 0 && arom == 2)
        return 12.89;
      if (h == 1 && chg == 0 && arom == 2)
        return 15.79;
      if (h == 1 && chg == 1 && arom == 2)
        return 14.14;
      break;
    case 3:
      if (h == 0 && chg == 0 && sing == 3)
        return ring3 ? 3.01 : 3.24;
      if (h == 0 && chg == 0 && sing == 1 && doub == 2)
        return 11.68;
      if (h == 0 && chg == 1 && sing == 2 && doub == 1)
        return 3.01;
      if (h == 1 && chg == 1 && sing == 3)
        return 4.44;
      if (h == 0 && chg == 0 && arom == 3)
        return 4.41;
      if (h == 0 && chg == 0 && sing == 1 && arom == 2)
        return 4.93;
      if (h == 0 && chg == 0 && doub == 1 && arom == 2)
        return 8.39;
      if (h == 0 && chg == 1 && arom == 3)
        return 4.10;
      if (h == 0 && chg == 1 && sing == 1 && arom == 2)
        return 3.88;
      break;
    case 4:
      if (h == 0 && chg == 1 && sing == 4)
        return 0.0;
      break;
    default:
      break;
    }
    return std::max(0.0, 30.5 - nbrs * 8.2 + h * 1.5);
  }

  double tpsa_oxygen(int nbrs, int h, int chg, int sing, int doub, int arom, bool ring3) {
    switch (nbrs) {
    case 1:
      if (h == 0 && chg == 0 && doub == 1)
        return 17.07;
      if (h == 1 && chg == 0 && sing == 1)
        return 20.23;
      if (h == 0 && chg == -1 && sing == 1)
        return 23.06;
      break;
    case 2:
      if (h == 0 && chg == 0 && sing == 2)
        return ring3 ? 12.53 : 9.23;
      if (h == 0 && chg == 0 && arom == 2)
        return 13.14;
      break;
    default:
      break;
    }
    return std::max(0.0, 28.5 - nbrs * 8.6 + h * 1.5);
  }
} // namespace

MolGraph with_explicit_hydrogens(const MolGraph &g) {
  MolGraph out;
  for (const auto &a: g.atoms()) {
    Atom copy = a;
    copy.hydrogens = 0;
    out.add_atom(copy);
  }
  for (const auto &b: g.bonds())
    out.add_bond(b.begin, b.end, b.order, b.direction);
  for (int i = 0; i < g.atom_count(); ++i) {
    for (int k = 0; k < g.atom(i).hydrogens; ++k) {
      Atom h;
      h.atomic_number = 1;
      const int id = out.add_atom(h);
      out.add_bond(i, id, BondOrder::kSingle);
    }
  }
  return out;
}

double molecular_weight(const MolGraph &g) {
  const double h_mass = element(1).mass;
  double mw = 0.0;
  for (const auto &a: g.atoms())
    mw += element(a.atomic_number).mass + a.hydrogens * h_mass;
  return mw;
}

std::vector<CrippenAtom> crippen_contributions(const MolGraph &g) {
  const MolGraph full = with_explicit_hydrogens(g);
  const MatchContext ctx(full);
  const auto &rules = crippen_patterns().patterns;

  std::vector<CrippenAtom> typed(full.atom_count());
  for (int i = 0; i < full.atom_count(); ++i) {
    typed[i] = { "", 0.0 };
    for (std::size_t r = 0; r < rules.size(); ++r) {
      if (rules[r].matches_at(ctx, i)) {
        typed[i] = { kCrippenRules[r].type, kCrippenRules[r].logp };
        break;
      }
    }
  }

  // Hydrogens added by with_explicit_hydrogens follow the original atoms and
  // are folded back into their heavy neighbor.
  std::vector<CrippenAtom> out(typed.begin(), typed.begin() + g.atom_count());
  for (int i = g.atom_count(); i < full.atom_count(); ++i) {
    const int owner = full.neighbors(i)[0].atom;
    out[owner].logp += typed[i].logp;
  }
  return out;
}

double crippen_logp(const MolGraph &g) {
  double s = 0.0;
  for (const auto &c: crippen_contributions(g))
    s += c.logp;
  return s;
}

std::vector<double> tpsa_contributions(const MolGraph &g) {
  const auto rings = sssr(g);
  std::vector<double> out(g.atom_count(), 0.0);
  for (int i = 0; i < g.atom_count(); ++i) {
    const Atom &a = g.atom(i);
    if (a.atomic_number != 7 && a.atomic_number != 8)
      continue;
    int h = a.hydrogens;
    int nbrs = 0, sing = 0, doub = 0, trip = 0, arom = 0;
    for (const auto &nb: g.neighbors(i)) {
      if (g.atom(nb.atom).atomic_number == 1) {
        ++h;
        continue;
      }
      ++nbrs;
      switch (g.bond(nb.bond).order) {
      case BondOrder::kSingle:
        ++sing;
        break;
      case BondOrder::kDouble:
        ++doub;
        break;
      case BondOrder::kTriple:
        ++trip;
        break;
      case BondOrder::kAromatic:
        ++arom;
        break;
      }
    }
    const bool ring3 = in_three_ring(g, i, rings);
    out[i] = a.atomic_number == 7
                 ? tpsa_nitrogen(nbrs, h, a.charge, sing, doub, trip, arom, ring3)
                 : tpsa_oxygen(nbrs, h, a.charge, sing, doub, arom, ring3);
  }
  return out;
}

double tpsa(const MolGraph &g) {
  double s = 0.0;
  for (double v: tpsa_contributions(g))
    s += v;
  return s;
}

int hydrogen_bond_donors(const MolGraph &g) {
  int n = 0;
  for (int i = 0; i < g.atom_count(); ++i) {
    const int z = g.atom(i).atomic_number;
    if ((z == 7 || z == 8) && g.total_hydrogens(i) > 0)
      ++n;
  }
  return n;
}

int hydrogen_bond_acceptors(const MolGraph &g) {
  int n = 0;
  for (const auto &a: g.atoms())
    n += a.atomic_number == 7 || a.atomic_number == 8;
  return n;
}

int rotatable_bonds(const MolGraph &g) {
  const auto in_ring = ring_bond_flags(g);
  auto is_carbonyl_carbon = [&](int c) {
    if (g.atom(c).atomic_number != 6)
      return false;
    for (const auto &nb: g.neighbors(c)) {
      if (g.atom(nb.atom).atomic_number == 8 && g.bond(nb.bond).order == BondOrder::kDouble)
        return true;
    }
    return false;
  };
  int n = 0;
  for (int b = 0; b < g.bond_count(); ++b) {
    const Bond &bond = g.bond(b);
    if (bond.order != BondOrder::kSingle || in_ring[b])
      continue;
    const int u = bond.begin;
    const int v = bond.end;
    if (g.atom(u).atomic_number == 1 || g.atom(v).atomic_number == 1)
      continue;
    if (g.heavy_degree(u) < 2 || g.heavy_degree(v) < 2)
      continue;
    const bool amide = (is_carbonyl_carbon(u) && g.atom(v).atomic_number == 7)
                       || (is_carbonyl_carbon(v) && g.atom(u).atomic_number == 7);
    if (!amide)
      ++n;
  }
  return n;
}

int aromatic_ring_count(const MolGraph &g) {
  int n = 0;
  for (const auto &r: sssr(g)) {
    if (std::all_of(r.atoms.begin(), r.atoms.end(),
                    [&](int a) { return g.atom(a).aromatic; }))
      ++n;
  }
  return n;
}

int structural_alert_count(const MolGraph &g) {
  const MatchContext ctx(g);
  int n = 0;
  for (const auto &p: alert_patterns())
    n += p.matches(ctx);
  return n;
}

const std::vector<std::string_view> &structural_alert_patterns() {
  return kAlertSmarts;
}

Descriptors compute_descriptors(const MolGraph &g) {
  Descriptors d;
  d.mw = molecular_weight(g);
  d.alogp = crippen_logp(g);
  d.hba = hydrogen_bond_acceptors(g);
  d.hbd = hydrogen_bond_donors(g);
  d.psa = tpsa(g);
  d.rotb = rotatable_bonds(g);
  d.arom = aromatic_ring_count(g);
  d.alerts = structural_alert_count(g);
  return d;
}

} // namespace exprmol
