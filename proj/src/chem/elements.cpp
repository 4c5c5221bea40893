//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/elements.h"

#include <array>
#include <stdexcept>
#include <string>

namespace exprmol {
namespace {
  // Standard atomic weights as tabulated in RDKit's periodic table.
  // clang-format off
  constexpr std::array<Element, kMaxAtomicNumber> kElements = { {
    { 1, "H", 1.008 }, { 2, "He", 4.003 }, { 3, "Li", 6.941 }, { 4, "Be", 9.012 },
    { 5, "B", 10.812 }, { 6, "C", 12.011 }, { 7, "N", 14.007 }, { 8, "O", 15.999 },
    { 9, "F", 18.998 }, { 10, "Ne", 20.18 }, { 11, "Na", 22.99 }, { 12, "Mg", 24.305 },
    { 13, "Al", 26.982 }, { 14, "Si", 28.086 }, { 15, "P", 30.974 }, { 16, "S", 32.067 },
    { 17, "Cl", 35.453 }, { 18, "Ar", 39.948 }, { 19, "K", 39.098 }, { 20, "Ca", 40.078 },
    { 21, "Sc", 44.956 }, { 22, "Ti", 47.867 }, { 23, "V", 50.944 }, { 24, "Cr", 51.996 },
    { 25, "Mn", 54.938 }, { 26, "Fe", 55.845 }, { 27, "Co", 58.933 }, { 28, "Ni", 58.693 },
    { 29, "Cu", 63.546 }, { 30, "Zn", 65.39 }, { 31, "Ga", 69.723 }, { 32, "Ge", 72.61 },
    { 33, "As", 74.922 }, { 34, "Se", 78.96 }, { 35, "Br", 79.904 }, { 36, "Kr", 83.8 },
    { 37, "Rb", 85.468 }, { 38, "Sr", 87.62 }, { 39, "Y", 88.906 }, { 40, "Zr", 91.224 },
    { 41, "Nb", 92.906 }, { 42, "Mo", 95.94 }, { 43, "Tc", 98.0 }, { 44, "Ru", 101.07 },
    { 45, "Rh", 102.906 }, { 46, "Pd", 106.42 }, { 47, "Ag", 107.868 }, { 48, "Cd", 112.412 },
    { 49, "In", 114.818 }, { 50, "Sn", 118.711 }, { 51, "Sb", 121.76 }, { 52, "Te", 127.6 },
    { 53, "I", 126.904 }, { 54, "Xe", 131.29 }, { 55, "Cs", 132.905 }, { 56, "Ba", 137.328 },
    { 57, "La", 138.906 }, { 58, "Ce", 140.116 }, { 59, "Pr", 140.908 }, { 60, "Nd", 144.24 },
    { 61, "Pm", 145.0 }, { 62, "Sm", 150.36 }, { 63, "Eu", 151.964 }, { 64, "Gd", 157.25 },
    { 65, "Tb", 158.925 }, { 66, "Dy", 162.5 }, { 67, "Ho", 164.93 }, { 68, "Er", 167.26 },
    { 69, "Tm", 168.934 }, { 70, "Yb", 173.04 }, { 71, "Lu", 174.967 }, { 72, "Hf", 178.49 },
    { 73, "Ta", 180.948 }, { 74, "W", 183.84 }, { 75, "Re", 186.207 }, { 76, "Os", 190.23 },
    { 77, "Ir", 192.217 }, { 78, "Pt", 195.078 }, { 79, "Au", 196.967 }, { 80, "Hg", 200.59 },
    { 81, "Tl", 204.383 }, { 82, "Pb", 207.2 }, { 83, "Bi", 208.98 }, { 84, "Po", 209.0 },
    { 85, "At", 210.0 }, { 86, "Rn", 222.0 },
  } };
  // clang-format on

  constexpr int kMonovalent[] = { 1 };
  constexpr int kBoron[] = { 3 };
  constexpr int kCarbon[] = { 4 };
  constexpr int kPnictogen[] = { 3, 5 };
  constexpr int kOxygen[] = { 2 };
  constexpr int kChalcogen[] = { 2, 4, 6 };

  // +1: a positive charge adds a bond. -1: a negative charge adds a bond.
  // 0: any charge removes a bond.
  int charge_direction(int z) {
    switch (z) {
    case 5:
    case 13:
      return -1;
    case 6:
    case 14:
      return 0;
    default:
      return 1;
    }
  }
} // namespace

const Element *find_element(std::string_view symbol) {
  for (const auto &e: kElements) {
    if (e.symbol == symbol)
      return &e;
  }
  return nullptr;
}

const Element &element(int atomic_number) {
  if (atomic_number < 1 || atomic_number > kMaxAtomicNumber)
    throw std::out_of_range("unknown atomic number " + std::to_string(atomic_number));
  return kElements[atomic_number - 1];
}

std::span<const int> default_valences(int atomic_number) {
  switch (atomic_number) {
  case 1:
  case 9:
  case 17:
  case 35:
  case 53:
    return kMonovalent;
  case 5:
    return kBoron;
  case 6:
  case 14:
    return kCarbon;
  case 7:
  case 15:
  case 33:
    return kPnictogen;
  case 8:
    return kOxygen;
  case 16:
  case 34:
    return kChalcogen;
  default:
    return {};
  }
}

std::span<const int> allowed_valences(int atomic_number, int charge, int (&buffer)[4]) {
  auto base = default_valences(atomic_number);
  if (base.empty() || charge == 0)
    return base;

  const int dir = charge_direction(atomic_number);
  const int shift = dir == 0 ? -(charge < 0 ? -charge : charge) : dir * charge;
  std::size_t n = 0;
  for (int v: base) {
    if (v + shift >= 0 && n < 4)
      buffer[n++] = v + shift;
  }
  if (n == 0)
    buffer[n++] = 0;
  return { buffer, n };
}

bool is_organic_subset(int atomic_number) {
  switch (atomic_number) {
  case 5:
  case 6:
  case 7:
  case 8:
  case 9:
  case 15:
  case 16:
  case 17:
  case 35:
  case 53:
    return true;
  default:
    return false;
  }
}

bool can_be_aromatic(int atomic_number) {
  switch (atomic_number) {
  case 5:
  case 6:
  case 7:
  case 8:
  case 15:
  case 16:
  case 33:
  case 34:
  case 52:
    return true;
  default:
    return false;
  }
}

} // namespace exprmol
