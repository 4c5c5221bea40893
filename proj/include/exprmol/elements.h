//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_ELEMENTS_H_
#define EXPRMOL_ELEMENTS_H_

#include <span>
#include <string_view>

namespace exprmol {

struct Element {
  int atomic_number;
  std::string_view symbol;
  double mass;
};

constexpr int kMaxAtomicNumber = 86;

// nullptr for unknown symbols. Case-sensitive ("Cl", not "CL").
const Element *find_element(std::string_view symbol);
const Element &element(int atomic_number);

// Neutral valences, ascending; empty when the element's valence is not
// checked.
std::span<const int> default_valences(int atomic_number);

// Valences after the charge shift: groups 15-17 (and O/S) gain one bond per
// positive charge, B/Al gain one per negative charge and C/Si lose one per
// unit of either sign. `buffer` backs the returned span.
std::span<const int> allowed_valences(int atomic_number, int charge, int (&buffer)[4]);

bool is_organic_subset(int atomic_number);
bool can_be_aromatic(int atomic_number);

} // namespace exprmol

#endif // EXPRMOL_ELEMENTS_H_
