//
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "exprmol/commands.h"

int main(int argc, char **argv) {
  return exprmol::run_cli(argc, argv, std::cout, std::cerr);
}
