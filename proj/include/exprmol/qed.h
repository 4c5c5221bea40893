//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_QED_H_
#define EXPRMOL_QED_H_

#include <array>

#include "exprmol/descriptors.h"
#include "exprmol/mol_graph.h"

namespace exprmol {

/// Asymmetric double sigmoid parameters of one QED desirability function.
struct AdsParameters {
  double a, b, c, d, e, f, dmax;
};

// Order: MW, ALOGP, HBA, HBD, PSA, ROTB, AROM, ALERTS.
const std::array<AdsParameters, 8> &qed_ads_parameters();
const std::array<double, 8> &qed_mean_weights();

double ads(double x, const AdsParameters &p);

// Desirabilities are floored at 1e-6 before the log.
double qed_from_descriptors(const Descriptors &d);
double qed(const MolGraph &g);

} // namespace exprmol

#endif // EXPRMOL_QED_H_
