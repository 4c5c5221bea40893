//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/qed.h"

#include <algorithm>
#include <cmath>

namespace exprmol {
namespace {
  // Bickerton et al. (2012), Nature Chemistry 4, 90-98, supplementary table.
  constexpr std::array<AdsParameters, 8> kAds = { {
      { 2.817065973, 392.5754953, 290.7489764, 2.419764353, 49.22325677, 65.37051707,
        104.9805561 },
      { 3.172690585, 137.8624751, 2.534937431, 4.581497897, 0.822739154, 0.576295591,
        131.3186604 },
      { 2.948620388, 160.4605972, 3.615294657, 4.435986202, 0.290141953, 1.300669958,
        148.7763046 },
      { 1.618662227, 1010.051101, 0.985094388, 0.000000001, 0.713820843, 0.920922555,
        258.1632616 },
      { 1.876861559, 125.2232657, 62.90773554, 87.83366614, 12.01999824, 28.51324732,
        104.5686167 },
      { 0.010000000, 272.4121427, 2.558379970, 1.565547684, 1.271567166, 2.758063707,
        105.4420403 },
      { 3.217788970, 957.7374108, 2.274627939, 0.000000001, 1.317690384, 0.375760881,
        312.3372610 },
      { 0.010000000, 1199.094025, -0.09002883, 0.000000001, 0.185904477, 0.875193782,
        417.7253140 },
  } };

  constexpr std::array<double, 8> kMeanWeights = { 0.66, 0.46, 0.05, 0.61,
                                                   0.06, 0.65, 0.48, 0.95 };

  constexpr double kFloor = 1e-6;
} // namespace

const std::array<AdsParameters, 8> &qed_ads_parameters() {
  return kAds;
}

const std::array<double, 8> &qed_mean_weights() {
  return kMeanWeights;
}

double ads(double x, const AdsParameters &p) {
  const double exp1 = 1.0 + std::exp(-(x - p.c + p.d / 2.0) / p.e);
  const double exp2 = 1.0 + std::exp(-(x - p.c - p.d / 2.0) / p.f);
  return (p.a + p.b / exp1 * (1.0 - 1.0 / exp2)) / p.dmax;
}

double qed_from_descriptors(const Descriptors &d) {
  const std::array<double, 8> x = {
    d.mw, d.alogp, double(d.hba), double(d.hbd), d.psa, double(d.rotb), double(d.arom),
    double(d.alerts),
  };
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += kMeanWeights[i] * std::log(std::max(kFloor, ads(x[i], kAds[i])));
    den += kMeanWeights[i];
  }
  return std::clamp(std::exp(num / den), 0.0, 1.0);
}

double qed(const MolGraph &g) {
  return qed_from_descriptors(compute_descriptors(g));
}

} // namespace exprmol
