// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/roc.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "greenlist/errors.h"

namespace greenlist {

RocCurve roc_curve(std::span<const double> positives, std::span<const double> negatives) {
  if (positives.empty() || negatives.empty()) {
    throw DataError("ROC needs at least one score in each class");
  }
  std::vector<double> pos(positives.begin(), positives.end());
  std::vector<double> neg(negatives.begin(), negatives.end());
  std::sort(pos.begin(), pos.end(), std::greater<>());
  std::sort(neg.begin(), neg.end(), std::greater<>());
  const double np = static_cast<double>(pos.size());
  const double nn = static_cast<double>(neg.size());

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::size_t i = 0, j = 0;
  while (i < pos.size() || j < neg.size()) {
    double threshold;
    if (i < pos.size() && j < neg.size()) {
      threshold = std::max(pos[i], neg[j]);
    } else {
      threshold = i < pos.size() ? pos[i] : neg[j];
    }
    while (i < pos.size() && pos[i] >= threshold) ++i;
    while (j < neg.size() && neg[j] >= threshold) ++j;
    curve.points.push_back({static_cast<double>(j) / nn, static_cast<double>(i) / np});
  }
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    const RocPoint& a = curve.points[k - 1];
    const RocPoint& b = curve.points[k];
    curve.auc += (b.fpr - a.fpr) * 0.5 * (a.tpr + b.tpr);
  }
  return curve;
}

double auc_standard_error(double auc, std::size_t n_positive, std::size_t n_negative) {
  if (n_positive == 0 || n_negative == 0) throw DataError("AUC standard error needs both classes");
  const double q1 = auc / (2.0 - auc);
  const double q2 = 2.0 * auc * auc / (1.0 + auc);
  const double np = static_cast<double>(n_positive);
  const double nn = static_cast<double>(n_negative);
  const double var = (auc * (1.0 - auc) + (np - 1.0) * (q1 - auc * auc) +
                      (nn - 1.0) * (q2 - auc * auc)) /
                     (np * nn);
  return std::sqrt(std::max(var, 0.0));
}

double rate_above(std::span<const double> scores, double threshold) {
  if (scores.empty()) return 0.0;
  const auto n = std::count_if(scores.begin(), scores.end(),
                               [threshold](double s) { return s > threshold; });
  return static_cast<double>(n) / static_cast<double>(scores.size());
}

}  // namespace greenlist
