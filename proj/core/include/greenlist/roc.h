// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_ROC_H_
#define GREENLIST_ROC_H_

#include <cstddef>
#include <span>
#include <vector>

namespace greenlist {

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // from (0, 0) to (1, 1)
  double auc = 0.0;              // trapezoidal; ties earn half credit
};

// Sweeps the threshold over every pooled score, flagging score >= threshold.
// Throws DataError when either list is empty.
RocCurve roc_curve(std::span<const double> positives, std::span<const double> negatives);

// Hanley and McNeil's standard error of an AUC estimate.
double auc_standard_error(double auc, std::size_t n_positive, std::size_t n_negative);

// Fraction of scores strictly above the threshold.
double rate_above(std::span<const double> scores, double threshold);

}  // namespace greenlist

#endif  // GREENLIST_ROC_H_
