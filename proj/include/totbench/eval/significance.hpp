// Copyright 2026 The tot-bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "totbench/error.hpp"

namespace totbench::eval {

struct SignificanceResult {
    std::string label_a;
    std::string label_b;
    std::size_t n = 0;
    double mean_difference = 0.0;
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;
    double p_value = 1.0;
    double alpha = 0.01;
    double corrected_alpha = 0.01;
    bool degenerate_variance = false;

    [[nodiscard]] auto significant() const -> bool { return p_value < corrected_alpha; }
};

/// Two-sided Student's t CDF tail: P(|T| >= |t|) with `df` degrees of freedom.
[[nodiscard]] inline auto two_sided_p(double t, double df) -> double {
    boost::math::students_t dist(df);
    return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))));
}

/// Paired two-sided t-test on a - b with Bonferroni correction over
/// `num_comparisons`. All-zero differences give p = 1; zero variance with a
/// nonzero mean gives p = 0 and sets degenerate_variance.
[[nodiscard]] inline auto paired_ttest(const std::vector<double>& a, const std::vector<double>& b,
                                       std::size_t num_comparisons = 1, double alpha = 0.01) -> SignificanceResult {
    if (a.size() != b.size()) {
        throw UsageError("paired t-test needs equal-length samples (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
    }
    if (a.size() < 2) {
        throw UsageError("paired t-test needs at least two pairs");
    }
    if (num_comparisons == 0) {
        throw UsageError("number of comparisons must be at least 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw UsageError("alpha must lie in (0, 1)");
    }
    SignificanceResult r;
    r.n = a.size();
    r.alpha = alpha;
    r.corrected_alpha = alpha / static_cast<double>(num_comparisons);
    r.degrees_of_freedom = static_cast<double>(r.n - 1);

    std::vector<double> d(r.n);
    double sum = 0.0;
    for (std::size_t i = 0; i < r.n; ++i) {
        d[i] = a[i] - b[i];
        sum += d[i];
    }
    const double mean = sum / static_cast<double>(r.n);
    double ss = 0.0;
    for (double x : d) {
        ss += (x - mean) * (x - mean);
    }
    r.mean_difference = mean;
    const double variance = ss / r.degrees_of_freedom;
    // Rounding leaves a residue when all differences are equal but not exact
    // in binary, e.g. 0.1 - 0.0 five times.
    if (std::sqrt(variance) <= 1e-12 * std::max(1.0, std::fabs(mean))) {
        if (mean == 0.0) {
            r.p_value = 1.0;
        } else {
            r.t_statistic = mean > 0 ? INFINITY : -INFINITY;
            r.p_value = 0.0;
            r.degenerate_variance = true;
        }
        return r;
    }
    r.t_statistic = mean / std::sqrt(variance / static_cast<double>(r.n));
    r.p_value = two_sided_p(r.t_statistic, r.degrees_of_freedom);
    return r;
}

}  // namespace totbench::eval
