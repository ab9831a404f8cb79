// Copyright 2026 The Quasar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUASAR_ORACLE_STATS_HPP_
#define QUASAR_ORACLE_STATS_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace quasar::oracle {

// Regularized upper incomplete gamma Q(a, x): series expansion below a+1,
// Lentz continued fraction above.
inline double gamma_q(double a, double x) {
    if (x < 0 || a <= 0)
        throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0)
        return 1.0;
    if (x < a + 1.0) {
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-14)
                break;
        }
        double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        return 1.0 - p;
    }
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300)
            d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300)
            c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-14)
            break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Chi-square goodness-of-fit p-value of observed counts against expected
// probabilities. Cells with tiny expectation are pooled into one bucket so
// the statistic stays well-behaved; df = cells - 1.
template <typename Key>
double chi_square_pvalue(const std::map<Key, size_t> &observed,
                         const std::map<Key, double> &expected_probs, size_t total) {
    double chi2 = 0;
    size_t cells = 0;
    double pooled_expected = 0;
    double pooled_observed = 0;
    const double min_expected = 5.0;
    for (const auto &[key, prob] : expected_probs) {
        double expect = prob * static_cast<double>(total);
        auto it = observed.find(key);
        double obs = it == observed.end() ? 0.0 : static_cast<double>(it->second);
        if (expect < min_expected) {
            pooled_expected += expect;
            pooled_observed += obs;
            continue;
        }
        chi2 += (obs - expect) * (obs - expect) / expect;
        ++cells;
    }
    // Outcomes never predicted by the oracle: any observation is a failure.
    for (const auto &[key, count] : observed) {
        if (count > 0 && expected_probs.find(key) == expected_probs.end())
            return 0.0;
    }
    if (pooled_expected > 0) {
        chi2 += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) /
                pooled_expected;
        ++cells;
    }
    if (cells <= 1)
        return 1.0;
    double df = static_cast<double>(cells - 1);
    return gamma_q(df / 2.0, chi2 / 2.0);
}

} // namespace quasar::oracle

#endif // QUASAR_ORACLE_STATS_HPP_
