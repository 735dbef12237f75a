#pragma once

// Deliberately naive re-implementations of the correlation statistics,
// kept independent of the library's computation paths. Ranks come from
// O(n^2) pairwise counting, the tie-free Spearman path uses the
// 1 - 6*sum(d^2)/(n(n^2-1)) closed form, and the tied path goes through a
// separately written Pearson. Everything returns NaN where the library
// would report an undefined statistic.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracle {

inline std::vector<double> rank_by_counting(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t above = 0;
        std::size_t tied = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (x[j] > x[i]) ++above;
            if (x[j] == x[i]) ++tied;
        }
        ranks[i] = 1.0 + static_cast<double>(above) +
                   static_cast<double>(tied) / 2.0;
    }
    return ranks;
}

inline bool has_ties(const std::vector<double>& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (x[i] == x[j]) return true;
        }
    }
    return false;
}

inline double pearson(const std::vector<double>& x,
                      const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i] / static_cast<double>(n);
        my += y[i] / static_cast<double>(n);
    }
    double num = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        vx += (x[i] - mx) * (x[i] - mx);
        vy += (y[i] - my) * (y[i] - my);
    }
    if (vx == 0.0 || vy == 0.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return num / (std::sqrt(vx) * std::sqrt(vy));
}

inline double srcc(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> rx = rank_by_counting(x);
    std::vector<double> ry = rank_by_counting(y);
    if (!has_ties(x) && !has_ties(y)) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = rx[i] - ry[i];
            d2 += d * d;
        }
        double nn = static_cast<double>(n);
        return 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));
    }
    return pearson(rx, ry);
}

inline double plcc(const std::vector<double>& x, const std::vector<double>& y) {
    return pearson(x, y);
}

inline double r2(const std::vector<double>& prediction,
                 const std::vector<double>& truth) {
    const std::size_t n = truth.size();
    double my = 0.0;
    for (double v : truth) my += v / static_cast<double>(n);
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ss_res += (truth[i] - prediction[i]) * (truth[i] - prediction[i]);
        ss_tot += (truth[i] - my) * (truth[i] - my);
    }
    if (ss_tot == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return 1.0 - ss_res / ss_tot;
}

}  // namespace oracle
