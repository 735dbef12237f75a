#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace redbench {

// Fractional ranks of one score vector; rank 1 is the best (highest) score
// and tied scores share the mean of the positions they span, so the rank
// sum is always n(n+1)/2.
using RankVector = std::vector<double>;

enum class Metric { SRCC, PLCC, R2 };

inline const char* metric_name(Metric m) {
    switch (m) {
        case Metric::SRCC: return "srcc";
        case Metric::PLCC: return "plcc";
        case Metric::R2: return "r2";
    }
    return "?";
}

// A correlation statistic that may be undefined (zero variance on either
// side). `value` is meaningless unless `defined` is true; aggregations
// skip undefined entries instead of treating them as zero.
struct CorrValue {
    double value = 0.0;
    bool defined = false;

    static CorrValue undefined() { return CorrValue{}; }
    static CorrValue of(double v) { return CorrValue{v, true}; }
};

// Descending fractional ranks: the highest score gets rank 1, ties get the
// mean of the positions they occupy.
inline RankVector rank(const std::vector<double>& scores) {
    const std::size_t n = scores.size();
    if (n == 0) throw std::invalid_argument("rank: empty score vector");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    RankVector ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        // Positions i+1 .. j+1 (1-based) are tied; all get the midpoint.
        double shared = (static_cast<double>(i + 1) +
                         static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

namespace detail {

inline void require_paired(const std::vector<double>& x,
                           const std::vector<double>& y, const char* what) {
    if (x.size() != y.size()) {
        throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                    std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
    }
    if (x.size() < 3) {
        throw std::invalid_argument(std::string(what) +
                                    ": need at least 3 paired values");
    }
}

// Product-moment correlation. When both sides have identical sums of
// squared deviations the denominator is taken as that common value, which
// makes bitwise-equal inputs (and exact mirrors) come out as exactly +/-1
// instead of 1 +/- 1ulp.
inline CorrValue pearson(const std::vector<double>& x,
                         const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx;
        double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return CorrValue::undefined();
    double den = (sxx == syy) ? sxx : std::sqrt(sxx * syy);
    double r = sxy / den;
    return CorrValue::of(std::clamp(r, -1.0, 1.0));
}

}  // namespace detail

// Spearman rank correlation with tie correction: the Pearson correlation of
// the two fractional-rank vectors. On tie-free inputs this equals the
// classic 1 - 6*sum(d^2)/(n(n^2-1)) closed form.
inline CorrValue srcc(const std::vector<double>& x,
                      const std::vector<double>& y) {
    detail::require_paired(x, y, "srcc");
    return detail::pearson(rank(x), rank(y));
}

// Pearson linear correlation of the raw values.
inline CorrValue plcc(const std::vector<double>& x,
                      const std::vector<double>& y) {
    detail::require_paired(x, y, "plcc");
    return detail::pearson(x, y);
}

// Coefficient of determination with the prediction used directly as the
// fitted value (no regression): 1 - sum((y - yhat)^2) / sum((y - ybar)^2).
// Asymmetric by construction; may be negative when the prediction is worse
// than the truth's mean.
inline CorrValue r2(const std::vector<double>& prediction,
                    const std::vector<double>& truth) {
    detail::require_paired(prediction, truth, "r2");
    const std::size_t n = truth.size();
    double my = 0.0;
    for (double v : truth) my += v;
    my /= static_cast<double>(n);
    double ss_tot = 0.0, ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dt = truth[i] - my;
        double dr = truth[i] - prediction[i];
        ss_tot += dt * dt;
        ss_res += dr * dr;
    }
    if (ss_tot == 0.0) return CorrValue::undefined();
    return CorrValue::of(1.0 - ss_res / ss_tot);
}

// Dispatch. For R2 the first argument is the prediction, the second the
// ground truth.
inline CorrValue corr(Metric metric, const std::vector<double>& x,
                      const std::vector<double>& y) {
    switch (metric) {
        case Metric::SRCC: return srcc(x, y);
        case Metric::PLCC: return plcc(x, y);
        case Metric::R2: return r2(x, y);
    }
    throw std::invalid_argument("corr: unknown metric");
}

}  // namespace redbench
