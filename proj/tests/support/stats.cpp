#include "stats.hpp"

#include <algorithm>
#include <cmath>

namespace stats {

Summary summarize(const std::vector<double>& xs) {
    Summary s;
    s.n = xs.size();
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
        s.se = s.sd / std::sqrt(static_cast<double>(s.n));
    }
    return s;
}

bool means_agree(const Summary& a, const Summary& b, double k) {
    return std::abs(a.mean - b.mean) <= k * std::sqrt(a.se * a.se + b.se * b.se);
}

bool mean_near(const Summary& a, double target, double k) { return std::abs(a.mean - target) <= k * a.se; }

double median(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace stats
