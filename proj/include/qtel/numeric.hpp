// Deterministic numeric helpers: a splitmix64 generator (stable across
// platforms, unlike std::mt19937 distributions), pairwise summation, and
// Gauss-Legendre quadrature rules.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qtel {

// splitmix64: tiny, well-mixed, and reproducible from a 64-bit seed.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// Sums values[first, last) by recursive halving.  Error grows like
// O(log n) instead of O(n), and the result is independent of chunking
// because the split points depend only on the index range.
inline double pairwise_sum(const std::vector<double>& values, size_t first, size_t last) {
    const size_t n = last - first;
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (size_t i = first; i < last; ++i) s += values[i];
        return s;
    }
    const size_t mid = first + n / 2;
    return pairwise_sum(values, first, mid) + pairwise_sum(values, mid, last);
}

inline double pairwise_sum(const std::vector<double>& values) {
    return pairwise_sum(values, 0, values.size());
}

struct Quadrature {
    std::vector<double> nodes;    // ascending, in (-1, 1)
    std::vector<double> weights;  // positive, summing to 2
};

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
// Legendre recurrence, seeded with the Chebyshev-like estimate.
inline Quadrature gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("quadrature order must be positive");
    Quadrature q;
    q.nodes.resize(static_cast<size_t>(n));
    q.weights.resize(static_cast<size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Evaluate P_n(x) and P'_n(x) via the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Roots come out descending from the cosine seed; store ascending
        // and mirror onto the symmetric partner.
        q.nodes[static_cast<size_t>(i)] = -x;
        q.weights[static_cast<size_t>(i)] = w;
        q.nodes[static_cast<size_t>(n - 1 - i)] = x;
        q.weights[static_cast<size_t>(n - 1 - i)] = w;
    }
    return q;
}

}  // namespace qtel
