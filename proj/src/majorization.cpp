#include "osc/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "osc/errors.hpp"

namespace osc {

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw DimensionError("weight vector is empty");
    if (!is_member_d_plus_1(weights_))
        throw ContractError("weight vector is not a nonincreasing probability vector");
}

WeightVector WeightVector::uniform(std::size_t n) {
    if (n == 0) throw DimensionError("uniform weights need n >= 1");
    return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

WeightVector WeightVector::degenerate(std::size_t n) {
    if (n == 0) throw DimensionError("degenerate weights need n >= 1");
    std::vector<double> w(n, 0.0);
    w[0] = 1.0;
    return WeightVector(std::move(w));
}

bool majorizes(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw DimensionError("majorizes: empty vector");
    if (a.size() != b.size())
        throw DimensionError("majorizes: length mismatch (" + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");

    std::vector<double> as(a.begin(), a.end());
    std::vector<double> bs(b.begin(), b.end());
    std::sort(as.begin(), as.end(), std::greater<>());
    std::sort(bs.begin(), bs.end(), std::greater<>());

    double sa = 0.0;
    double sb = 0.0;
    for (std::size_t k = 0; k + 1 < as.size(); ++k) {
        sa += as[k];
        sb += bs[k];
        if (sa > sb + kMajorizationTol) return false;
    }
    sa += as.back();
    sb += bs.back();
    return std::abs(sa - sb) <= kMajorizationTol;
}

bool is_member_d_plus_1(std::span<const double> v) {
    if (v.empty()) throw DimensionError("is_member_d_plus_1: empty vector");
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]) || v[i] < 0.0) return false;
        if (i > 0 && v[i] > v[i - 1]) return false;
        total += v[i];
    }
    return std::abs(total - 1.0) <= kMajorizationTol;
}

std::int64_t weight_normalizer(std::int64_t n, std::int64_t m) {
    if (n <= 0) throw DimensionError("weight_sequence: n must be >= 1");
    if (m < 0) throw DomainError("weight_sequence: m must be >= 0");
    constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
    const std::int64_t triangle = n * (n + 1) / 2;
    if (m > (kMax - triangle) / n) throw DomainError("weight_sequence: a_n(m) overflows");
    return n * m + triangle;
}

WeightVector weight_sequence(std::int64_t n, std::int64_t m) {
    const std::int64_t a = weight_normalizer(n, m);
    const double denom = static_cast<double>(a);
    std::vector<double> w(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i)
        w[static_cast<std::size_t>(i - 1)] = static_cast<double>(m + n - i + 1) / denom;
    return WeightVector(std::move(w));
}

}  // namespace osc
