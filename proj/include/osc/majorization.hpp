#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace osc {

/// Absolute tolerance for partial-sum and total-sum comparisons.
inline constexpr double kMajorizationTol = 1e-12;

/// An ordered probability vector: nonnegative, nonincreasing, summing to one.
/// Construction validates membership and throws ContractError otherwise.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> weights);

    static WeightVector uniform(std::size_t n);
    /// (1, 0, ..., 0)
    static WeightVector degenerate(std::size_t n);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::span<const double> values() const noexcept { return weights_; }

private:
    std::vector<double> weights_;
};

/// True iff a is majorized by b (a ≺ b): the decreasing rearrangement of b
/// has partial sums at least those of a, with equal totals.
bool majorizes(std::span<const double> a, std::span<const double> b);

/// Nonnegative, nonincreasing, sums to one.
bool is_member_d_plus_1(std::span<const double> v);

/// p_i(m) = (m + n - i + 1) / a_n(m), a_n(m) = n m + n (n + 1) / 2.
WeightVector weight_sequence(std::int64_t n, std::int64_t m);

/// The integer normalizer a_n(m).
std::int64_t weight_normalizer(std::int64_t n, std::int64_t m);

}  // namespace osc
