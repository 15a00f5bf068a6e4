#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "osc/concomitant.hpp"
#include "osc/majorization.hpp"

namespace osc {

/// Slack separating quadrature noise from genuine inequality violations.
inline constexpr double kEnvelopeSlack = 1e-8;
/// Any violation above this is a logic error, never float noise.
inline constexpr double kHardViolation = 1e-6;

/// Certification target for grid integrals of |.| over the window.
struct L1Options {
    double abs_tol = 1e-7;
    double rel_tol = 1e-4;
};

struct L1Estimate {
    double value = 0.0;
    /// Richardson estimate |S_h - S_2h| / 15 when the grid allows halving,
    /// otherwise |Simpson - trapezoid|.
    double error_estimate = 0.0;
};

/// Composite Simpson weights for an arbitrary strictly increasing abscissa
/// set; an odd interval count closes with a trapezoid on the last interval.
std::vector<double> simpson_weights(std::span<const double> grid);

/// Integral of |values| over the tensor grid. Throws AccuracyError if the
/// error estimate exceeds max(abs_tol, rel_tol * value).
L1Estimate integrate_abs(std::span<const double> values, std::span<const double> grid_x,
                         std::span<const double> grid_y, const L1Options& opts = {});

/// K_n(x, y) = sum_i p_i F_{i:n}(x, y).
std::vector<double> upper_envelope(const ConcomitantCdfTable& table, const WeightVector& p);
/// H_n(x, y) = sum_i p_i F_{n-i+1:n}(x, y).
std::vector<double> lower_envelope(const ConcomitantCdfTable& table, const WeightVector& p);

struct EnvelopePair {
    std::int64_t m = 0;
    std::vector<double> grid_x;
    std::vector<double> grid_y;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> truth;
    double max_gap = 0.0;
    double l1_gap = 0.0;
    double l1_error = 0.0;
};

/// Envelopes for p = weight_sequence(n, m) plus gap diagnostics.
EnvelopePair make_envelope_pair(const ConcomitantCdfTable& table, std::span<const double> truth,
                                std::int64_t m, const L1Options& opts = {});
/// Same, for an explicit weight vector (m is carried through as a label).
EnvelopePair make_envelope_pair(const ConcomitantCdfTable& table, std::span<const double> truth,
                                const WeightVector& p, std::int64_t m, const L1Options& opts = {});

struct SandwichReport {
    double lower_violation = 0.0;  // max(H - F)
    double upper_violation = 0.0;  // max(F - K)
    double slack = kEnvelopeSlack;
    bool passed = false;
};
SandwichReport sandwich_check(const EnvelopePair& pair, double slack = kEnvelopeSlack);

/// For p ≺ q: H_q <= H_p <= F <= K_p <= K_q pointwise.
struct NestingReport {
    double outer_lower_violation = 0.0;  // max(H_q - H_p)
    double inner_lower_violation = 0.0;  // max(H_p - F)
    double inner_upper_violation = 0.0;  // max(F - K_p)
    double outer_upper_violation = 0.0;  // max(K_p - K_q)
    double slack = kEnvelopeSlack;
    bool passed = false;

    double max_violation() const;
};
/// Throws ContractError unless p ≺ q.
NestingReport nesting_check(const ConcomitantCdfTable& table, std::span<const double> truth,
                            const WeightVector& p, const WeightVector& q, double slack = kEnvelopeSlack);
/// Uses (1/n) sum_r F_{r:n} as F.
NestingReport nesting_check(const ConcomitantCdfTable& table, const WeightVector& p, const WeightVector& q,
                            double slack = kEnvelopeSlack);

/// Delta = double integral of |K - H| over the grid window.
L1Estimate l1_gap(const EnvelopePair& pair, const L1Options& opts = {});

/// c_n = sum_i double integral of |F_{i:n} - F_{n-i+1:n}|.
L1Estimate c_n_constant(const ConcomitantCdfTable& table, const L1Options& opts = {});

/// (p_1(m) - 1/n) c_n.
double gap_bound(std::int64_t n, std::int64_t m, double c_n);

/// (1/n) sum_r F_{r:n} on the table grid.
std::vector<double> rank_average(const ConcomitantCdfTable& table);

}  // namespace osc
