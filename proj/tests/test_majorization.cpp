#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "osc/errors.hpp"
#include "osc/majorization.hpp"

using namespace osc;

namespace {

std::vector<double> random_probability_vector(std::mt19937_64& gen, std::size_t n) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> v(n);
    double s = 0.0;
    for (auto& x : v) s += (x = e(gen));
    for (auto& x : v) x /= s;
    return v;
}

}  // namespace

TEST_SUITE("majorization") {

TEST_CASE("majorizes: worked examples") {
    const std::vector<double> uniform{1.0 / 3, 1.0 / 3, 1.0 / 3};
    const std::vector<double> skewed{0.5, 1.0 / 3, 1.0 / 6};
    CHECK(majorizes(uniform, skewed));
    CHECK(majorizes(skewed, skewed));
    CHECK_FALSE(majorizes(skewed, uniform));
}

TEST_CASE("majorizes sorts its inputs") {
    const std::vector<double> a{1.0 / 6, 0.5, 1.0 / 3};
    const std::vector<double> b{0.0, 0.0, 1.0};
    CHECK(majorizes(a, b));
    CHECK_FALSE(majorizes(b, a));
}

TEST_CASE("majorizes requires equal totals") {
    CHECK_FALSE(majorizes(std::vector<double>{0.5, 0.5}, std::vector<double>{0.6, 0.5}));
}

TEST_CASE("majorizes: dimension errors") {
    CHECK_THROWS_AS(majorizes(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0}), DimensionError);
    CHECK_THROWS_AS(majorizes(std::vector<double>{}, std::vector<double>{}), DimensionError);
}

TEST_CASE("uniform is majorized by every probability vector") {
    std::mt19937_64 gen(11);
    for (std::size_t n = 1; n <= 12; ++n)
        for (int trial = 0; trial < 50; ++trial) {
            const auto q = random_probability_vector(gen, n);
            CHECK(majorizes(WeightVector::uniform(n).values(), q));
        }
}

TEST_CASE("majorizes is reflexive and transitive on random triples") {
    std::mt19937_64 gen(5);
    int chains = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const auto a = random_probability_vector(gen, n);
        const auto b = random_probability_vector(gen, n);
        const auto c = random_probability_vector(gen, n);
        CHECK(majorizes(a, a));
        if (majorizes(a, b) && majorizes(b, c)) {
            ++chains;
            CHECK(majorizes(a, c));
        }
    }
    CHECK(chains > 0);
}

TEST_CASE("is_member_d_plus_1") {
    CHECK(is_member_d_plus_1(std::vector<double>{0.5, 0.3, 0.2}));
    CHECK_FALSE(is_member_d_plus_1(std::vector<double>{0.3, 0.5, 0.2}));
    CHECK_FALSE(is_member_d_plus_1(std::vector<double>{0.5, 0.4}));
    CHECK_FALSE(is_member_d_plus_1(std::vector<double>{1.2, -0.2}));
    CHECK_THROWS_AS(is_member_d_plus_1(std::vector<double>{}), DimensionError);
}

TEST_CASE("WeightVector rejects non-members") {
    CHECK_THROWS_AS(WeightVector({0.2, 0.5, 0.3}), ContractError);
    CHECK_THROWS_AS(WeightVector({0.6, 0.3}), ContractError);
    CHECK_THROWS_AS(WeightVector(std::vector<double>{}), DimensionError);
    CHECK_NOTHROW(WeightVector({0.6, 0.4}));
}

TEST_CASE("weight_sequence: direct evaluation") {
    const auto w30 = weight_sequence(3, 0);
    CHECK(w30[0] == doctest::Approx(3.0 / 6).epsilon(1e-15));
    CHECK(w30[1] == doctest::Approx(2.0 / 6).epsilon(1e-15));
    CHECK(w30[2] == doctest::Approx(1.0 / 6).epsilon(1e-15));

    const auto w21 = weight_sequence(2, 1);
    CHECK(weight_normalizer(2, 1) == 5);
    CHECK(w21[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(w21[1] == doctest::Approx(0.4).epsilon(1e-15));

    const auto big = weight_sequence(3, 1'000'000);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(big[i] - 1.0 / 3) < 1e-6);
}

TEST_CASE("weight_sequence: errors") {
    CHECK_THROWS_AS(weight_sequence(0, 1), DimensionError);
    CHECK_THROWS_AS(weight_sequence(3, -1), DomainError);
}

TEST_CASE("weight_sequence lies in D+1 and is strictly decreasing") {
    for (std::int64_t n = 1; n <= 64; ++n)
        for (std::int64_t m : {0, 1, 2, 7, 100, 12345, 1'000'000}) {
            const auto w = weight_sequence(n, m);
            REQUIRE(w.size() == static_cast<std::size_t>(n));
            CHECK(is_member_d_plus_1(w.values()));
            for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] < w[i - 1]);
        }
}

TEST_CASE("monotone flattening: exact rational partial sums") {
    // S_k(m) = (k (m + n + 1) - k (k + 1) / 2) / a_n(m); compare cross-multiplied
    // in integers, independent of the floating-point predicate.
    for (std::int64_t n = 2; n <= 10; ++n)
        for (std::int64_t m = 0; m <= 100; ++m) {
            const std::int64_t a0 = n * m + n * (n + 1) / 2;
            const std::int64_t a1 = n * (m + 1) + n * (n + 1) / 2;
            for (std::int64_t k = 1; k < n; ++k) {
                const std::int64_t num0 = k * (m + n + 1) - k * (k + 1) / 2;
                const std::int64_t num1 = k * (m + 1 + n + 1) - k * (k + 1) / 2;
                REQUIRE(num1 * a0 <= num0 * a1);
            }
            CHECK(majorizes(weight_sequence(n, m + 1).values(), weight_sequence(n, m).values()));
        }
}

}  // TEST_SUITE
