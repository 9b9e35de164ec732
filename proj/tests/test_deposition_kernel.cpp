#include "qlitho/deposition_kernel.hpp"

#include "fock_ladder_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qlitho;
using qlitho::testing::SparseState;

namespace {

constexpr double kPi = std::numbers::pi;

// Naive Dirichlet sum with std::exp, independent of the library's reduction.
double naive_kernel(int N, double ell, double x) {
    const double xl = (ell - 0.5) / (2.0 * (N + 1));
    std::complex<double> sum = 0.0;
    for (int n = 0; n <= N; ++n) sum += std::exp(std::complex<double>(0.0, 4.0 * kPi * (x - xl) * n));
    return std::norm(sum) / ((N + 1.0) * (N + 1.0));
}

SparseState two_mode_sparse(const TwoModeState& s) {
    SparseState out;
    const int N = s.photon_number();
    for (int n = 0; n <= N; ++n) out[{n, N - n}] = s.amplitude(n);
    return out;
}

SparseState four_mode_sparse(const TwoModeState& a, const TwoModeState& b) {
    SparseState out;
    const int N = a.photon_number();
    for (int m = 0; m <= N; ++m)
        for (int n = 0; n <= N; ++n) out[{m, N - m, n, N - n}] = a.amplitude(m) * b.amplitude(n);
    return out;
}

} // namespace

TEST_CASE("kernel_1d: peak and foreign-center zeros for N=6") {
    const KernelSpec spec{6, 3.0};
    CHECK(spec.pixel_center() == doctest::Approx(2.5 / 14));
    CHECK(kernel_1d(spec, 2.5 / 14) == 1.0);
    CHECK(kernel_1d(spec, 4.5 / 14) < 1e-12);
    for (int other = 1; other <= 7; ++other) {
        if (other == 3) continue;
        CHECK(kernel_1d(spec, pixel_center(6, other)) < 1e-12);
    }
}

TEST_CASE("kernel_1d: N=1 reduces to cos^2(2 pi (x - 1/8))") {
    const KernelSpec spec{1, 1.0};
    CHECK(kernel_1d(spec, 3.0 / 8.0) < 1e-15);
    for (int k = 0; k <= 400; ++k) {
        const double x = -1.0 + 0.005 * k;
        const double c = std::cos(2.0 * kPi * (x - 0.125));
        CHECK(std::abs(kernel_1d(spec, x) - c * c) < 1e-13);
    }
}

TEST_CASE("kernel_1d matches the naive sum and stays in [0, 1]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pos(-1.0, 1.0);
    for (int N = 1; N <= 12; ++N) {
        for (int trial = 0; trial < 200; ++trial) {
            const double ell = 0.5 * std::floor(4.0 * (N + 1) * std::abs(pos(rng)));
            const double x = pos(rng);
            const double k = kernel_1d({N, ell}, x);
            CHECK(k >= 0.0);
            CHECK(k <= 1.0);
            CHECK(std::abs(k - naive_kernel(N, ell, x)) < 1e-12);
            CHECK(std::abs(kernel_1d({N, ell}, x + 0.5) - k) < 1e-12);
        }
    }
}

TEST_CASE("kernel_1d_closed agrees with kernel_1d") {
    const KernelSpec spec{6, 1.0};
    CHECK(std::abs(kernel_1d_closed(spec, 0.25) - kernel_1d(spec, 0.25)) < 1e-12);
    CHECK(kernel_1d_closed(spec, spec.pixel_center()) == 1.0);
    CHECK(kernel_1d_closed(spec, spec.pixel_center() + 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    for (int N = 1; N <= 10; ++N)
        for (int ell = 1; ell <= N + 1; ++ell)
            CHECK(kernel_1d_closed({N, static_cast<double>(ell)}, pixel_center(N, ell)) == 1.0);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int N = 1 + trial % 10;
        const double ell = 1 + trial % (N + 1);
        const double x = pos(rng);
        const double a = kernel_1d({N, ell}, x);
        const double b = kernel_1d_closed({N, ell}, x);
        CHECK(std::abs(a - b) <= std::max(1e-9 * std::max(a, b), 1e-12));
    }
}

TEST_CASE("kernel_2d is the product of the 1D factors") {
    const double x = 0.2;
    const double y = 0.1;
    const double expected = naive_kernel(6, 2.0, x) * naive_kernel(6, 1.0, y);
    CHECK(std::abs(kernel_2d(6, 2.0, 1.0, x, y) - expected) < 1e-14);
    CHECK(kernel_2d(6, 2.0, 1.0, pixel_center(6, 2), pixel_center(6, 1)) == 1.0);
    CHECK(kernel_2d(6, 2.0, 1.0, pixel_center(6, 4), 0.123) < 1e-12);
}

TEST_CASE("shot_state realizes the shifted phase profile of the pixel kernel") {
    // Amplitude phases must be 4 pi (x - x_ell) n up to a global phase.
    const int N = 5;
    const double ell = 3.0;
    const double x = 0.137;
    const auto s = shot_state(N, ell, x);
    const auto r = reciprocal_binomial(N);
    const double xl = pixel_center(N, ell);
    const complex global = s.amplitude(0) / r.amplitude(0);
    for (int n = 0; n <= N; ++n) {
        const complex expected = global * r.amplitude(n) * std::polar(1.0, 4.0 * kPi * (x - xl) * n);
        CHECK(std::abs(s.amplitude(n) - expected) < 1e-13);
    }
}

TEST_CASE("two-mode oracle: single photon in mode 1 deposits 1/2") {
    const TwoModeState one_zero(1, {complex(0.0), complex(1.0)});
    CHECK(deposition_two_mode_oracle(one_zero) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(qlitho::testing::normally_ordered_expectation(two_mode_sparse(one_zero), 1) ==
          doctest::Approx(0.5));
}

TEST_CASE("two-mode oracle matches the ladder-operator oracle") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    for (int N = 1; N <= 8; ++N) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto s = shot_state(N, 1 + trial % (N + 1), pos(rng));
            const double brute = qlitho::testing::normally_ordered_expectation(two_mode_sparse(s), N);
            CHECK(std::abs(deposition_two_mode_oracle(s) - brute) <= 1e-12 * std::max(1.0, brute));
        }
    }
}

TEST_CASE("two-mode oracle is proportional to kernel_1d") {
    SUBCASE("N=1 reference state peaks at 1") {
        CHECK(peak_normalized_two_mode(1, 1.0, pixel_center(1, 1)) == doctest::Approx(1.0));
        CHECK(std::abs(peak_normalized_two_mode(1, 1.0, 0.3) - kernel_1d({1, 1.0}, 0.3)) < 1e-12);
    }
    SUBCASE("N=6, one constant fitted at the peak, 100 random x") {
        const int N = 6;
        const double ell = 4.0;
        const double constant = deposition_two_mode_oracle(shot_state(N, ell, pixel_center(N, ell)));
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> pos(0.0, 1.0);
        for (int k = 0; k < 100; ++k) {
            const double x = pos(rng);
            const double oracle = deposition_two_mode_oracle(shot_state(N, ell, x)) / constant;
            const double kernel = kernel_1d({N, ell}, x);
            CHECK(std::abs(oracle - kernel) <= std::max(1e-9 * kernel, 1e-12));
        }
    }
}

TEST_CASE("two-mode oracle range") {
    CHECK_NOTHROW(deposition_two_mode_oracle(reciprocal_binomial(20)));
    CHECK_THROWS_AS(deposition_two_mode_oracle(reciprocal_binomial(21)), std::domain_error);
}

TEST_CASE("four-mode oracle factorizes into kernel_2d") {
    CHECK(peak_normalized_four_mode(2, 1.0, 3.0, pixel_center(2, 1), pixel_center(2, 3)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(0.0, 0.5);
    for (int trial = 0; trial < 30; ++trial) {
        const double x = pos(rng);
        const double y = pos(rng);
        const double oracle = peak_normalized_four_mode(2, 2.0, 1.0, x, y);
        const double kernel = kernel_2d(2, 2.0, 1.0, x, y);
        CHECK(std::abs(oracle - kernel) <= std::max(1e-9 * kernel, 1e-12));
    }
    // A foreign pixel center along X zeroes the whole product.
    CHECK(peak_normalized_four_mode(3, 1.0, 2.0, pixel_center(3, 3), 0.21) < 1e-9);
}

TEST_CASE("four-mode oracle matches the ladder-operator oracle") {
    for (int N = 1; N <= 3; ++N) {
        const auto a = shot_state(N, 1.0, 0.07 * N);
        const auto b = shot_state(N, 2.0, 0.31);
        const double brute = qlitho::testing::normally_ordered_expectation(four_mode_sparse(a, b), 2 * N);
        CHECK(std::abs(deposition_four_mode_oracle(a, b) - brute) <= 1e-12 * std::max(1.0, brute));
    }
}

TEST_CASE("four-mode oracle preconditions") {
    CHECK_THROWS_AS(deposition_four_mode_oracle(reciprocal_binomial(2), reciprocal_binomial(3)),
                    std::domain_error);
    CHECK_THROWS_AS(deposition_four_mode_oracle(reciprocal_binomial(5), reciprocal_binomial(5)),
                    std::domain_error);
}
