#include "qlitho/deposition_kernel.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qlitho {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) {
        f *= static_cast<std::uint64_t>(k);
    }
    return f;
}

std::uint64_t binomial(int n, int k) {
    std::uint64_t c = 1;
    for (int j = 1; j <= k; ++j) {
        c = c * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
    }
    return c;
}

// Phase offset of x from the pixel center in units of one pixel pitch:
// u = 2(N+1)x - ell + 1/2.
double pixel_offset(const KernelSpec& spec, double x) {
    return 2.0 * (spec.photon_number + 1) * x - spec.ell + 0.5;
}

void require_positive_n(int photon_number, const char* where) {
    if (photon_number < 1) {
        throw std::domain_error(std::string(where) + ": photon number must be >= 1");
    }
}

} // namespace

double KernelSpec::pixel_center() const noexcept {
    return qlitho::pixel_center(photon_number, ell);
}

double pixel_center(int photon_number, double ell) noexcept {
    return (ell - 0.5) / (2.0 * (photon_number + 1));
}

double pixel_coordinate(int photon_number, double x) noexcept {
    return 2.0 * (photon_number + 1) * x + 0.5;
}

double kernel_1d(const KernelSpec& spec, double x) {
    require_positive_n(spec.photon_number, "kernel_1d");
    const int N = spec.photon_number;
    const double period = N + 1.0;
    // Each term is exp(i 2 pi u n / (N+1)); reduce u n modulo N+1 so exact
    // pixel offsets hit exact roots of unity.
    const double u = std::fmod(pixel_offset(spec, x), period);
    double re = 0.0;
    double im = 0.0;
    for (int n = 0; n <= N; ++n) {
        const double turns = std::fmod(u * n, period) / period;
        re += std::cos(2.0 * kPi * turns);
        im += std::sin(2.0 * kPi * turns);
    }
    re /= period;
    im /= period;
    return std::min(1.0, re * re + im * im);
}

double kernel_1d_closed(const KernelSpec& spec, double x) {
    require_positive_n(spec.photon_number, "kernel_1d_closed");
    const double period = spec.photon_number + 1.0;
    const double denominator_arg = 2.0 * x - (spec.ell - 0.5) / period;
    if (std::abs(denominator_arg - std::nearbyint(denominator_arg)) < 1e-8) {
        return kernel_1d(spec, x);
    }
    const double numerator = std::sin(kPi * pixel_offset(spec, x));
    const double denominator = period * std::sin(kPi * denominator_arg);
    return (numerator * numerator) / (denominator * denominator);
}

double kernel_2d(int photon_number, double ell_x, double ell_y, double x, double y) {
    return kernel_1d({photon_number, ell_x}, x) * kernel_1d({photon_number, ell_y}, y);
}

TwoModeState shot_state(int photon_number, double ell, double x) {
    // The half-pixel translation and the ell plate phase combine into one
    // relative phase of -(ell - 1/2) steps.
    return propagate(apply_relative_phase(reciprocal_binomial(photon_number), -(ell - 0.5)), x);
}

double deposition_two_mode_oracle(const TwoModeState& state) {
    const int N = state.photon_number();
    if (N > kMaxTwoModeOracleN) {
        throw std::domain_error("deposition_two_mode_oracle: photon number must be <= " +
                                std::to_string(kMaxTwoModeOracleN) + ", got " + std::to_string(N));
    }
    // e^N |n, N-n> = 2^{-N/2} C(N,n) sqrt(n!(N-n)!) |0,0>; every other
    // component of e^N annihilates the ket.
    complex vacuum_amplitude = 0.0;
    for (int n = 0; n <= N; ++n) {
        const double weight = static_cast<double>(binomial(N, n)) *
                              std::sqrt(static_cast<double>(factorial(n) * factorial(N - n)));
        vacuum_amplitude += state.amplitude(n) * weight;
    }
    vacuum_amplitude *= std::pow(2.0, -0.5 * N);
    return std::norm(vacuum_amplitude) / static_cast<double>(factorial(N));
}

double deposition_four_mode_oracle(const TwoModeState& state_x, const TwoModeState& state_y) {
    const int N = state_x.photon_number();
    if (state_y.photon_number() != N) {
        throw std::domain_error("deposition_four_mode_oracle: photon numbers differ (" +
                                std::to_string(N) + " vs " +
                                std::to_string(state_y.photon_number()) + ")");
    }
    if (N > kMaxFourModeOracleN) {
        throw std::domain_error("deposition_four_mode_oracle: photon number must be <= " +
                                std::to_string(kMaxFourModeOracleN) + ", got " + std::to_string(N));
    }
    using Occupation = std::array<int, 4>;
    const int total = 2 * N;

    // (a1+a2+a3+a4)^{2N} = sum_k multinomial(2N; k) prod_i a_i^{k_i}.
    std::vector<std::pair<Occupation, std::uint64_t>> expansion;
    for (int k1 = 0; k1 <= total; ++k1) {
        for (int k2 = 0; k1 + k2 <= total; ++k2) {
            for (int k3 = 0; k1 + k2 + k3 <= total; ++k3) {
                const int k4 = total - k1 - k2 - k3;
                const std::uint64_t weight = factorial(total) /
                    (factorial(k1) * factorial(k2) * factorial(k3) * factorial(k4));
                expansion.push_back({{k1, k2, k3, k4}, weight});
            }
        }
    }

    std::map<Occupation, complex> result;
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= N; ++n) {
            const complex coefficient = state_x.amplitude(m) * state_y.amplitude(n);
            if (coefficient == complex(0.0)) {
                continue;
            }
            const Occupation ket{m, N - m, n, N - n};
            for (const auto& [powers, weight] : expansion) {
                Occupation remaining{};
                std::uint64_t ladder = 1; // prod n_i!/(n_i-k_i)!, the square of the ladder factor
                bool annihilated = false;
                for (std::size_t i = 0; i < 4; ++i) {
                    if (powers[i] > ket[i]) {
                        annihilated = true;
                        break;
                    }
                    remaining[i] = ket[i] - powers[i];
                    ladder *= factorial(ket[i]) / factorial(remaining[i]);
                }
                if (annihilated) {
                    continue;
                }
                result[remaining] += coefficient * static_cast<double>(weight) *
                                     std::sqrt(static_cast<double>(ladder));
            }
        }
    }

    double norm = 0.0;
    for (const auto& [ket, amplitude] : result) {
        norm += std::norm(amplitude);
    }
    // e = (sum a_i)/2, so e^{2N} carries 2^{-2N}; squared in the norm.
    return norm * std::pow(2.0, -4.0 * N) / static_cast<double>(factorial(total));
}

double peak_normalized_two_mode(int photon_number, double ell, double x) {
    const double peak = deposition_two_mode_oracle(
        shot_state(photon_number, ell, pixel_center(photon_number, ell)));
    return deposition_two_mode_oracle(shot_state(photon_number, ell, x)) / peak;
}

double peak_normalized_four_mode(int photon_number, double ell_x, double ell_y, double x, double y) {
    const double peak = deposition_four_mode_oracle(
        shot_state(photon_number, ell_x, pixel_center(photon_number, ell_x)),
        shot_state(photon_number, ell_y, pixel_center(photon_number, ell_y)));
    return deposition_four_mode_oracle(shot_state(photon_number, ell_x, x),
                                       shot_state(photon_number, ell_y, y)) /
           peak;
}

} // namespace qlitho
