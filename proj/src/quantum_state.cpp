#include "qlitho/quantum_state.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qlitho {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// exp(i 2 pi t), with t reduced to [-1/2, 1/2] first so large arguments keep
// their fractional precision.
complex unit_phase(double turns) {
    const double reduced = turns - std::nearbyint(turns);
    return std::polar(1.0, 2.0 * std::numbers::pi * reduced);
}

} // namespace

TwoModeState::TwoModeState(int photon_number, std::vector<complex> amplitudes)
    : photon_number_(photon_number), amplitudes_(std::move(amplitudes)) {
    if (photon_number_ < 1) {
        throw std::domain_error("TwoModeState: photon number must be >= 1, got " +
                                std::to_string(photon_number_));
    }
    if (amplitudes_.size() != static_cast<std::size_t>(photon_number_) + 1) {
        throw std::domain_error("TwoModeState: expected " + std::to_string(photon_number_ + 1) +
                                " amplitudes, got " + std::to_string(amplitudes_.size()));
    }
    for (const auto& c : amplitudes_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw std::domain_error("TwoModeState: non-finite amplitude");
        }
    }
    const double norm = norm_squared();
    if (std::abs(norm - 1.0) > 1e-12) {
        throw std::domain_error("TwoModeState: state is not normalized (|psi|^2 = " +
                                std::to_string(norm) + ")");
    }
}

double TwoModeState::norm_squared() const noexcept {
    double sum = 0.0;
    for (const auto& c : amplitudes_) {
        sum += std::norm(c);
    }
    return sum;
}

TwoModeState reciprocal_binomial(int photon_number) {
    if (photon_number < 1 || photon_number > kMaxReciprocalBinomialN) {
        throw std::domain_error("reciprocal_binomial: photon number must lie in [1, " +
                                std::to_string(kMaxReciprocalBinomialN) + "], got " +
                                std::to_string(photon_number));
    }
    const auto size = static_cast<std::size_t>(photon_number) + 1;

    std::vector<cpp_int> factorial(size);
    factorial[0] = 1;
    for (std::size_t k = 1; k < size; ++k) {
        factorial[k] = factorial[k - 1] * k;
    }

    std::vector<cpp_int> weight(size);
    cpp_int total = 0;
    for (std::size_t n = 0; n < size; ++n) {
        weight[n] = factorial[n] * factorial[size - 1 - n];
        total += weight[n];
    }

    std::vector<complex> amplitudes(size);
    for (std::size_t n = 0; n < size; ++n) {
        const double probability = cpp_rational(weight[n], total).convert_to<double>();
        amplitudes[n] = complex(std::sqrt(probability), 0.0);
    }
    // Palindromic by construction; copy the mirrored half so c_n == c_{N-n} bit for bit.
    for (std::size_t n = 0; n < size / 2; ++n) {
        amplitudes[size - 1 - n] = amplitudes[n];
    }
    return TwoModeState(photon_number, std::move(amplitudes));
}

TwoModeState propagate(const TwoModeState& state, double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("propagate: position must be finite");
    }
    const int N = state.photon_number();
    std::vector<complex> out(state.amplitudes().begin(), state.amplitudes().end());
    for (int n = 0; n <= N; ++n) {
        out[static_cast<std::size_t>(n)] *= unit_phase(x * (2 * n - N));
    }
    return TwoModeState(N, std::move(out));
}

TwoModeState apply_relative_phase(const TwoModeState& state, double ell) {
    if (!std::isfinite(ell)) {
        throw std::domain_error("apply_relative_phase: ell must be finite");
    }
    const int N = state.photon_number();
    const double period = N + 1.0;
    const double reduced = std::fmod(ell, period);
    std::vector<complex> out(state.amplitudes().begin(), state.amplitudes().end());
    for (int n = 0; n <= N; ++n) {
        out[static_cast<std::size_t>(n)] *= unit_phase(std::fmod(reduced * n, period) / period);
    }
    return TwoModeState(N, std::move(out));
}

} // namespace qlitho
