// quantum_state.hpp
// Two-mode, fixed-photon-number Fock superpositions and the phase
// transformations used to steer their interference pattern.

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qlitho {

using complex = std::complex<double>;

/// Largest photon number accepted by reciprocal_binomial().
inline constexpr int kMaxReciprocalBinomialN = 170;

/// N-photon state of two bosonic modes, stored densely in the number basis.
///
/// amplitude(n) multiplies |n, N-n>: n photons in mode 1, N-n in mode 2.
/// Instances are immutable and always normalized (tolerance 1e-12).
class TwoModeState {
public:
    /// Throws std::domain_error when N < 1, when the amplitude count is not
    /// N+1, or when the squared norm deviates from 1 by more than 1e-12.
    TwoModeState(int photon_number, std::vector<complex> amplitudes);

    int photon_number() const noexcept { return photon_number_; }
    std::span<const complex> amplitudes() const noexcept { return amplitudes_; }
    const complex& amplitude(int n) const { return amplitudes_.at(static_cast<std::size_t>(n)); }

    double norm_squared() const noexcept;

private:
    int photon_number_;
    std::vector<complex> amplitudes_;
};

/// c_n = sqrt(n!(N-n)!) / sqrt(sum_k k!(N-k)!), all real and nonnegative.
/// The factorial sums are formed exactly before a single conversion to double.
TwoModeState reciprocal_binomial(int photon_number);

/// Free-space propagation to position x (in wavelengths) between the two
/// counter-propagating modes: c_n -> c_n exp(i 2 pi x (2n - N)).
TwoModeState propagate(const TwoModeState& state, double x);

/// Relative phase 2 pi ell / (N+1) on mode 1: c_n -> c_n exp(i 2 pi ell n / (N+1)).
/// ell may be fractional; it is taken modulo N+1.
TwoModeState apply_relative_phase(const TwoModeState& state, double ell);

} // namespace qlitho
