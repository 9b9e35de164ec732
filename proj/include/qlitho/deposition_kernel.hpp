// deposition_kernel.hpp
// N-photon deposition rates: the Dirichlet-sum kernel, its sine-ratio closed
// form, and operator-level expectation values used as independent oracles.
//
// All positions are in wavelengths. Kernels are normalized so that an
// isolated shot peaks at exactly 1.

#pragma once

#include "qlitho/quantum_state.hpp"

namespace qlitho {

/// A kernel aimed at pixel `ell` of an (N+1)-pixel row. Half-integer ell
/// addresses the half-pixel-shifted grid.
struct KernelSpec {
    int photon_number;
    double ell;

    /// (ell - 1/2) / (2(N+1)).
    double pixel_center() const noexcept;
};

/// Center of pixel `ell` along one axis, in wavelengths.
double pixel_center(int photon_number, double ell) noexcept;

/// Inverse of pixel_center: fractional pixel coordinate of position x.
double pixel_coordinate(int photon_number, double x) noexcept;

/// K(x) = |(1/(N+1)) sum_{n=0}^{N} exp(i 4 pi (x - x_ell) n)|^2.
/// Regular everywhere, in [0, 1], and exactly 1 at x_ell.
double kernel_1d(const KernelSpec& spec, double x);

/// sin^2(pi u) / ((N+1)^2 sin^2(pi u/(N+1))) with u = 2(N+1)x - ell + 1/2.
/// Within 1e-8 of the removable singularity it defers to kernel_1d().
double kernel_1d_closed(const KernelSpec& spec, double x);

/// Product kernel of the four-mode exposure.
double kernel_2d(int photon_number, double ell_x, double ell_y, double x, double y);

/// Reciprocal binomial state phased to peak on pixel `ell`, then propagated to x.
TwoModeState shot_state(int photon_number, double ell, double x);

inline constexpr int kMaxTwoModeOracleN = 20;
inline constexpr int kMaxFourModeOracleN = 4;

/// <e^dag^N e^N>/N! with e = (a1 + a2)/sqrt(2), evaluated with exact
/// binomials and factorials. Throws std::domain_error for N > 20.
double deposition_two_mode_oracle(const TwoModeState& state);

/// <e^dag^2N e^2N>/(2N)! with e = (a1 + a2 + a3 + a4)/2 on the product state
/// state_x (modes 1,2) times state_y (modes 3,4). e^2N is expanded over every
/// four-mode occupation pattern with exact multinomial weights.
/// Throws std::domain_error on mismatched N or N > 4.
double deposition_four_mode_oracle(const TwoModeState& state_x, const TwoModeState& state_y);

// Oracle values divided by the same construction evaluated at the pixel
// center; comparable to kernel_1d / kernel_2d.
double peak_normalized_two_mode(int photon_number, double ell, double x);
double peak_normalized_four_mode(int photon_number, double ell_x, double ell_y, double x, double y);

} // namespace qlitho
