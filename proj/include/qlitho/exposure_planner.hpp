// exposure_planner.hpp
// Exposure plans (sequential, dose-weighted shots), pixel masks, the
// birefringent plate bank that realizes each shot's phase, and counting
// helpers.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <string_view>
#include <vector>

namespace qlitho {

using BigInt = boost::multiprecision::cpp_int;

/// One sequential exposure: the (ell_x, ell_y) pixel the state targets and
/// its relative dose. Indices are multiples of 1/2; odd halves address the
/// half-pixel-shifted grid.
struct ExposureShot {
    double ell_x = 1.0;
    double ell_y = 1.0;
    double dose = 1.0;

    bool operator==(const ExposureShot&) const = default;
};

/// Position in pixel coordinates; pixel (a, b) has its center at (a, b).
struct PixelPoint {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const PixelPoint&) const = default;
};

struct ExposurePlan {
    int photon_number = 1;
    std::vector<ExposureShot> shots;

    /// Throws std::domain_error if N < 1, a dose is negative or non-finite,
    /// or an index is not a multiple of 1/2 (tolerance 1e-12).
    void validate() const;

    bool operator==(const ExposurePlan&) const = default;
};

/// Reduces a pixel index into [1, N+2): integers land in {1..N+1}, halves in
/// {1.5..N+1.5}. Index N+1 and index 0 address the same pixel.
double wrap_pixel_index(double ell, int photon_number);

/// (N+1) x (N+1) target pattern with values in [0, 1].
class PixelMask {
public:
    /// Zero-filled mask.
    explicit PixelMask(int photon_number);
    /// values are row-major: values[(ell_y - 1)(N+1) + (ell_x - 1)].
    PixelMask(int photon_number, std::vector<double> values);

    int photon_number() const noexcept { return photon_number_; }
    int side() const noexcept { return photon_number_ + 1; }
    double at(int ell_x, int ell_y) const;
    void set(int ell_x, int ell_y, double value);
    const std::vector<double>& values() const noexcept { return values_; }

    bool operator==(const PixelMask&) const = default;

private:
    std::size_t index(int ell_x, int ell_y) const;

    int photon_number_;
    std::vector<double> values_;
};

/// One shot per positive mask entry, ordered by (ell_y, ell_x).
ExposurePlan plan_from_mask(const PixelMask& mask);

/// Inverse of plan_from_mask for plans on the integer grid. Doses of shots
/// that share a pixel add. Throws std::domain_error for half-integer indices
/// or a summed dose above 1.
PixelMask mask_from_plan(const ExposurePlan& plan);

ExposurePlan preset_fig2();
ExposurePlan preset_fig3();
ExposurePlan preset_fig4();

/// A named reproduction target: its plan plus the ridge polyline its
/// profile is measured along.
struct FigurePreset {
    std::string_view name;
    ExposurePlan plan;
    std::vector<PixelPoint> ridge;
};

/// "fig2", "fig3" or "fig4"; throws std::invalid_argument otherwise.
FigurePreset figure_preset(std::string_view name);

using Retardance = boost::rational<long long>;

/// Birefringent plates selected for one shot. Plate k retards by 2^k
/// lambda/(N+1); the half-shift plate by lambda/(2(N+1)).
struct PlateBank {
    int photon_number = 1;
    std::vector<int> plates; // ascending plate indices k
    bool half_shift = false;

    /// Retardance of plate k in wavelengths.
    Retardance plate_retardance(int k) const;
    /// Total optical path difference of the selected plates, in wavelengths.
    Retardance total_retardance() const;
};

/// Decomposes ell (a multiple of 1/2, reduced modulo N+1) into plates.
/// Throws std::domain_error when 2*ell is not integral or N < 1.
PlateBank plate_bank(double ell, int photon_number);

/// ceil(log2(N+1)): plates needed to address every residue 0..N.
int plates_required(int photon_number);

/// (N+1)(N+2)(N+3)/3!, the number of N-photon four-mode number states.
BigInt count_pure_states(int photon_number);

/// 2^((N+1)^2), the number of binary patterns on the pixel grid.
BigInt count_patterns(int photon_number);

/// Free doses are tuned by cyclic coordinate descent, one golden-section line
/// search per free shot per sweep, to minimize max |E - 1| over ridge samples.
/// Sweeps first minimize sharpening p-norms of E - 1 (p = 2 .. 1024) and end
/// on the max norm itself; a move is taken only if max |E - 1| does not rise.
struct DoseOptimizationOptions {
    std::vector<bool> free; // one flag per shot
    std::vector<PixelPoint> ridge;
    double dose_min = 0.0;
    double dose_max = 1.0;
    int samples_per_segment = 64;
    int max_iterations = 400; // total sweeps across all stages
};

struct DoseOptimizationResult {
    ExposurePlan plan;
    /// Objective before the first sweep, then after each completed sweep.
    std::vector<double> objective_history;
};

DoseOptimizationResult optimize_doses(const ExposurePlan& plan,
                                      const DoseOptimizationOptions& options);

} // namespace qlitho
