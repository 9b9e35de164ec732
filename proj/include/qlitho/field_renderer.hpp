// field_renderer.hpp
// Dose-weighted superposition of shot kernels over the lambda/2 film, ridge
// profiles, background metrics, and PGM/CSV writers.

#pragma once

#include "qlitho/exposure_planner.hpp"
#include "qlitho/io_error.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace qlitho {

inline constexpr int kMinResolution = 8;
inline constexpr int kMaxResolution = 8192;

/// R x R exposure samples over [0, 1/2)^2 (wavelengths). Sample (i, j) sits
/// at the cell center x = (i + 1/2)/(2R), y = (j + 1/2)/(2R).
class FieldMap {
public:
    FieldMap(int resolution, std::vector<double> data);

    int resolution() const noexcept { return resolution_; }
    double at(int i, int j) const { return data_.at(static_cast<std::size_t>(j) * resolution_ + i); }
    const std::vector<double>& data() const noexcept { return data_; }
    double max_value() const noexcept;

    static double cell_center(int index, int resolution) noexcept;

private:
    int resolution_;
    std::vector<double> data_; // row-major, rows of increasing y
};

struct RidgeProfile {
    std::vector<double> arc_positions; // path length in pixel units
    std::vector<double> values;
    double min_value = 0.0;
    double max_value = 0.0;
};

/// Sum over shots of dose * kernel_2d at every cell center.
/// Throws std::domain_error for R outside [8, 8192].
FieldMap accumulate(const ExposurePlan& plan, int resolution);

/// The same sum at an arbitrary point (wavelengths).
double exposure_at(const ExposurePlan& plan, double x, double y);

/// Exposure along the polyline through `waypoints` (pixel coordinates),
/// S samples per segment including both ends; joints are not repeated.
RidgeProfile ridge_profile(const ExposurePlan& plan, const std::vector<PixelPoint>& waypoints,
                           int samples_per_segment);

/// Default half-width, in pixels, of the square excluded around each
/// exposed pixel center: the pixel itself plus its eight neighbours.
inline constexpr double kBackgroundExclusion = 1.5;

/// Maximum exposure at cell centers farther than `exclusion` pixels
/// (Chebyshev distance, periodic with the lambda/2 film) from every exposed
/// center, divided by the map maximum. Returns 0 for an empty plan.
/// Throws std::domain_error for R < 64 or an empty exposed set on a
/// non-empty plan.
double background_penalty(const ExposurePlan& plan, const std::vector<PixelPoint>& exposed,
                          int resolution, double exclusion = kBackgroundExclusion);

/// Shot centers of a plan, in plan order.
std::vector<PixelPoint> shot_centers(const ExposurePlan& plan);

/// Plain P2, maxval 65535, rows of increasing y. display_max defaults to the
/// map maximum (1 for an all-zero map).
void write_pgm(const FieldMap& map, const std::filesystem::path& destination,
               std::optional<double> display_max = std::nullopt);
void write_csv(const FieldMap& map, const std::filesystem::path& destination);
void write_csv(const RidgeProfile& profile, const std::filesystem::path& destination);

/// 16-bit gray level for one sample: round(clamp(value/display_max, 0, 1) * 65535).
int pgm_level(double value, double display_max);

} // namespace qlitho
