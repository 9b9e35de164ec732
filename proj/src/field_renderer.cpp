#include "qlitho/field_renderer.hpp"

#include "qlitho/deposition_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

namespace qlitho {

namespace {

std::ofstream open_for_writing(const std::filesystem::path& destination) {
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + destination.string() + "' for writing");
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& destination) {
    out.flush();
    if (!out) {
        throw IoError("write to '" + destination.string() + "' failed");
    }
}

std::string format_g17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

// Signed offset wrapped into [-period/2, period/2).
double wrapped_offset(double offset, double period) {
    double r = std::fmod(offset + 0.5 * period, period);
    if (r < 0.0) {
        r += period;
    }
    return r - 0.5 * period;
}

} // namespace

FieldMap::FieldMap(int resolution, std::vector<double> data)
    : resolution_(resolution), data_(std::move(data)) {
    if (resolution_ < 1 ||
        data_.size() != static_cast<std::size_t>(resolution_) * static_cast<std::size_t>(resolution_)) {
        throw std::domain_error("FieldMap: data size does not match resolution");
    }
    for (double v : data_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::domain_error("FieldMap: entries must be finite and nonnegative");
        }
    }
}

double FieldMap::max_value() const noexcept {
    return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

double FieldMap::cell_center(int index, int resolution) noexcept {
    return (index + 0.5) / (2.0 * resolution);
}

FieldMap accumulate(const ExposurePlan& plan, int resolution) {
    if (resolution < kMinResolution || resolution > kMaxResolution) {
        throw std::domain_error("accumulate: resolution must lie in [" +
                                std::to_string(kMinResolution) + ", " +
                                std::to_string(kMaxResolution) + "], got " +
                                std::to_string(resolution));
    }
    plan.validate();
    const auto R = static_cast<std::size_t>(resolution);
    std::vector<double> data(R * R, 0.0);
    std::vector<double> kx(R);
    std::vector<double> ky(R);
    for (const auto& shot : plan.shots) {
        for (std::size_t i = 0; i < R; ++i) {
            const double c = FieldMap::cell_center(static_cast<int>(i), resolution);
            kx[i] = kernel_1d({plan.photon_number, shot.ell_x}, c);
            ky[i] = kernel_1d({plan.photon_number, shot.ell_y}, c);
        }
        for (std::size_t j = 0; j < R; ++j) {
            double* row = data.data() + j * R;
            for (std::size_t i = 0; i < R; ++i) {
                row[i] += shot.dose * (kx[i] * ky[j]);
            }
        }
    }
    return FieldMap(resolution, std::move(data));
}

double exposure_at(const ExposurePlan& plan, double x, double y) {
    double total = 0.0;
    for (const auto& shot : plan.shots) {
        total += shot.dose * kernel_2d(plan.photon_number, shot.ell_x, shot.ell_y, x, y);
    }
    return total;
}

RidgeProfile ridge_profile(const ExposurePlan& plan, const std::vector<PixelPoint>& waypoints,
                           int samples_per_segment) {
    if (waypoints.size() < 2) {
        throw std::domain_error("ridge_profile: need at least 2 waypoints");
    }
    if (samples_per_segment < 2) {
        throw std::domain_error("ridge_profile: need at least 2 samples per segment");
    }
    const int N = plan.photon_number;
    RidgeProfile profile;
    double arc_start = 0.0;
    for (std::size_t s = 0; s + 1 < waypoints.size(); ++s) {
        const PixelPoint a = waypoints[s];
        const PixelPoint b = waypoints[s + 1];
        const double length = std::hypot(b.x - a.x, b.y - a.y);
        for (int k = (s == 0 ? 0 : 1); k < samples_per_segment; ++k) {
            const double t = static_cast<double>(k) / (samples_per_segment - 1);
            const double px = a.x + t * (b.x - a.x);
            const double py = a.y + t * (b.y - a.y);
            profile.arc_positions.push_back(arc_start + t * length);
            profile.values.push_back(
                exposure_at(plan, pixel_center(N, px), pixel_center(N, py)));
        }
        arc_start += length;
    }
    const auto [lo, hi] = std::minmax_element(profile.values.begin(), profile.values.end());
    profile.min_value = *lo;
    profile.max_value = *hi;
    return profile;
}

std::vector<PixelPoint> shot_centers(const ExposurePlan& plan) {
    std::vector<PixelPoint> centers;
    centers.reserve(plan.shots.size());
    for (const auto& shot : plan.shots) {
        centers.push_back({shot.ell_x, shot.ell_y});
    }
    return centers;
}

double background_penalty(const ExposurePlan& plan, const std::vector<PixelPoint>& exposed,
                          int resolution, double exclusion) {
    if (resolution < 64) {
        throw std::domain_error("background_penalty: resolution must be >= 64");
    }
    if (plan.shots.empty()) {
        return 0.0;
    }
    if (exposed.empty()) {
        throw std::domain_error("background_penalty: exposed pixel set is empty");
    }
    const FieldMap map = accumulate(plan, resolution);
    const double peak = map.max_value();
    if (peak <= 0.0) {
        return 0.0;
    }
    const int N = plan.photon_number;
    const double period = N + 1.0;
    double background = 0.0;
    for (int j = 0; j < resolution; ++j) {
        const double py = pixel_coordinate(N, FieldMap::cell_center(j, resolution));
        for (int i = 0; i < resolution; ++i) {
            const double px = pixel_coordinate(N, FieldMap::cell_center(i, resolution));
            const bool excluded = std::any_of(exposed.begin(), exposed.end(), [&](const PixelPoint& p) {
                return std::max(std::abs(wrapped_offset(px - p.x, period)),
                                std::abs(wrapped_offset(py - p.y, period))) <= exclusion;
            });
            if (!excluded) {
                background = std::max(background, map.at(i, j));
            }
        }
    }
    return background / peak;
}

int pgm_level(double value, double display_max) {
    const double scaled = std::clamp(value / display_max, 0.0, 1.0) * 65535.0;
    return static_cast<int>(std::round(scaled));
}

void write_pgm(const FieldMap& map, const std::filesystem::path& destination,
               std::optional<double> display_max) {
    double scale = display_max.value_or(map.max_value());
    if (!display_max && scale <= 0.0) {
        scale = 1.0;
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::domain_error("write_pgm: display_max must be positive");
    }
    auto out = open_for_writing(destination);
    const int R = map.resolution();
    out << "P2\n" << R << ' ' << R << "\n65535\n";
    for (int j = 0; j < R; ++j) {
        for (int i = 0; i < R; ++i) {
            if (i != 0) {
                out << ' ';
            }
            out << pgm_level(map.at(i, j), scale);
        }
        out << '\n';
    }
    finish(out, destination);
}

void write_csv(const FieldMap& map, const std::filesystem::path& destination) {
    auto out = open_for_writing(destination);
    const int R = map.resolution();
    out << "x,y,value\n";
    for (int j = 0; j < R; ++j) {
        const std::string y = format_g17(FieldMap::cell_center(j, R));
        for (int i = 0; i < R; ++i) {
            out << format_g17(FieldMap::cell_center(i, R)) << ',' << y << ','
                << format_g17(map.at(i, j)) << '\n';
        }
    }
    finish(out, destination);
}

void write_csv(const RidgeProfile& profile, const std::filesystem::path& destination) {
    auto out = open_for_writing(destination);
    out << "arc,value\n";
    for (std::size_t k = 0; k < profile.values.size(); ++k) {
        out << format_g17(profile.arc_positions[k]) << ',' << format_g17(profile.values[k]) << '\n';
    }
    finish(out, destination);
}

} // namespace qlitho
