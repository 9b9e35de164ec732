#include "qlitho/exposure_planner.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qlitho {

namespace {

bool is_half_integer_multiple(double value) {
    const double twice = 2.0 * value;
    return std::isfinite(value) && std::abs(twice - std::nearbyint(twice)) <= 2e-12;
}

void require_positive_n(int photon_number, const char* where) {
    if (photon_number < 1) {
        throw std::domain_error(std::string(where) + ": photon number must be >= 1, got " +
                                std::to_string(photon_number));
    }
}

ExposurePlan unit_plan(std::initializer_list<std::pair<int, int>> pixels) {
    ExposurePlan plan{6, {}};
    for (const auto& [lx, ly] : pixels) {
        plan.shots.push_back({static_cast<double>(lx), static_cast<double>(ly), 1.0});
    }
    return plan;
}

} // namespace

void ExposurePlan::validate() const {
    require_positive_n(photon_number, "ExposurePlan");
    for (std::size_t i = 0; i < shots.size(); ++i) {
        const auto& shot = shots[i];
        if (!std::isfinite(shot.dose) || shot.dose < 0.0) {
            throw std::domain_error("ExposurePlan: shot " + std::to_string(i) +
                                    " has an invalid dose");
        }
        if (!is_half_integer_multiple(shot.ell_x) || !is_half_integer_multiple(shot.ell_y)) {
            throw std::domain_error("ExposurePlan: shot " + std::to_string(i) +
                                    " has a pixel index that is not a multiple of 1/2");
        }
    }
}

double wrap_pixel_index(double ell, int photon_number) {
    const double period = photon_number + 1.0;
    double reduced = std::fmod(ell - 1.0, period);
    if (reduced < 0.0) {
        reduced += period;
    }
    return reduced + 1.0;
}

PixelMask::PixelMask(int photon_number)
    : PixelMask(photon_number,
                std::vector<double>(static_cast<std::size_t>((photon_number + 1) * (photon_number + 1)), 0.0)) {}

PixelMask::PixelMask(int photon_number, std::vector<double> values)
    : photon_number_(photon_number), values_(std::move(values)) {
    require_positive_n(photon_number_, "PixelMask");
    const auto side = static_cast<std::size_t>(photon_number_ + 1);
    if (values_.size() != side * side) {
        throw std::domain_error("PixelMask: expected " + std::to_string(side * side) +
                                " values, got " + std::to_string(values_.size()));
    }
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::domain_error("PixelMask: values must lie in [0, 1]");
        }
    }
}

std::size_t PixelMask::index(int ell_x, int ell_y) const {
    if (ell_x < 1 || ell_x > side() || ell_y < 1 || ell_y > side()) {
        throw std::out_of_range("PixelMask: pixel (" + std::to_string(ell_x) + ", " +
                                std::to_string(ell_y) + ") outside the grid");
    }
    return static_cast<std::size_t>((ell_y - 1) * side() + (ell_x - 1));
}

double PixelMask::at(int ell_x, int ell_y) const {
    return values_[index(ell_x, ell_y)];
}

void PixelMask::set(int ell_x, int ell_y, double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::domain_error("PixelMask: values must lie in [0, 1]");
    }
    values_[index(ell_x, ell_y)] = value;
}

ExposurePlan plan_from_mask(const PixelMask& mask) {
    ExposurePlan plan{mask.photon_number(), {}};
    for (int ly = 1; ly <= mask.side(); ++ly) {
        for (int lx = 1; lx <= mask.side(); ++lx) {
            const double value = mask.at(lx, ly);
            if (value > 0.0) {
                plan.shots.push_back({static_cast<double>(lx), static_cast<double>(ly), value});
            }
        }
    }
    return plan;
}

PixelMask mask_from_plan(const ExposurePlan& plan) {
    plan.validate();
    PixelMask mask(plan.photon_number);
    for (const auto& shot : plan.shots) {
        const double lx = wrap_pixel_index(shot.ell_x, plan.photon_number);
        const double ly = wrap_pixel_index(shot.ell_y, plan.photon_number);
        if (lx != std::nearbyint(lx) || ly != std::nearbyint(ly)) {
            throw std::domain_error("mask_from_plan: half-pixel shots have no mask cell");
        }
        const int ix = static_cast<int>(lx);
        const int iy = static_cast<int>(ly);
        const double total = mask.at(ix, iy) + shot.dose;
        if (total > 1.0) {
            throw std::domain_error("mask_from_plan: summed dose exceeds 1 at pixel (" +
                                    std::to_string(ix) + ", " + std::to_string(iy) + ")");
        }
        mask.set(ix, iy, total);
    }
    return mask;
}

ExposurePlan preset_fig2() {
    return unit_plan({{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 4}, {4, 4},
                      {5, 4}, {5, 5}, {5, 6}, {5, 7}, {6, 4}});
}

ExposurePlan preset_fig3() {
    return unit_plan({{2, 1}, {2, 2}, {5, 7}, {2, 3}, {5, 6}, {3, 4}, {4, 5}});
}

ExposurePlan preset_fig4() {
    return ExposurePlan{6,
                        {{2.0, 1.0, 1.0},
                         {2.0, 2.0, 1.0},
                         {5.0, 7.0, 1.0},
                         {2.0, 3.0, 0.83},
                         {5.0, 6.0, 0.83},
                         {3.0, 4.0, 0.66},
                         {4.0, 5.0, 0.66},
                         {2.5, 3.5, 0.66},
                         {3.5, 4.5, 0.66},
                         {4.5, 5.5, 0.66}}};
}

FigurePreset figure_preset(std::string_view name) {
    // The diagonal ridge runs between the first and last diagonal pixels;
    // the profile beyond them only shows the pattern's end fall-off.
    const std::vector<PixelPoint> diagonal{{2, 3}, {3, 4}, {4, 5}, {5, 6}};
    if (name == "fig2") {
        return {"fig2", preset_fig2(),
                {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 4}, {4, 4}, {5, 4}, {5, 5}, {5, 6}, {5, 7}}};
    }
    if (name == "fig3") {
        return {"fig3", preset_fig3(), diagonal};
    }
    if (name == "fig4") {
        return {"fig4", preset_fig4(), diagonal};
    }
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "' (expected fig2, fig3 or fig4)");
}

Retardance PlateBank::plate_retardance(int k) const {
    return Retardance(1LL << k, photon_number + 1);
}

Retardance PlateBank::total_retardance() const {
    Retardance total(0);
    for (int k : plates) {
        total += plate_retardance(k);
    }
    if (half_shift) {
        total += Retardance(1, 2LL * (photon_number + 1));
    }
    return total;
}

PlateBank plate_bank(double ell, int photon_number) {
    require_positive_n(photon_number, "plate_bank");
    if (!is_half_integer_multiple(ell)) {
        throw std::domain_error("plate_bank: ell must be a multiple of 1/2, got " +
                                std::to_string(ell));
    }
    // Work in half steps: 2 ell reduced modulo 2(N+1).
    const long long half_period = 2LL * (photon_number + 1);
    long long half_steps = static_cast<long long>(std::llround(2.0 * ell)) % half_period;
    if (half_steps < 0) {
        half_steps += half_period;
    }
    PlateBank bank{photon_number, {}, (half_steps % 2) != 0};
    auto whole = static_cast<unsigned long long>(half_steps / 2);
    for (int k = 0; whole != 0; ++k, whole >>= 1) {
        if (whole & 1ULL) {
            bank.plates.push_back(k);
        }
    }
    return bank;
}

int plates_required(int photon_number) {
    require_positive_n(photon_number, "plates_required");
    return std::bit_width(static_cast<unsigned long long>(photon_number));
}

BigInt count_pure_states(int photon_number) {
    if (photon_number < 0) {
        throw std::domain_error("count_pure_states: photon number must be >= 0");
    }
    const BigInt n = photon_number;
    return (n + 1) * (n + 2) * (n + 3) / 6;
}

BigInt count_patterns(int photon_number) {
    if (photon_number < 0) {
        throw std::domain_error("count_patterns: photon number must be >= 0");
    }
    const auto side = static_cast<unsigned>(photon_number) + 1U;
    BigInt one = 1;
    return one << (side * side);
}

} // namespace qlitho
