#include "qlitho/exposure_planner.hpp"
#include "qlitho/field_renderer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace qlitho {

namespace {

// Sweeps stop early within a stage once no dose moves by more than this.
constexpr double kDoseTolerance = 1e-12;
constexpr int kMaxSweepsPerStage = 40;
// A move must lower max |E - 1| by more than this to be taken.
constexpr double kAcceptMargin = 1e-14;

// Continuation schedule: even p-norms of (E - 1) over the ridge samples,
// sharpening towards the max norm, which is the final stage (nullopt).
const std::vector<std::optional<int>>& stages() {
    static const std::vector<std::optional<int>> schedule{2, 4, 8, 16, 32, 64, 128, 256, 512, 1024,
                                                          std::nullopt};
    return schedule;
}

// max_s |background_s + dose * kernel_s - 1|, or the scaled p-norm
// max * (mean (r_s/max)^p)^(1/p) of the same residuals.
double residual_norm(const std::vector<double>& background, const std::vector<double>& kernel, double dose,
                     std::optional<int> p) {
    double worst = 0.0;
    for (std::size_t s = 0; s < background.size(); ++s) {
        worst = std::max(worst, std::abs(background[s] + dose * kernel[s] - 1.0));
    }
    if (!p || worst == 0.0) {
        return worst;
    }
    double mean = 0.0;
    for (std::size_t s = 0; s < background.size(); ++s) {
        mean += std::pow((background[s] + dose * kernel[s] - 1.0) / worst, *p);
    }
    mean /= static_cast<double>(background.size());
    return worst * std::pow(mean, 1.0 / *p);
}

// Golden-section search of a convex function on [lo, hi]; the endpoints are
// candidates too, since the interior iterates never reach them.
template <typename F>
double golden_section_minimum(F&& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int iter = 0; iter < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(b)); ++iter) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    double best = fc <= fd ? c : d;
    double best_value = std::min(fc, fd);
    for (double end : {lo, hi}) {
        const double value = f(end);
        if (value < best_value) {
            best = end;
            best_value = value;
        }
    }
    return best;
}

} // namespace

DoseOptimizationResult optimize_doses(const ExposurePlan& plan,
                                      const DoseOptimizationOptions& options) {
    plan.validate();
    if (options.ridge.size() < 2) {
        throw std::domain_error("optimize_doses: ridge needs at least 2 waypoints");
    }
    if (options.free.size() != plan.shots.size()) {
        throw std::domain_error("optimize_doses: one free flag per shot required");
    }
    if (std::none_of(options.free.begin(), options.free.end(), [](bool f) { return f; })) {
        throw std::domain_error("optimize_doses: no free doses");
    }
    if (!(options.dose_min >= 0.0 && options.dose_min <= options.dose_max)) {
        throw std::domain_error("optimize_doses: dose bounds must satisfy 0 <= lo <= hi");
    }
    if (options.max_iterations < 0) {
        throw std::domain_error("optimize_doses: max_iterations must be >= 0");
    }

    // Unit-dose kernel of every shot sampled along the ridge.
    std::vector<std::vector<double>> kernels;
    kernels.reserve(plan.shots.size());
    for (const auto& shot : plan.shots) {
        const ExposurePlan single{plan.photon_number, {{shot.ell_x, shot.ell_y, 1.0}}};
        kernels.push_back(ridge_profile(single, options.ridge, options.samples_per_segment).values);
    }
    const std::size_t samples = kernels.front().size();

    DoseOptimizationResult result{plan, {}};
    auto& shots = result.plan.shots;

    std::vector<double> exposure(samples, 0.0);
    for (std::size_t i = 0; i < shots.size(); ++i) {
        for (std::size_t s = 0; s < samples; ++s) {
            exposure[s] += shots[i].dose * kernels[i][s];
        }
    }
    double current = 0.0;
    for (double e : exposure) {
        current = std::max(current, std::abs(e - 1.0));
    }
    result.objective_history.push_back(current);

    std::vector<double> background(samples);
    int sweeps = 0;
    for (const auto& stage : stages()) {
        for (int stage_sweep = 0; stage_sweep < kMaxSweepsPerStage && sweeps < options.max_iterations;
             ++stage_sweep, ++sweeps) {
            double largest_move = 0.0;
            for (std::size_t i = 0; i < shots.size(); ++i) {
                if (!options.free[i]) {
                    continue;
                }
                const auto& kernel = kernels[i];
                for (std::size_t s = 0; s < samples; ++s) {
                    background[s] = exposure[s] - shots[i].dose * kernel[s];
                }
                const double candidate = golden_section_minimum(
                    [&](double dose) { return residual_norm(background, kernel, dose, stage); },
                    options.dose_min, options.dose_max);
                // Every stage, surrogate or not, only takes moves that lower
                // the true objective.
                const double value = residual_norm(background, kernel, candidate, std::nullopt);
                if (candidate != shots[i].dose && value < current - kAcceptMargin) {
                    largest_move = std::max(largest_move, std::abs(candidate - shots[i].dose));
                    shots[i].dose = candidate;
                    for (std::size_t s = 0; s < samples; ++s) {
                        exposure[s] = background[s] + candidate * kernel[s];
                    }
                    current = value;
                }
            }
            result.objective_history.push_back(current);
            if (largest_move <= kDoseTolerance) {
                ++sweeps;
                break;
            }
        }
    }
    return result;
}

} // namespace qlitho
