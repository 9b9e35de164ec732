#include "qlitho/cli.hpp"

#include "qlitho/deposition_kernel.hpp"
#include "qlitho/exposure_planner.hpp"
#include "qlitho/field_renderer.hpp"
#include "qlitho/plan_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace qlitho {

namespace {

namespace fs = std::filesystem;

constexpr int kDefaultResolution = 512;
constexpr int kDefaultSamples = 64;

// Raised for semantically invalid arguments; maps to exit status 2.
class ArgumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string g17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string rational_text(const Retardance& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

void require(bool condition, const std::string& message) {
    if (!condition) {
        throw ArgumentError(message);
    }
}

void check_photon_number(int n) {
    require(n >= 1, "--n must be >= 1");
}

void check_half_integer(double ell, const char* flag) {
    const double twice = 2.0 * ell;
    require(std::isfinite(ell) && std::abs(twice - std::nearbyint(twice)) <= 2e-12,
            std::string(flag) + " must be a multiple of 1/2");
}

void check_resolution(int res) {
    require(res >= kMinResolution && res <= kMaxResolution,
            "--res must lie in [" + std::to_string(kMinResolution) + ", " +
                std::to_string(kMaxResolution) + "]");
}

// Writes text to `path`, or to `out` when no path was given.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    file << text;
    file.flush();
    if (!file) {
        throw IoError("write to '" + path + "' failed");
    }
}

std::vector<PixelPoint> parse_ridge(const std::string& text) {
    std::vector<PixelPoint> points;
    std::stringstream pairs(text);
    std::string pair;
    while (std::getline(pairs, pair, ';')) {
        const auto comma = pair.find(',');
        require(comma != std::string::npos, "--ridge expects 'x,y;x,y;...'");
        try {
            points.push_back({std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))});
        } catch (const std::exception&) {
            throw ArgumentError("--ridge: cannot parse '" + pair + "'");
        }
    }
    require(points.size() >= 2, "--ridge needs at least two points");
    return points;
}

struct PlanSource {
    std::string plan_path;
    std::string mask_path;
    std::string preset;

    void add_to(CLI::App& app) {
        app.add_option("--plan", plan_path, "Exposure plan JSON");
        app.add_option("--mask", mask_path, "Pixel mask (plain PGM, maxval 255)");
        app.add_option("--preset", preset, "Built-in plan: fig2, fig3 or fig4");
    }

    void check() const {
        const int given = !plan_path.empty() + !mask_path.empty() + !preset.empty();
        require(given == 1, "exactly one of --plan, --mask, --preset is required");
        if (!preset.empty()) {
            require(preset == "fig2" || preset == "fig3" || preset == "fig4",
                    "--preset must be fig2, fig3 or fig4");
        }
    }

    // Plan plus the ridge to profile: the preset's own ridge, or a polyline
    // through the shot centers in plan order.
    std::pair<ExposurePlan, std::vector<PixelPoint>> load() const {
        if (!preset.empty()) {
            auto fig = figure_preset(preset);
            return {std::move(fig.plan), std::move(fig.ridge)};
        }
        ExposurePlan plan = plan_path.empty() ? plan_from_mask(read_mask(mask_path)) : read_plan(plan_path);
        return {plan, shot_centers(plan)};
    }
};

struct Metrics {
    RidgeProfile profile;
    double background = 0.0;

    std::string text() const {
        const double ratio = profile.max_value > 0.0 ? profile.min_value / profile.max_value : 0.0;
        std::ostringstream out;
        out << "ridge_min=" << g17(profile.min_value) << '\n'
            << "ridge_max=" << g17(profile.max_value) << '\n'
            << "ridge_min_ratio=" << g17(ratio) << '\n'
            << "background=" << g17(background) << '\n';
        return out.str();
    }
};

Metrics measure(const ExposurePlan& plan, const std::vector<PixelPoint>& ridge, int res, int samples) {
    Metrics m;
    if (ridge.size() >= 2) {
        m.profile = ridge_profile(plan, ridge, samples);
    } else if (!ridge.empty()) {
        const double v = exposure_at(plan, pixel_center(plan.photon_number, ridge[0].x),
                                     pixel_center(plan.photon_number, ridge[0].y));
        m.profile = {{0.0}, {v}, v, v};
    }
    m.background = background_penalty(plan, shot_centers(plan), res);
    return m;
}

fs::path sibling_csv(const fs::path& pgm) {
    fs::path csv = pgm;
    csv.replace_extension(".csv");
    return csv;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entangled-state lithography simulator and pattern compiler", "qlitho"};
    app.require_subcommand(1);

    int n = 0;
    double ell = 0.0;
    double lx = 0.0;
    double ly = 0.0;
    std::optional<double> x;
    std::optional<double> y;
    int res = kDefaultResolution;
    int samples = kDefaultSamples;
    std::string out_path;
    std::optional<double> display_max;
    std::string ridge_text;
    std::string figure;
    PlanSource source;

    auto* kernel1d = app.add_subcommand("kernel1d", "Sample the 1D kernel over [0, 1/2) as CSV");
    kernel1d->add_option("--n", n, "Photon number")->required();
    kernel1d->add_option("--ell", ell, "Pixel index")->required();
    kernel1d->add_option("--samples", samples, "Number of samples")->capture_default_str();
    kernel1d->add_option("--out", out_path, "Output CSV (default: stdout)");

    auto* kernel2d = app.add_subcommand("kernel2d", "Evaluate the 2D kernel at a point or on a grid");
    kernel2d->add_option("--n", n, "Photon number")->required();
    kernel2d->add_option("--lx", lx, "Pixel index along X")->required();
    kernel2d->add_option("--ly", ly, "Pixel index along Y")->required();
    kernel2d->add_option("--x", x, "X position in wavelengths");
    kernel2d->add_option("--y", y, "Y position in wavelengths");
    kernel2d->add_option("--res", res, "Grid resolution");
    kernel2d->add_option("--out", out_path, "Output CSV (default: stdout)");

    auto* expose = app.add_subcommand("expose", "Render a plan to PGM and CSV");
    source.add_to(*expose);
    expose->add_option("--res", res, "Grid resolution")->capture_default_str();
    expose->add_option("--out", out_path, "Output PGM path; the CSV goes next to it")->required();
    expose->add_option("--display-max", display_max, "Exposure mapped to white");

    auto* metrics = app.add_subcommand("metrics", "Ridge and background metrics of a plan");
    source.add_to(*metrics);
    metrics->add_option("--ridge", ridge_text, "Ridge waypoints 'x,y;x,y;...' in pixel units");
    metrics->add_option("--res", res, "Grid resolution")->capture_default_str();
    metrics->add_option("--samples", samples, "Samples per ridge segment")->capture_default_str();
    metrics->add_option("--out", out_path, "Write metrics here instead of stdout");

    auto* plates = app.add_subcommand("plates", "Birefringent plates realizing pixel index ell");
    plates->add_option("--n", n, "Photon number")->required();
    plates->add_option("--ell", ell, "Pixel index (multiple of 1/2)")->required();

    auto* counts = app.add_subcommand("counts", "Pure-state and pattern counts");
    counts->add_option("--n", n, "Photon number")->required();

    auto* repro = app.add_subcommand("repro", "Reproduce a figure: map, profile and metrics");
    repro->add_option("figure", figure, "fig2, fig3 or fig4")->required();
    repro->add_option("--out", out_path, "Output directory (default: current directory)");
    repro->add_option("--res", res, "Grid resolution")->capture_default_str();
    repro->add_option("--samples", samples, "Samples per ridge segment")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsageError;
    }

    try {
        if (kernel1d->parsed()) {
            check_photon_number(n);
            require(std::isfinite(ell), "--ell must be finite");
            require(samples >= 1, "--samples must be >= 1");
            std::ostringstream csv;
            csv << "x,value\n";
            for (int k = 0; k < samples; ++k) {
                const double xk = 0.5 * k / samples;
                csv << g17(xk) << ',' << g17(kernel_1d({n, ell}, xk)) << '\n';
            }
            emit(csv.str(), out_path, out);
        } else if (kernel2d->parsed()) {
            check_photon_number(n);
            require(std::isfinite(lx) && std::isfinite(ly), "--lx/--ly must be finite");
            require(x.has_value() == y.has_value(), "--x and --y must be given together");
            if (x) {
                emit("value=" + g17(kernel_2d(n, lx, ly, *x, *y)) + "\n", out_path, out);
            } else {
                if (kernel2d->count("--res") == 0) {
                    res = 64;
                }
                check_resolution(res);
                const ExposurePlan plan{n, {{lx, ly, 1.0}}};
                std::ostringstream csv;
                csv << "x,y,value\n";
                for (int j = 0; j < res; ++j) {
                    const double yj = FieldMap::cell_center(j, res);
                    for (int i = 0; i < res; ++i) {
                        const double xi = FieldMap::cell_center(i, res);
                        csv << g17(xi) << ',' << g17(yj) << ',' << g17(kernel_2d(n, lx, ly, xi, yj)) << '\n';
                    }
                }
                emit(csv.str(), out_path, out);
            }
        } else if (expose->parsed()) {
            source.check();
            check_resolution(res);
            if (display_max) {
                require(*display_max > 0.0 && std::isfinite(*display_max), "--display-max must be positive");
            }
            const auto [plan, ridge] = source.load();
            const FieldMap map = accumulate(plan, res);
            write_pgm(map, out_path, display_max);
            write_csv(map, sibling_csv(out_path));
            out << "wrote " << out_path << " and " << sibling_csv(out_path).string() << '\n';
        } else if (metrics->parsed()) {
            source.check();
            require(res >= 64 && res <= kMaxResolution, "--res must lie in [64, 8192] for metrics");
            require(samples >= 2, "--samples must be >= 2");
            std::optional<std::vector<PixelPoint>> ridge_override;
            if (!ridge_text.empty()) {
                ridge_override = parse_ridge(ridge_text);
            }
            auto [plan, ridge] = source.load();
            if (ridge_override) {
                ridge = *ridge_override;
            }
            emit(measure(plan, ridge, res, samples).text(), out_path, out);
        } else if (plates->parsed()) {
            check_photon_number(n);
            check_half_integer(ell, "--ell");
            const PlateBank bank = plate_bank(ell, n);
            out << "n=" << n << '\n' << "ell=" << g17(ell) << '\n';
            for (int k : bank.plates) {
                out << "plate k=" << k << " retardance=" << rational_text(bank.plate_retardance(k))
                    << " lambda\n";
            }
            if (bank.half_shift) {
                out << "plate half-shift retardance=1/" << 2 * (n + 1) << " lambda\n";
            }
            out << "total=" << rational_text(bank.total_retardance()) << " lambda\n"
                << "plates_used=" << bank.plates.size() + (bank.half_shift ? 1 : 0) << '\n'
                << "bank_size=" << plates_required(n) << '\n';
        } else if (counts->parsed()) {
            require(n >= 0, "--n must be >= 0");
            out << "pure_states=" << count_pure_states(n) << '\n'
                << "patterns=" << count_patterns(n) << '\n';
        } else if (repro->parsed()) {
            require(figure == "fig2" || figure == "fig3" || figure == "fig4",
                    "figure must be fig2, fig3 or fig4");
            check_resolution(res);
            require(res >= 64, "--res must be >= 64 for repro");
            require(samples >= 2, "--samples must be >= 2");
            const fs::path dir = out_path.empty() ? fs::path(".") : fs::path(out_path);
            const FigurePreset fig = figure_preset(figure);
            const FieldMap map = accumulate(fig.plan, res);
            const Metrics m = measure(fig.plan, fig.ridge, res, samples);

            fs::create_directories(dir);
            write_pgm(map, dir / (figure + "_map.pgm"));
            write_csv(map, dir / (figure + "_map.csv"));
            write_csv(m.profile, dir / (figure + "_profile.csv"));
            emit(m.text(), (dir / (figure + "_metrics.txt")).string(), out);
            out << m.text();
        }
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return kExitOk;
}

} // namespace qlitho
