#include "qlitho/plan_io.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qlitho {

namespace {

using nlohmann::json;

std::string slurp(const std::filesystem::path& source) {
    std::ifstream in(source, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + source.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void dump(const std::string& text, const std::filesystem::path& destination) {
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + destination.string() + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("write to '" + destination.string() + "' failed");
    }
}

// Next whitespace-separated token of a PNM stream, skipping '#' comments.
std::string next_token(std::istream& in) {
    std::string token;
    char c = 0;
    while (in.get(c)) {
        if (c == '#') {
            std::string comment;
            std::getline(in, comment);
            if (!token.empty()) {
                break;
            }
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!token.empty()) {
                break;
            }
            continue;
        }
        token.push_back(c);
    }
    if (token.empty()) {
        throw std::invalid_argument("PGM: unexpected end of data");
    }
    return token;
}

long parse_long(const std::string& token) {
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(token, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("PGM: expected an integer, got '" + token + "'");
    }
    if (used != token.size()) {
        throw std::invalid_argument("PGM: expected an integer, got '" + token + "'");
    }
    return value;
}

} // namespace

std::string plan_to_json(const ExposurePlan& plan) {
    json shots = json::array();
    for (const auto& shot : plan.shots) {
        shots.push_back({{"lx", shot.ell_x}, {"ly", shot.ell_y}, {"dose", shot.dose}});
    }
    json doc = {{"n_photons", plan.photon_number}, {"shots", std::move(shots)}};
    return doc.dump(2) + "\n";
}

ExposurePlan plan_from_json(const std::string& text) {
    ExposurePlan plan;
    try {
        const json doc = json::parse(text);
        plan.photon_number = doc.at("n_photons").get<int>();
        for (const auto& entry : doc.at("shots")) {
            plan.shots.push_back({entry.at("lx").get<double>(), entry.at("ly").get<double>(),
                                  entry.at("dose").get<double>()});
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("plan JSON: ") + e.what());
    }
    try {
        plan.validate();
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(std::string("plan JSON: ") + e.what());
    }
    return plan;
}

void write_plan(const ExposurePlan& plan, const std::filesystem::path& destination) {
    dump(plan_to_json(plan), destination);
}

ExposurePlan read_plan(const std::filesystem::path& source) {
    return plan_from_json(slurp(source));
}

std::string mask_to_pgm(const PixelMask& mask) {
    std::ostringstream out;
    const int side = mask.side();
    out << "P2\n" << side << ' ' << side << "\n255\n";
    for (int ly = 1; ly <= side; ++ly) {
        for (int lx = 1; lx <= side; ++lx) {
            if (lx != 1) {
                out << ' ';
            }
            out << std::lround(mask.at(lx, ly) * 255.0);
        }
        out << '\n';
    }
    return out.str();
}

PixelMask mask_from_pgm(const std::string& text) {
    std::istringstream in(text);
    if (next_token(in) != "P2") {
        throw std::invalid_argument("PGM: expected plain 'P2' magic");
    }
    const long width = parse_long(next_token(in));
    const long height = parse_long(next_token(in));
    const long maxval = parse_long(next_token(in));
    if (width != height || width < 2) {
        throw std::invalid_argument("PGM: mask must be square with side >= 2");
    }
    if (maxval != 255) {
        throw std::invalid_argument("PGM: mask maxval must be 255");
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(width * height));
    for (long k = 0; k < width * height; ++k) {
        const long level = parse_long(next_token(in));
        if (level < 0 || level > maxval) {
            throw std::invalid_argument("PGM: sample out of range");
        }
        values.push_back(static_cast<double>(level) / 255.0);
    }
    return PixelMask(static_cast<int>(width - 1), std::move(values));
}

void write_mask(const PixelMask& mask, const std::filesystem::path& destination) {
    dump(mask_to_pgm(mask), destination);
}

PixelMask read_mask(const std::filesystem::path& source) {
    return mask_from_pgm(slurp(source));
}

} // namespace qlitho
