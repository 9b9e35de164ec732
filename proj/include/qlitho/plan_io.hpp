// plan_io.hpp
// ExposurePlan as JSON and PixelMask as plain PGM (P2, maxval 255).
//
//   {"n_photons": 6, "shots": [{"lx": 2, "ly": 1, "dose": 1.0}, ...]}

#pragma once

#include "qlitho/exposure_planner.hpp"
#include "qlitho/io_error.hpp"

#include <filesystem>
#include <string>

namespace qlitho {

std::string plan_to_json(const ExposurePlan& plan);
/// Throws std::invalid_argument on malformed JSON or schema violations.
ExposurePlan plan_from_json(const std::string& text);

void write_plan(const ExposurePlan& plan, const std::filesystem::path& destination);
ExposurePlan read_plan(const std::filesystem::path& source);

/// Entries are stored as round(value * 255).
std::string mask_to_pgm(const PixelMask& mask);
/// Width and height must be equal; N = width - 1. Value = level / 255.
PixelMask mask_from_pgm(const std::string& text);

void write_mask(const PixelMask& mask, const std::filesystem::path& destination);
PixelMask read_mask(const std::filesystem::path& source);

} // namespace qlitho
