#pragma once
// File and RNG plumbing shared by the solver trace, the regularization
// path and the CLI: deterministic double formatting, atomic file writes,
// and a portable seeded gaussian generator (Box-Muller over mt19937_64,
// so outputs are bit-identical across standard library implementations).

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "mista/operators.hpp"

namespace mista {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double x);

// Writes via a temp file in the same directory, then renames into place.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Uniform draw in (0, 1), standard normal vector.
double uniform01(std::mt19937_64& rng);
Vec gaussian_vector(std::size_t n, std::uint64_t seed);

}  // namespace mista
