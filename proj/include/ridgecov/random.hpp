#pragma once

#include <cstdint>
#include <random>

namespace ridgecov {

/// Every stochastic operation takes one of these explicitly; nothing reads global state.
using Rng = std::mt19937_64;

/// Draws a fresh seed for an independent child stream.
inline std::uint64_t child_seed(Rng& rng) { return rng(); }

}  // namespace ridgecov
