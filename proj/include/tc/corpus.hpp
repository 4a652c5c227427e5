// SPDX-License-Identifier: Apache-2.0
//
// Random test domains. Seeds come from TC_SEED when set.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tc/domain.hpp"
#include "tc/lattice.hpp"

namespace tc {

/// TC_SEED from the environment, or `fallback`.
std::uint64_t corpus_seed(std::uint64_t fallback = 20240611);

/// Convex hull of `points` random lattice points in [-range, range]^2,
/// retried until it is a proper polygon.
RationalPolygon random_lattice_polygon(std::mt19937_64& rng, std::int64_t range = 20, int points = 8);

std::vector<RationalPolygon> lattice_polygon_corpus(std::size_t count, std::uint64_t seed, std::int64_t range = 20);

/// Salient cone with generator entries in [-range, range].
DualCone random_cone(std::mt19937_64& rng, std::int64_t range = 50);

}  // namespace tc
