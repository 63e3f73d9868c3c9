#pragma once

#include <array>
#include <cstdint>

namespace fks {

// Spatial/velocity dimension is a runtime value in 1..3.  Fixed-size triples
// keep the per-node loops branch-free; entries above the active dimension are
// zero (coordinates) or one (cell counts).
inline constexpr int kMaxDim = 3;

using Vec3 = std::array<double, 3>;
using Idx3 = std::array<int, 3>;

enum class Boundary { periodic, clamp };

} // namespace fks
