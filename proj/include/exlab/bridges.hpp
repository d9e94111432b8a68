#pragma once

#include <cstddef>
#include <vector>

#include "exlab/rng.hpp"

namespace exlab {

/// A path pinned at 0 at both ends on the uniform mesh t_i = i * l / n.
struct BridgeSample {
  double length = 0.0;
  std::vector<double> values; ///< n + 1 mesh values, values.front() == values.back() == 0

  std::size_t steps() const { return values.size() - 1; }
  double mesh() const { return length / static_cast<double>(steps()); }
};

/// Occupation of a bridge relative to its value at a split time.
///
/// Mesh cells are classified by their left endpoint. The cell whose left
/// endpoint is the split point (or the origin, for a split at l) ties with
/// the level and is counted in neither side; its length is `tie_time`.
struct BridgeOccupation {
  double u = 0.0;        ///< split time snapped up to the mesh
  std::size_t index = 0; ///< mesh index of the split, in [1, n]
  double i_plus = 0.0;
  double i_minus = 0.0;
  double tie_time = 0.0;
};

/// Standard Brownian bridge 0 -> 0 of length l by the conditioned-increment
/// recursion on n = round(l / dt) steps.
BridgeSample sample_brownian_bridge(double length, double dt, Philox4x32& rng);

/// Bessel(3) bridge (Brownian excursion of length l) as the Euclidean norm of
/// three independent Brownian bridges.
BridgeSample sample_bessel3_bridge(double length, double dt, Philox4x32& rng);

/// Draws U uniform on (0, l) and measures the occupation above/below value(U).
BridgeOccupation bridge_occupation(const BridgeSample& bridge, Philox4x32& rng);

/// Occupation relative to the value at a given split time u in (0, l].
BridgeOccupation bridge_occupation_at(const BridgeSample& bridge, double u);

/// Vervaat transform: cyclic shift of the path by the split time u (snapped to
/// the mesh), recentred at the value there. Returns signed mesh values.
std::vector<double> vervaat(const BridgeSample& bridge, double u);

/// Time a mesh path spends strictly above 0 (left-endpoint cells).
double positive_occupation(const std::vector<double>& values, double mesh);

/// Positive occupation times of n independent Brownian bridges; bridge k
/// uses substream k.
std::vector<double> brownian_bridge_occupation(double length, double dt, std::size_t n,
                                               const StreamFactory& streams, unsigned workers);

} // namespace exlab
