#include "exlab/bridges.hpp"

#include <cmath>
#include <stdexcept>

#include "exlab/parallel.hpp"

namespace exlab {

namespace {

std::size_t mesh_steps(double length, double dt) {
  if (!(length > 0.0)) throw std::invalid_argument("bridge: length must be positive");
  if (!(dt > 0.0) || !(dt < length / 10.0))
    throw std::invalid_argument("bridge: dt must satisfy 0 < dt < l / 10");
  return static_cast<std::size_t>(std::llround(length / dt));
}

void fill_brownian_bridge(std::vector<double>& b, double length, Philox4x32& rng) {
  const std::size_t n = b.size() - 1;
  const double h = length / static_cast<double>(n);
  b[0] = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Remaining time before and after the step; conditioned on ending at 0.
    const double rest = length - static_cast<double>(i) * h;
    const double rest_next = rest - h;
    const double mean = b[i] * rest_next / rest;
    const double sd = std::sqrt(h * rest_next / rest);
    b[i + 1] = mean + sd * rng.normal();
  }
  b[n] = 0.0;
}

} // namespace

BridgeSample sample_brownian_bridge(double length, double dt, Philox4x32& rng) {
  const std::size_t n = mesh_steps(length, dt);
  BridgeSample out{length, std::vector<double>(n + 1)};
  fill_brownian_bridge(out.values, length, rng);
  return out;
}

BridgeSample sample_bessel3_bridge(double length, double dt, Philox4x32& rng) {
  const std::size_t n = mesh_steps(length, dt);
  std::vector<double> b1(n + 1), b2(n + 1), b3(n + 1);
  fill_brownian_bridge(b1, length, rng);
  fill_brownian_bridge(b2, length, rng);
  fill_brownian_bridge(b3, length, rng);
  BridgeSample out{length, std::vector<double>(n + 1)};
  for (std::size_t i = 0; i <= n; ++i) {
    out.values[i] = std::sqrt(b1[i] * b1[i] + b2[i] * b2[i] + b3[i] * b3[i]);
  }
  out.values.front() = 0.0;
  out.values.back() = 0.0;
  return out;
}

namespace {

std::size_t split_index(const BridgeSample& bridge, double u) {
  if (!(u > 0.0 && u <= bridge.length))
    throw std::invalid_argument("split time must lie in (0, l]");
  const std::size_t n = bridge.steps();
  const double h = bridge.mesh();
  auto idx = static_cast<std::size_t>(std::ceil(u / h));
  // Grid times idx * h map back to idx despite rounding in the division.
  if (idx > 1 && static_cast<double>(idx - 1) * h >= u) --idx;
  if (idx < 1) idx = 1;
  if (idx > n) idx = n;
  return idx;
}

} // namespace

BridgeOccupation bridge_occupation_at(const BridgeSample& bridge, double u) {
  const std::size_t idx = split_index(bridge, u);
  const std::size_t n = bridge.steps();
  const double h = bridge.mesh();
  const double level = bridge.values[idx];
  std::size_t above = 0;
  std::size_t below = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (bridge.values[i] > level) {
      ++above;
    } else if (bridge.values[i] < level) {
      ++below;
    }
  }
  BridgeOccupation out;
  out.index = idx;
  out.u = static_cast<double>(idx) * h;
  out.i_plus = static_cast<double>(above) * h;
  out.i_minus = static_cast<double>(below) * h;
  out.tie_time = static_cast<double>(n - above - below) * h;
  return out;
}

BridgeOccupation bridge_occupation(const BridgeSample& bridge, Philox4x32& rng) {
  return bridge_occupation_at(bridge, bridge.length * rng.uniform());
}

std::vector<double> vervaat(const BridgeSample& bridge, double u) {
  const std::size_t idx = split_index(bridge, u);
  const std::size_t n = bridge.steps();
  const double level = bridge.values[idx];
  std::vector<double> out(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const std::size_t src = j + idx <= n ? j + idx : j + idx - n;
    out[j] = bridge.values[src] - level;
  }
  return out;
}

double positive_occupation(const std::vector<double>& values, double mesh) {
  std::size_t above = 0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] > 0.0) ++above;
  }
  return static_cast<double>(above) * mesh;
}

std::vector<double> brownian_bridge_occupation(double length, double dt, std::size_t n,
                                               const StreamFactory& streams, unsigned workers) {
  return parallel_map(n, workers, [&](std::size_t k) {
    Philox4x32 rng = streams(k);
    const BridgeSample b = sample_brownian_bridge(length, dt, rng);
    return positive_occupation(b.values, b.mesh());
  });
}

} // namespace exlab
