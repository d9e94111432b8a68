#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

namespace exlab {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
///
/// A stream is identified by (seed, domain, index). The key holds the seed,
/// the upper counter words hold (index, domain) and the lower two words count
/// blocks, so distinct triples never share a block.
class Philox4x32 {
public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint32_t domain, std::uint32_t index)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        counter_{0, 0, index, domain} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (pos_ >= 4) refill();
    const std::uint64_t lo = buffer_[pos_];
    const std::uint64_t hi = buffer_[pos_ + 1];
    pos_ += 2;
    return lo | (hi << 32);
  }

  /// Uniform on the open interval (0, 1) with 53 bits of resolution.
  double uniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return normal_(*this); }
  double exponential(double rate) { return exponential_(*this) / rate; }

  /// Ten rounds of the Philox bijection; exposed for known-answer tests.
  static Block encrypt(Block ctr, Key key);

private:
  void refill() {
    buffer_ = encrypt(counter_, key_);
    if (++counter_[0] == 0) ++counter_[1];
    pos_ = 0;
  }

  Key key_;
  Block counter_;
  Block buffer_{};
  unsigned pos_ = 4;
  boost::random::normal_distribution<double> normal_{};
  boost::random::exponential_distribution<double> exponential_{};
};

inline Philox4x32::Block Philox4x32::encrypt(Block ctr, Key key) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

/// Factory for the substreams of one experiment. Each logical sampling task
/// (a leg, a bridge, a CIR run) owns the stream at its index.
struct StreamFactory {
  std::uint64_t seed = 1;
  std::uint32_t domain = 0;

  Philox4x32 operator()(std::uint64_t index) const {
    return Philox4x32(seed, domain, static_cast<std::uint32_t>(index));
  }
  StreamFactory with_domain(std::uint32_t d) const { return {seed, d}; }
};

} // namespace exlab
