#pragma once

#include <cstdint>
#include <random>

namespace paracool {

/// Deterministic random stream addressed by (seed, stream, substream).
///
/// Each address seeds an independent 64-bit Mersenne Twister through
/// std::seed_seq, so trajectory k of an ensemble draws the same numbers no
/// matter which worker runs it or in what order.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

    /// Standard normal draw.
    double normal();
    /// Uniform draw on [0, 1).
    double uniform();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::uint64_t substream() const { return substream_; }

    /// Child stream sharing seed and stream index.
    RngStream substream_of(std::uint64_t substream) const { return RngStream(seed_, stream_, substream); }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t substream_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace paracool
