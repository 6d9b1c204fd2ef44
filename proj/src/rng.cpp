#include "paracool/rng.hpp"

namespace paracool {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(substream), hi(substream), 0x9e3779b9u};
    return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream)
    : seed_(seed), stream_(stream), substream_(substream), engine_(make_engine(seed, stream, substream)) {}

double RngStream::normal() { return normal_(engine_); }

double RngStream::uniform() { return uniform_(engine_); }

}  // namespace paracool
