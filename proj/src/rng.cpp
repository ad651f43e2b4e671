#include "rmc/rng.hpp"

namespace rmc {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
}

std::uint64_t Stream::mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t Stream::fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

Stream::Stream(std::uint64_t seed, std::string_view tag, std::uint64_t sub)
    : key_(mix(mix(seed) ^ fnv1a(tag)) ^ mix(sub + kGolden)) {}

std::uint64_t Stream::next() { return mix(key_ + (++counter_) * kGolden); }

std::uint64_t Stream::below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t(0)) / bound);
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return x % bound;
}

}  // namespace rmc
