#pragma once

#include <cstdint>
#include <string_view>

namespace rmc {

// Counter-based stream: value i of stream (seed, tag) is splitmix64(key + i * golden),
// where key mixes the seed with an FNV-1a hash of the tag. Results depend only on
// (seed, tag, index), never on call order across streams or threads.
class Stream {
public:
    Stream(std::uint64_t seed, std::string_view tag, std::uint64_t sub = 0);

    std::uint64_t next();
    // Uniform in [0, bound), by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound);

    static std::uint64_t mix(std::uint64_t x);
    static std::uint64_t fnv1a(std::string_view s);

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace rmc
