#pragma once
#include <cstdint>
#include <random>

namespace pathsource {

// Identifies one reproducible random stream. Equal (master_seed, stream_id)
// pairs produce bit-identical draws within one build; distinct stream_ids
// give statistically independent streams.
struct RngContract {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

// splitmix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Substream derivation: the two ids are mixed through splitmix64 twice so
// that neighboring stream_ids land far apart in seed space.
inline std::uint64_t mix_stream(const RngContract& rng) {
    return splitmix64(splitmix64(rng.master_seed) ^ splitmix64(~rng.stream_id));
}

inline std::mt19937_64 make_engine(const RngContract& rng) {
    return std::mt19937_64{mix_stream(rng)};
}

} // namespace pathsource
