#pragma once

#include <cstdint>

namespace wfnn::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Purpose tags keying independent sample streams.
enum class Tag : std::uint64_t {
    BulkMain = 1,
    BulkT1,
    BulkT2,
    AnnulusT1,
    AnnulusT2,
    Glue,
    Eval,
    Shuffle,
    InitChart0,
    InitChart1,
    Pretrain,
    Export,
};

// Counter-based generator: the k-th draw of the stream identified by
// (seed, epoch, tag) is a pure function of its key, so sample streams are
// reproducible regardless of evaluation order.
inline std::uint64_t bits(std::uint64_t seed, std::uint64_t epoch, Tag tag,
                          std::uint64_t index) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (epoch * kGolden));
    h = splitmix64(h ^ static_cast<std::uint64_t>(tag));
    h = splitmix64(h ^ index);
    return h;
}

// Uniform double in [0, 1), 53 random bits.
inline double uniform(std::uint64_t seed, std::uint64_t epoch, Tag tag,
                      std::uint64_t index) {
    return static_cast<double>(bits(seed, epoch, tag, index) >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by fixed-point multiply (n << 2^64).
inline std::uint64_t below(std::uint64_t seed, std::uint64_t epoch, Tag tag,
                           std::uint64_t index, std::uint64_t n) {
    const std::uint64_t x = bits(seed, epoch, tag, index);
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x) * n) >> 64);
}

} // namespace wfnn::rng
