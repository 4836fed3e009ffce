#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ghznet {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or invariant-violating topology input.
class TopologyError : public Error {
public:
    explicit TopologyError(const std::string& what) : Error(what) {}
};

// No routing solution exists for the requested instance.
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& what) : Error(what) {}
};

// A protocol run exceeded its timeslot budget.
class TimeslotLimitError : public Error {
public:
    explicit TimeslotLimitError(const std::string& what) : Error(what) {}
};

// Bad arguments to an analysis or aggregation routine.
class AnalysisError : public Error {
public:
    explicit AnalysisError(const std::string& what) : Error(what) {}
};

// SplitMix64 finalizer. Bijective, passes the usual avalanche tests; used as
// the building block for all deterministic seeding and per-edge sampling.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stable integer hash chain: order-sensitive, platform-independent.
constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept {
    return splitmix64(seed ^ splitmix64(value + 0x9e3779b97f4a7c15ULL));
}

// FNV-1a over bytes; used for stable edge identities and file digests.
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Map 64 random bits to a double in [0, 1) with full 53-bit resolution.
constexpr double unit_double(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Shortest round-trip decimal representation; locale-independent.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace ghznet
