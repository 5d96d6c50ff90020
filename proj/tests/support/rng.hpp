#ifndef PRUNECEL_TESTS_RNG_HPP
#define PRUNECEL_TESTS_RNG_HPP

#include <cstdint>

namespace testsupport {

// splitmix64: deterministic across platforms and standard libraries
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint32_t below(std::uint32_t n) { return n == 0 ? 0 : static_cast<std::uint32_t>(next() % n); }

    double unit() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }

    bool chance(double p) { return unit() < p; }
};

}  // namespace testsupport

#endif
