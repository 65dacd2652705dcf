#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace doflab {

// Seeded generator with a fully specified integer-sampling path. mt19937_64
// itself is portable, but std::uniform_int_distribution is not; we do the
// rejection sampling ourselves so identical seeds give identical streams on
// every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform integer in [lo, hi], inclusive.
    long uniform_int(long lo, long hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<long>(eng_());  // full 64-bit range
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return lo + static_cast<long>(v % span);
    }

    // Derive an independent child seed; used to give parallel trials
    // order-independent streams.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        // splitmix64 finalizer over seed+index
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace doflab
