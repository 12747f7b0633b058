#pragma once

#include <cstdint>

namespace seplab {

// SplitMix64 generator. Chosen because the whole pipeline needs streams that are a
// pure function of (master seed, replicate index, purpose): any replicate can then be
// regenerated in isolation and results cannot depend on thread scheduling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound); rejection keeps it unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        for (;;) {
            const std::uint64_t x = next();
            if (x < limit || limit == 0) return x % bound;
        }
    }

private:
    std::uint64_t state_;
};

// Purpose tags keep the per-replicate streams for different uses disjoint.
enum class StreamPurpose : std::uint64_t {
    graph_sample = 1,
    arc_order = 2,
    pilot_sample = 3,
    stein_sample = 4,
};

// Stateless stream derivation: hash-combines (seed, purpose, replicate) through the
// SplitMix64 finalizer so neighbouring replicates start far apart.
inline std::uint64_t derive_stream(std::uint64_t seed, StreamPurpose purpose,
                                   std::uint64_t replicate) {
    SplitMix64 h(seed ^ (static_cast<std::uint64_t>(purpose) * 0xD1B54A32D192ED03ULL));
    h.next();
    SplitMix64 g(h.next() + replicate * 0x9E3779B97F4A7C15ULL);
    g.next();
    return g.next();
}

}  // namespace seplab
