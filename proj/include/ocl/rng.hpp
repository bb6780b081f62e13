#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ocl {

// Portable random source: the engine is fully specified by the standard, and
// the derived draws below avoid the implementation-defined std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, bound); bound must be positive.
    std::size_t uniform_index(std::size_t bound);

    // Uniform real in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices drawn from [0, n), in draw order.
    std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k);

    // k indices in random order whose rows differ pairwise under same(i, j); rows equal
    // to an earlier pick are skipped and only used once the distinct rows run out.
    template <typename Same>
    std::vector<std::size_t> sample_distinct_rows(std::size_t n, std::size_t k, Same same) {
        std::vector<std::size_t> perm(n), out, skipped;
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (std::size_t i = 0; i < n && out.size() < k; ++i) {
            std::swap(perm[i], perm[i + uniform_index(n - i)]);
            const std::size_t c = perm[i];
            bool dup = false;
            for (std::size_t p : out) dup = dup || same(p, c);
            (dup ? skipped : out).push_back(c);
        }
        for (std::size_t i = 0; out.size() < k && i < skipped.size(); ++i) out.push_back(skipped[i]);
        return out;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ocl
