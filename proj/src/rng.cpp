#include "ocl/rng.hpp"

#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace ocl {

std::size_t Rng::uniform_index(std::size_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_index: empty range");
    const std::uint64_t b = bound;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % b;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % b);
}

std::vector<std::size_t> Rng::sample_distinct(std::size_t n, std::size_t k) {
    if (k > n) throw std::invalid_argument("sample_distinct: k exceeds n");
    std::vector<std::size_t> out;
    out.reserve(k);
    if (k * 4 >= n) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + uniform_index(n - i);
            std::swap(all[i], all[j]);
            out.push_back(all[i]);
        }
        return out;
    }
    std::unordered_set<std::size_t> seen;
    while (out.size() < k) {
        std::size_t j = uniform_index(n);
        if (seen.insert(j).second) out.push_back(j);
    }
    return out;
}

}  // namespace ocl
