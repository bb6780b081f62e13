#include <chrono>
#include <stdexcept>

#include "ocl/cluster.hpp"

namespace ocl {

SweepAxis parse_sweep_axis(const std::string& s) {
    if (s == "n") return SweepAxis::n;
    if (s == "s") return SweepAxis::s;
    if (s == "k") return SweepAxis::k;
    throw std::invalid_argument("unknown sweep axis '" + s + "'");
}

std::vector<EfficiencyPoint> efficiency_bench(SweepAxis axis, const std::vector<std::size_t>& values,
                                              std::size_t n, std::size_t s, std::size_t k,
                                              std::size_t values_per_attribute, std::size_t repeats,
                                              std::uint64_t seed) {
    if (repeats == 0) throw std::invalid_argument("repeats must be positive");
    std::vector<EfficiencyPoint> out;
    for (std::size_t v : values) {
        EfficiencyPoint p{n, s, k, 0, 0};
        if (axis == SweepAxis::n) p.n = v;
        if (axis == SweepAxis::s) p.s = v;
        if (axis == SweepAxis::k) p.k = v;
        for (std::size_t rep = 0; rep < repeats; ++rep) {
            const Dataset d = synthesize(p.n, p.s, p.k, values_per_attribute, seed + rep);
            FitConfig cfg;
            cfg.k = p.k;
            cfg.seed = seed + rep;
            const auto t0 = std::chrono::steady_clock::now();
            const auto res = fit_ocl(d, cfg);
            p.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            p.total_inner += static_cast<double>(res.trace.total_inner);
        }
        p.seconds /= static_cast<double>(repeats);
        p.total_inner /= static_cast<double>(repeats);
        out.push_back(p);
    }
    return out;
}

}  // namespace ocl
