#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

#include "ocl/cluster.hpp"

namespace ocl {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t count_effective(const Partition& q) {
    std::size_t c = 0;
    for (auto s : cluster_sizes(q)) c += s > 0;
    return c;
}

// Profile whose cluster m is a point mass on the values of sample seeds[m].
ClusterProfile seed_profile(const Dataset& d, const std::vector<std::size_t>& seeds) {
    Partition q;
    q.k = seeds.size();
    q.assignment.assign(d.n, 0);
    ClusterProfile p = compute_profile(d, q);
    std::fill(p.counts.begin(), p.counts.end(), 0u);
    std::fill(p.prob.begin(), p.prob.end(), 0.0);
    for (std::size_t m = 0; m < seeds.size(); ++m) {
        p.sizes[m] = 1;
        for (std::size_t r = 0; r < d.num_categorical(); ++r) {
            const std::size_t j = m * p.width + p.offset[r] + d.code(seeds[m], r);
            p.counts[j] = 1;
            p.prob[j] = 1.0;
        }
    }
    return p;
}

}  // namespace

std::vector<std::size_t> seed_rows(const Dataset& d, std::size_t k, Rng& rng) {
    const std::size_t s = d.num_categorical();
    return rng.sample_distinct_rows(d.n, k, [&](std::size_t a, std::size_t b) {
        return std::equal(d.codes.begin() + a * s, d.codes.begin() + (a + 1) * s, d.codes.begin() + b * s);
    });
}

FitResult fit_kmodes(const Dataset& d, std::size_t k, std::uint64_t seed, std::size_t max_iter) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
    if (k > d.n) throw std::invalid_argument("k exceeds the number of samples");
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed);
    const std::size_t s = d.num_categorical();
    const auto seeds = seed_rows(d, k, rng);
    std::vector<std::int32_t> modes(k * s);
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t r = 0; r < s; ++r) modes[m * s + r] = d.code(seeds[m], r);
    }
    const double denom = d.active.empty() ? 1.0 : static_cast<double>(d.active.size());

    FitResult res;
    res.partition.k = k;
    res.partition.assignment.assign(d.n, -1);
    std::size_t it = 0;
    bool changed = true;
    while (changed && it < max_iter) {
        ++it;
        changed = false;
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < d.n; ++i) {
            const std::int32_t* row = &d.codes[i * s];
            std::size_t best = std::numeric_limits<std::size_t>::max(), arg = 0;
            for (std::size_t m = 0; m < k; ++m) {
                const std::int32_t* mode = &modes[m * s];
                std::size_t dist = 0;
                for (std::size_t r : d.active) dist += row[r] != mode[r];
                if (dist < best) {
                    best = dist;
                    arg = m;
                }
            }
            mismatches += best;
            if (res.partition.assignment[i] != static_cast<int>(arg)) {
                res.partition.assignment[i] = static_cast<int>(arg);
                changed = true;
            }
        }
        res.trace.steps.push_back({0, it, StepKind::inner, static_cast<double>(mismatches) / denom, changed});
        if (!changed) break;
        const auto prof = compute_profile(d, res.partition);
        for (std::size_t m = 0; m < k; ++m) {
            if (prof.empty(m)) continue;
            for (std::size_t r = 0; r < s; ++r) modes[m * s + r] = prof.mode(m, r);
        }
    }
    res.trace.converged = !changed;
    res.trace.cap_reached = changed;
    res.trace.inner_counts.push_back(it);
    res.trace.total_inner = it;
    res.trace.initial_objective = res.trace.steps.front().objective;
    res.trace.final_objective = res.trace.steps.back().objective;
    res.orders = dictionary_order(d);
    res.effective_clusters = count_effective(res.partition);
    res.trace.wall_time = seconds_since(t0);
    return res;
}

FitResult fit_fixed_order(const Dataset& d, std::size_t k, const DistanceTable& dist, std::uint64_t seed,
                          std::size_t max_inner) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
    if (k > d.n) throw std::invalid_argument("k exceeds the number of samples");
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed);
    const auto seeds = seed_rows(d, k, rng);
    FitResult res;
    Partition q = assign(d, seed_profile(d, seeds), dist);
    ClusterProfile prof = compute_profile(d, q);
    double L = objective_from_profile(d, prof, dist).total;
    res.trace.initial_objective = L;
    res.trace.steps.push_back({0, 0, StepKind::init, L, true});
    std::size_t it = 0;
    while (it < max_inner) {
        ++it;
        Partition next = assign(d, prof, dist);
        ClusterProfile next_prof = compute_profile(d, next);
        const double next_L = objective_from_profile(d, next_prof, dist).total;
        const bool improved = next_L < L;
        res.trace.steps.push_back({0, it, StepKind::inner, next_L, improved});
        if (!improved) {
            res.trace.converged = true;
            break;
        }
        q = std::move(next);
        prof = std::move(next_prof);
        L = next_L;
    }
    res.trace.cap_reached = !res.trace.converged;
    res.trace.inner_counts.push_back(it);
    res.trace.total_inner = it;
    res.trace.final_objective = L;
    res.partition = std::move(q);
    res.effective_clusters = count_effective(res.partition);
    res.trace.wall_time = seconds_since(t0);
    return res;
}

FitResult fit_fixed_order(const Dataset& d, std::size_t k, const OrderSet& o, std::uint64_t seed,
                          std::size_t max_inner) {
    auto res = fit_fixed_order(d, k, distance_table(d, o), seed, max_inner);
    res.orders = o;
    return res;
}

DistanceTable semantic_table(const Dataset& d) {
    std::vector<bool> use(d.num_categorical(), false);
    bool any = false;
    for (std::size_t r = 0; r < d.num_categorical(); ++r) {
        use[r] = !d.attributes[r].semantic_rank.empty();
        any = any || use[r];
    }
    if (!any) throw std::invalid_argument("no attribute declares a semantic order");
    return masked_table(d, semantic_order(d), use);
}

}  // namespace ocl
