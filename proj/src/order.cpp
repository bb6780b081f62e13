#include "ocl/order.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ocl {

double link_density_value(double p, double l_component) {
    if (p <= 0) return 0.0;
    if (l_component <= 0) return kInfiniteDensity;
    return p / l_component;
}

LinkDensityTable link_density(const Dataset& d, const ClusterProfile& prof, const ObjectiveReport& obj) {
    LinkDensityTable t;
    t.k = prof.k;
    t.width = prof.width;
    t.offset = prof.offset;
    t.omega.assign(prof.k * prof.width, 0.0);
    t.eta.assign(prof.k * prof.width, 0);
    for (std::size_t m = 0; m < prof.k; ++m) {
        for (std::size_t r = 0; r < d.num_categorical(); ++r) {
            const std::size_t l = d.attributes[r].levels();
            const std::size_t base = m * prof.width + prof.offset[r];
            std::vector<double> w(l);
            for (std::size_t g = 0; g < l; ++g) {
                w[g] = link_density_value(prof.prob[base + g], obj.per_value[base + g]);
                t.omega[base + g] = w[g];
            }
            auto eta = rank_descending(w);
            std::copy(eta.begin(), eta.end(), t.eta.begin() + static_cast<std::ptrdiff_t>(base));
        }
    }
    return t;
}

std::vector<int> rank_descending(const std::vector<double>& omega) {
    std::vector<std::size_t> idx(omega.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return omega[a] > omega[b]; });
    std::vector<int> eta(omega.size());
    for (std::size_t pos = 0; pos < idx.size(); ++pos) eta[idx[pos]] = static_cast<int>(pos) + 1;
    return eta;
}

std::vector<int> olo_place(const std::vector<int>& eta) {
    if (!is_bijection(eta)) throw std::invalid_argument("olo_place: eta is not a permutation");
    const int l = static_cast<int>(eta.size());
    const int centre = (l + 1) / 2;
    std::vector<int> pos(eta.size());
    for (std::size_t g = 0; g < eta.size(); ++g) {
        const int e = eta[g];
        const int sign = (e + 1) % 2 == 0 ? 1 : -1;  // (-1)^{η+1}
        pos[g] = centre - sign * (e / 2);
    }
    return pos;
}

Consensus consensus_order(const std::vector<std::vector<int>>& positions, const std::vector<std::size_t>& sizes,
                          std::size_t n) {
    if (positions.empty()) throw std::invalid_argument("consensus_order: no clusters");
    const std::size_t l = positions.front().size();
    // Ranks come from the exact integer sums n * score so the result cannot depend on cluster order.
    std::vector<long long> weighted(l, 0);
    for (std::size_t m = 0; m < positions.size(); ++m) {
        if (sizes[m] == 0) continue;
        for (std::size_t g = 0; g < l; ++g) weighted[g] += static_cast<long long>(sizes[m]) * positions[m][g];
    }
    Consensus c;
    c.scores.resize(l);
    for (std::size_t g = 0; g < l; ++g) c.scores[g] = static_cast<double>(weighted[g]) / static_cast<double>(n);
    std::vector<std::size_t> idx(l);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return weighted[a] < weighted[b]; });
    c.rank.resize(l);
    for (std::size_t pos = 0; pos < l; ++pos) c.rank[idx[pos]] = static_cast<int>(pos) + 1;
    return c;
}

std::vector<bool> learnable_attributes(const Dataset& d, OrdinalPolicy policy) {
    std::vector<bool> out(d.num_categorical(), false);
    for (std::size_t r = 0; r < d.num_categorical(); ++r) {
        const auto& a = d.attributes[r];
        if (a.levels() <= 2) continue;
        if (policy == OrdinalPolicy::preserve_all) continue;
        if (policy == OrdinalPolicy::preserve_ordinal && !a.semantic_rank.empty()) continue;
        out[r] = true;
    }
    return out;
}

OrderLearning learn_orders(const Dataset& d, const ClusterProfile& prof, const ObjectiveReport& obj,
                           const OrderSet& current, const std::vector<bool>& learnable) {
    OrderLearning out;
    out.orders = current;
    out.scores.resize(d.num_categorical());
    const auto dens = link_density(d, prof, obj);
    for (std::size_t r = 0; r < d.num_categorical(); ++r) {
        if (!learnable[r]) continue;
        const std::size_t l = d.attributes[r].levels();
        std::vector<std::vector<int>> positions(prof.k);
        for (std::size_t m = 0; m < prof.k; ++m) {
            if (prof.empty(m)) {
                positions[m].assign(l, 0);
                continue;
            }
            const auto first = dens.eta.begin() + static_cast<std::ptrdiff_t>(m * prof.width + prof.offset[r]);
            positions[m] = olo_place(std::vector<int>(first, first + static_cast<std::ptrdiff_t>(l)));
        }
        auto c = consensus_order(positions, prof.sizes, d.n);
        out.orders.rank[r] = std::move(c.rank);
        out.scores[r] = std::move(c.scores);
    }
    return out;
}

OrderSet learn_orders(const Dataset& d, const Partition& q, const OrderSet& current) {
    const auto prof = compute_profile(d, q);
    const auto obj = objective_from_profile(d, prof, distance_table(d, current));
    return learn_orders(d, prof, obj, current, learnable_attributes(d, OrdinalPolicy::learn_all)).orders;
}

}  // namespace ocl
