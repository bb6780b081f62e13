#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ocl/cluster.hpp"

namespace ocl {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double t = a[j] - b[j];
        s += t * t;
    }
    return s;
}

std::size_t count_effective(const Partition& q) {
    std::size_t c = 0;
    for (auto s : cluster_sizes(q)) c += s > 0;
    return c;
}

}  // namespace

Partition kmeans(const std::vector<std::vector<double>>& x, std::size_t k, std::uint64_t seed, std::size_t max_iter) {
    const std::size_t n = x.size();
    if (k == 0 || k > n) throw std::invalid_argument("kmeans: k must lie in [1, n]");
    Rng rng(seed);
    std::vector<std::vector<double>> centres;
    for (std::size_t i : rng.sample_distinct_rows(n, k, [&](std::size_t a, std::size_t b) { return x[a] == x[b]; }))
        centres.push_back(x[i]);

    Partition q;
    q.k = k;
    q.assignment.assign(n, -1);
    const std::size_t dim = x.empty() ? 0 : x.front().size();
    for (std::size_t it = 0; it < max_iter; ++it) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int arg = 0;
            for (std::size_t m = 0; m < k; ++m) {
                const double dd = sq_dist(x[i], centres[m]);
                if (dd < best) {
                    best = dd;
                    arg = static_cast<int>(m);
                }
            }
            if (q.assignment[i] != arg) {
                q.assignment[i] = arg;
                changed = true;
            }
        }
        if (!changed) break;
        std::vector<std::vector<double>> sum(k, std::vector<double>(dim, 0.0));
        std::vector<std::size_t> cnt(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const int m = q.assignment[i];
            ++cnt[m];
            for (std::size_t j = 0; j < dim; ++j) sum[m][j] += x[i][j];
        }
        for (std::size_t m = 0; m < k; ++m) {
            if (cnt[m] == 0) continue;
            for (std::size_t j = 0; j < dim; ++j) centres[m][j] = sum[m][j] / static_cast<double>(cnt[m]);
        }
    }
    return q;
}

std::vector<std::vector<double>> encode_mixed(const Dataset& d, const OrderSet& o) {
    std::vector<std::vector<double>> x(d.n);
    for (std::size_t i = 0; i < d.n; ++i) {
        auto& row = x[i];
        row.reserve(d.num_categorical() + d.num_numerical());
        for (std::size_t r = 0; r < d.num_categorical(); ++r) {
            const std::size_t l = d.attributes[r].levels();
            row.push_back(l < 2 ? 0.0 : (o.rank[r][d.code(i, r)] - 1) / static_cast<double>(l - 1));
        }
        for (const auto& col : d.numerical) row.push_back(col[i]);
    }
    return x;
}

FitResult fit_mixed(const Dataset& d, const FitConfig& cfg) {
    if (d.num_numerical() == 0) throw std::invalid_argument("fit_mixed needs at least one numerical attribute");
    const auto t0 = std::chrono::steady_clock::now();
    FitResult stage1 = fit_ocl(categorical_only(d), cfg);
    const Dataset norm = normalize_numerical(d);
    FitResult res;
    res.orders = stage1.orders;
    res.order_scores = std::move(stage1.order_scores);
    res.trace = std::move(stage1.trace);
    res.partition = kmeans(encode_mixed(norm, res.orders), cfg.k, cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    res.effective_clusters = count_effective(res.partition);
    res.trace.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

FitResult fit_kprototypes(const Dataset& d, std::size_t k, std::uint64_t seed, std::size_t max_iter) {
    if (k == 0 || k > d.n) throw std::invalid_argument("k must lie in [1, n]");
    const auto t0 = std::chrono::steady_clock::now();
    const Dataset norm = normalize_numerical(d);
    const std::size_t s = d.num_categorical(), u = d.num_numerical();

    double gamma = 0;
    if (u > 0) {
        for (const auto& col : norm.numerical) {
            double mean = 0;
            for (double v : col) mean += v;
            mean /= static_cast<double>(d.n);
            double var = 0;
            for (double v : col) var += (v - mean) * (v - mean);
            gamma += std::sqrt(var / static_cast<double>(d.n > 1 ? d.n - 1 : 1));
        }
        gamma = 0.5 * gamma / static_cast<double>(u);
    } else {
        gamma = 1.0;
    }

    Rng rng(seed);
    const auto seeds = rng.sample_distinct_rows(d.n, k, [&](std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < s; ++r)
            if (d.code(a, r) != d.code(b, r)) return false;
        for (std::size_t j = 0; j < u; ++j)
            if (norm.numerical[j][a] != norm.numerical[j][b]) return false;
        return true;
    });
    std::vector<std::int32_t> modes(k * s);
    std::vector<std::vector<double>> means(k, std::vector<double>(u));
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t r = 0; r < s; ++r) modes[m * s + r] = d.code(seeds[m], r);
        for (std::size_t j = 0; j < u; ++j) means[m][j] = norm.numerical[j][seeds[m]];
    }

    FitResult res;
    res.partition.k = k;
    res.partition.assignment.assign(d.n, -1);
    std::size_t it = 0;
    bool changed = true;
    while (changed && it < max_iter) {
        ++it;
        changed = false;
        double cost_total = 0;
        for (std::size_t i = 0; i < d.n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int arg = 0;
            for (std::size_t m = 0; m < k; ++m) {
                double cost = 0;
                for (std::size_t j = 0; j < u; ++j) {
                    const double t = norm.numerical[j][i] - means[m][j];
                    cost += t * t;
                }
                std::size_t mism = 0;
                for (std::size_t r : d.active) mism += d.code(i, r) != modes[m * s + r];
                cost += gamma * static_cast<double>(mism);
                if (cost < best) {
                    best = cost;
                    arg = static_cast<int>(m);
                }
            }
            cost_total += best;
            if (res.partition.assignment[i] != arg) {
                res.partition.assignment[i] = arg;
                changed = true;
            }
        }
        res.trace.steps.push_back({0, it, StepKind::inner, cost_total, changed});
        if (!changed) break;
        const auto prof = compute_profile(d, res.partition);
        std::vector<std::vector<double>> sum(k, std::vector<double>(u, 0.0));
        for (std::size_t i = 0; i < d.n; ++i) {
            for (std::size_t j = 0; j < u; ++j) sum[res.partition.assignment[i]][j] += norm.numerical[j][i];
        }
        for (std::size_t m = 0; m < k; ++m) {
            if (prof.empty(m)) continue;
            for (std::size_t r = 0; r < s; ++r) modes[m * s + r] = prof.mode(m, r);
            for (std::size_t j = 0; j < u; ++j) means[m][j] = sum[m][j] / static_cast<double>(prof.sizes[m]);
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
    res.trace.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace ocl
