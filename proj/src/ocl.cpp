#include "ocl/cluster.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>

namespace ocl {

const char* to_string(InitMode v) {
    return v == InitMode::kmodes_once ? "kmodes_once" : "random_partition";
}

const char* to_string(OrderMode v) {
    switch (v) {
        case OrderMode::learned: return "learned";
        case OrderMode::semantic: return "semantic";
        case OrderMode::random: return "random";
        case OrderMode::hamming: return "hamming";
        case OrderMode::fixed: return "fixed";
    }
    return "?";
}

const char* to_string(Ablation v) {
    switch (v) {
        case Ablation::full: return "full";
        case Ablation::no_prob_weight: return "no_prob_weight";
        case Ablation::single_order_update: return "single_order_update";
        case Ablation::hamming_only: return "hamming_only";
    }
    return "?";
}

const char* to_string(OrdinalPolicy v) {
    switch (v) {
        case OrdinalPolicy::learn_all: return "learn_all";
        case OrdinalPolicy::preserve_ordinal: return "preserve_ordinal";
        case OrdinalPolicy::preserve_all: return "preserve_all";
    }
    return "?";
}

InitMode parse_init_mode(const std::string& s) {
    if (s == "kmodes_once") return InitMode::kmodes_once;
    if (s == "random_partition") return InitMode::random_partition;
    throw std::invalid_argument("unknown init mode '" + s + "'");
}

OrderMode parse_order_mode(const std::string& s) {
    if (s == "learned") return OrderMode::learned;
    if (s == "semantic") return OrderMode::semantic;
    if (s == "random") return OrderMode::random;
    if (s == "hamming") return OrderMode::hamming;
    if (s == "fixed") return OrderMode::fixed;
    throw std::invalid_argument("unknown order mode '" + s + "'");
}

Ablation parse_ablation(const std::string& s) {
    if (s == "full" || s == "OCL") return Ablation::full;
    if (s == "no_prob_weight" || s == "OCL-I") return Ablation::no_prob_weight;
    if (s == "single_order_update" || s == "OCL-II") return Ablation::single_order_update;
    if (s == "hamming_only" || s == "OCL-III") return Ablation::hamming_only;
    throw std::invalid_argument("unknown ablation '" + s + "'");
}

OrdinalPolicy parse_ordinal_policy(const std::string& s) {
    if (s == "learn_all" || s == "OCL") return OrdinalPolicy::learn_all;
    if (s == "preserve_ordinal" || s == "LNRO") return OrdinalPolicy::preserve_ordinal;
    if (s == "preserve_all" || s == "RNRO") return OrdinalPolicy::preserve_all;
    throw std::invalid_argument("unknown ordinal policy '" + s + "'");
}

Partition assign(const Dataset& d, const ClusterProfile& prof, const DistanceTable& dist, Weighting w) {
    const auto cost = value_costs(d, prof, dist, w);
    std::vector<std::size_t> live;
    for (std::size_t m = 0; m < prof.k; ++m) {
        if (!prof.empty(m)) live.push_back(m);
    }
    if (live.empty()) throw std::invalid_argument("assign: every cluster is empty");
    const std::size_t s = d.num_categorical();
    Partition q;
    q.k = prof.k;
    q.assignment.resize(d.n);
    for (std::size_t i = 0; i < d.n; ++i) {
        const std::int32_t* row = &d.codes[i * s];
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = live.front();
        for (std::size_t m : live) {
            const double* c = &cost[m * prof.width];
            double sum = 0;
            for (std::size_t r : d.active) sum += c[prof.offset[r] + row[r]];
            if (sum < best) {
                best = sum;
                arg = m;
            }
        }
        q.assignment[i] = static_cast<int>(arg);
    }
    return q;
}

namespace {

struct State {
    Partition q;
    ClusterProfile prof;
    double objective = 0;
};

// Assignment/profile alternation under fixed distances until L stops strictly decreasing.
State inner_loop(const Dataset& d, State start, const DistanceTable& dist, Weighting w, std::size_t max_inner,
                 std::size_t epoch, FitTrace& trace) {
    State cur = std::move(start);
    std::size_t it = 0;
    bool stopped = false;
    while (it < max_inner) {
        ++it;
        State next;
        next.q = assign(d, cur.prof, dist, w);
        next.prof = compute_profile(d, next.q);
        next.objective = objective_from_profile(d, next.prof, dist, w).total;
        const bool improved = next.objective < cur.objective;
        trace.steps.push_back({epoch, it, StepKind::inner, next.objective, improved});
        if (!improved) {
            stopped = true;
            break;
        }
        cur = std::move(next);
    }
    if (!stopped) trace.cap_reached = true;
    trace.inner_counts.push_back(it);
    trace.total_inner += it;
    return cur;
}

std::size_t count_effective(const Partition& q) {
    std::size_t c = 0;
    for (auto s : cluster_sizes(q)) c += s > 0;
    return c;
}

}  // namespace

FitResult fit_ocl(const Dataset& d, const FitConfig& cfg) {
    if (cfg.k == 0) throw std::invalid_argument("k must be at least 1");
    if (cfg.k > d.n) throw std::invalid_argument("k exceeds the number of samples");
    if (cfg.max_inner == 0 || cfg.max_outer == 0) throw std::invalid_argument("iteration caps must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(cfg.seed);

    FitResult res;
    State cur;
    if (cfg.init == InitMode::kmodes_once) {
        cur.q = fit_kmodes(d, cfg.k, rng.next()).partition;
    } else {
        cur.q.k = cfg.k;
        cur.q.assignment.resize(d.n);
        for (auto& a : cur.q.assignment) a = static_cast<int>(rng.uniform_index(cfg.k));
    }

    OrderSet orders = cfg.random_initial_order ? random_order(d, rng) : dictionary_order(d);
    if (cfg.ordinal_policy != OrdinalPolicy::learn_all) {
        for (std::size_t r = 0; r < d.num_categorical(); ++r) {
            if (!d.attributes[r].semantic_rank.empty()) orders.rank[r] = d.attributes[r].semantic_rank;
        }
    }

    const Weighting w = cfg.ablation == Ablation::no_prob_weight ? Weighting::mode : Weighting::probability;
    bool learning = cfg.order_mode == OrderMode::learned && cfg.ablation != Ablation::hamming_only;
    DistanceTable dist;
    if (cfg.ablation == Ablation::hamming_only || cfg.order_mode == OrderMode::hamming) {
        dist = hamming_table(d);
    } else if (cfg.order_mode == OrderMode::semantic) {
        dist = semantic_table(d);
        orders = semantic_order(d);
    } else if (cfg.order_mode == OrderMode::random) {
        orders = random_order(d, rng);
        dist = distance_table(d, orders);
    } else if (cfg.order_mode == OrderMode::fixed) {
        if (cfg.fixed_orders) {
            if (!is_valid(*cfg.fixed_orders, d)) throw std::invalid_argument("fixed order set does not match dataset");
            orders = *cfg.fixed_orders;
        }
        dist = distance_table(d, orders);
    } else {
        dist = distance_table(d, orders);
    }

    cur.prof = compute_profile(d, cur.q);
    cur.objective = objective_from_profile(d, cur.prof, dist, w).total;
    res.trace.initial_objective = cur.objective;
    res.trace.steps.push_back({0, 0, StepKind::init, cur.objective, true});

    if (!learning) {
        cur = inner_loop(d, std::move(cur), dist, w, cfg.max_inner, 0, res.trace);
        res.trace.converged = !res.trace.cap_reached;
    } else {
        const auto learnable = learnable_attributes(d, cfg.ordinal_policy);
        const std::size_t max_epochs = cfg.ablation == Ablation::single_order_update ? 1 : cfg.max_outer;
        std::size_t epoch = 0;
        while (epoch < max_epochs) {
            ++epoch;
            const auto obj = objective_from_profile(d, cur.prof, dist, w);
            auto learned = learn_orders(d, cur.prof, obj, orders, learnable);
            DistanceTable next_dist = distance_table(d, learned.orders);
            State start = cur;
            start.objective = objective_from_profile(d, start.prof, next_dist, w).total;
            res.trace.steps.push_back({epoch, 0, StepKind::order_update, start.objective, false});
            ++res.trace.order_updates;
            State next = inner_loop(d, std::move(start), next_dist, w, cfg.max_inner, epoch, res.trace);
            const bool improved = next.objective < cur.objective;
            res.trace.epoch_accepted.push_back(improved);
            if (!improved) {
                res.trace.converged = true;
                break;
            }
            ++res.trace.accepted_order_updates;
            cur = std::move(next);
            orders = std::move(learned.orders);
            res.order_scores = std::move(learned.scores);
            dist = std::move(next_dist);
        }
        if (!res.trace.converged && cfg.ablation == Ablation::single_order_update) res.trace.converged = true;
        if (!res.trace.converged) res.trace.cap_reached = true;
    }

    res.partition = std::move(cur.q);
    res.orders = std::move(orders);
    res.trace.final_objective = cur.objective;
    res.effective_clusters = count_effective(res.partition);
    res.trace.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace ocl
