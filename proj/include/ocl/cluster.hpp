#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ocl/data.hpp"
#include "ocl/metric.hpp"
#include "ocl/order.hpp"

namespace ocl {

enum class InitMode { kmodes_once, random_partition };
enum class OrderMode { learned, semantic, random, hamming, fixed };
enum class Ablation { full, no_prob_weight, single_order_update, hamming_only };

const char* to_string(InitMode v);
const char* to_string(OrderMode v);
const char* to_string(Ablation v);
const char* to_string(OrdinalPolicy v);
InitMode parse_init_mode(const std::string& s);
OrderMode parse_order_mode(const std::string& s);
Ablation parse_ablation(const std::string& s);
OrdinalPolicy parse_ordinal_policy(const std::string& s);

struct FitConfig {
    std::size_t k = 2;
    InitMode init = InitMode::kmodes_once;
    OrderMode order_mode = OrderMode::learned;
    Ablation ablation = Ablation::full;
    OrdinalPolicy ordinal_policy = OrdinalPolicy::learn_all;
    std::uint64_t seed = 1;
    bool random_initial_order = false;
    std::optional<OrderSet> fixed_orders;  // used by OrderMode::fixed
    std::size_t max_outer = 50;
    std::size_t max_inner = 500;
};

enum class StepKind { init, order_update, inner };

struct TraceStep {
    std::size_t epoch = 0;
    std::size_t iteration = 0;
    StepKind kind = StepKind::inner;
    double objective = 0;
    bool accepted = false;
};

struct FitTrace {
    std::vector<TraceStep> steps;
    std::vector<std::size_t> inner_counts;  // assignment steps per inner loop
    std::vector<bool> epoch_accepted;       // per order-learning epoch
    std::size_t order_updates = 0;          // order-learning epochs run
    std::size_t accepted_order_updates = 0;
    std::size_t total_inner = 0;
    double initial_objective = 0;
    double final_objective = 0;
    bool converged = false;
    bool cap_reached = false;
    double wall_time = 0;
};

struct FitResult {
    Partition partition;
    OrderSet orders;
    std::vector<std::vector<double>> order_scores;
    FitTrace trace;
    std::size_t effective_clusters = 0;
};

// argmin over non-empty clusters of the sample-cluster distance; ties to the lowest id.
Partition assign(const Dataset& d, const ClusterProfile& prof, const DistanceTable& dist,
                 Weighting w = Weighting::probability);

// k seed samples with pairwise different categorical values where the data allows it.
std::vector<std::size_t> seed_rows(const Dataset& d, std::size_t k, Rng& rng);

FitResult fit_ocl(const Dataset& d, const FitConfig& cfg);
FitResult fit_kmodes(const Dataset& d, std::size_t k, std::uint64_t seed, std::size_t max_iter = 100);
FitResult fit_fixed_order(const Dataset& d, std::size_t k, const DistanceTable& dist, std::uint64_t seed,
                          std::size_t max_inner = 500);
FitResult fit_fixed_order(const Dataset& d, std::size_t k, const OrderSet& o, std::uint64_t seed,
                          std::size_t max_inner = 500);

// Distance used by the semantic-order baseline: declared order on ordinal
// attributes, Hamming on the rest. Throws if no attribute declares an order.
DistanceTable semantic_table(const Dataset& d);

// Categorical order learning followed by k-means on the encoded table.
FitResult fit_mixed(const Dataset& d, const FitConfig& cfg);
// Lloyd iterations seeded with k random rows of pairwise different values; rows are points.
Partition kmeans(const std::vector<std::vector<double>>& x, std::size_t k, std::uint64_t seed,
                 std::size_t max_iter = 300);
std::vector<std::vector<double>> encode_mixed(const Dataset& d, const OrderSet& o);
// Squared Euclidean on numerical columns plus gamma-weighted mismatches.
FitResult fit_kprototypes(const Dataset& d, std::size_t k, std::uint64_t seed, std::size_t max_iter = 100);

struct EfficiencyPoint {
    std::size_t n = 0, s = 0, k = 0;
    double seconds = 0;  // mean over repeats
    double total_inner = 0;
};

enum class SweepAxis { n, s, k };
SweepAxis parse_sweep_axis(const std::string& s);

std::vector<EfficiencyPoint> efficiency_bench(SweepAxis axis, const std::vector<std::size_t>& values,
                                              std::size_t n, std::size_t s, std::size_t k,
                                              std::size_t values_per_attribute, std::size_t repeats,
                                              std::uint64_t seed);

}  // namespace ocl
