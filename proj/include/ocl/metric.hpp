#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "ocl/data.hpp"
#include "ocl/rng.hpp"

namespace ocl {

// rank[r][g] = o(v_{r,g}) in 1..l_r, one row per categorical attribute.
struct OrderSet {
    std::vector<std::vector<int>> rank;
};

OrderSet dictionary_order(const Dataset& d);
// Declared semantic order for ordinal attributes, dictionary order elsewhere.
OrderSet semantic_order(const Dataset& d);
OrderSet random_order(const Dataset& d, Rng& rng);
bool is_bijection(const std::vector<int>& rank);
bool is_valid(const OrderSet& o, const Dataset& d);

struct Partition {
    std::size_t k = 0;
    std::vector<int> assignment;
};

std::vector<std::size_t> cluster_sizes(const Partition& q);

// Flat (k × Σ l_r) layout; offset[r] locates attribute r's block within a cluster row.
struct ClusterProfile {
    std::size_t k = 0;
    std::vector<std::size_t> offset;
    std::size_t width = 0;
    std::vector<std::size_t> sizes;
    std::vector<std::uint32_t> counts;
    std::vector<double> prob;

    bool empty(std::size_t m) const { return sizes[m] == 0; }
    double p(std::size_t m, std::size_t r, std::size_t g) const { return prob[m * width + offset[r] + g]; }
    std::uint32_t count(std::size_t m, std::size_t r, std::size_t g) const {
        return counts[m * width + offset[r] + g];
    }
    // Most frequent value of attribute r in cluster m; ties go to the lowest index.
    int mode(std::size_t m, std::size_t r) const;
};

ClusterProfile compute_profile(const Dataset& d, const Partition& q);

// Per-attribute value-to-value distances, mat[r][g * l_r + h]. Every sample
// sharing a value shares its distance vector, so the n × s^c vectors of the
// order-distance definition are recovered as rows of these matrices.
struct DistanceTable {
    std::vector<std::size_t> levels;
    std::vector<std::vector<double>> mat;
    double at(std::size_t r, std::size_t g, std::size_t h) const { return mat[r][g * levels[r] + h]; }
};

std::vector<double> order_distance_vector(std::size_t value_index, const std::vector<int>& rank);
DistanceTable distance_table(const Dataset& d, const OrderSet& o);
DistanceTable hamming_table(const Dataset& d);
// Order distance where use_order[r] is set, Hamming elsewhere.
DistanceTable masked_table(const Dataset& d, const OrderSet& o, const std::vector<bool>& use_order);

// How a cluster's value distribution enters θ: the full probability vector,
// or a point mass on the cluster mode.
enum class Weighting { probability, mode };

// cost[m * width + offset[r] + g] = θ for a sample holding value g of attribute r.
std::vector<double> value_costs(const Dataset& d, const ClusterProfile& prof, const DistanceTable& dist,
                                Weighting w = Weighting::probability);

double sample_cluster_distance(const Dataset& d, std::size_t i, std::size_t m, const DistanceTable& dist,
                               const ClusterProfile& prof, Weighting w = Weighting::probability);

struct ObjectiveReport {
    double total = 0;
    std::size_t k = 0;
    std::size_t s = 0;                         // number of categorical attributes (all)
    std::vector<double> per_cluster_attribute;  // L_{m,r}, index m * s + r
    std::vector<double> per_value;              // L_{m,r,g}, profile layout
    double cluster_attribute(std::size_t m, std::size_t r) const { return per_cluster_attribute[m * s + r]; }
};

ObjectiveReport objective(const Dataset& d, const Partition& q, const DistanceTable& dist,
                          Weighting w = Weighting::probability);
ObjectiveReport objective(const Dataset& d, const Partition& q, const OrderSet& o);
ObjectiveReport objective_from_profile(const Dataset& d, const ClusterProfile& prof, const DistanceTable& dist,
                                       Weighting w = Weighting::probability);

// Mean over active attributes of the per-attribute distance between samples i and j.
double pairwise_distance(const Dataset& d, const DistanceTable& dist, std::size_t i, std::size_t j);
void write_distance_matrix_csv(std::ostream& out, const Dataset& d, const DistanceTable& dist);

}  // namespace ocl
