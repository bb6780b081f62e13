#pragma once

#include <limits>
#include <vector>

#include "ocl/data.hpp"
#include "ocl/metric.hpp"

namespace ocl {

// ω for a value present in a cluster whose objective share is zero.
inline constexpr double kInfiniteDensity = std::numeric_limits<double>::infinity();

// ω and η in the ClusterProfile layout; η is 1-based within each (m, r) block.
struct LinkDensityTable {
    std::size_t k = 0;
    std::size_t width = 0;
    std::vector<std::size_t> offset;
    std::vector<double> omega;
    std::vector<int> eta;
};

double link_density_value(double p, double l_component);
LinkDensityTable link_density(const Dataset& d, const ClusterProfile& prof, const ObjectiveReport& obj);

// η[g] = 1 for the largest ω; ties go to the lower value index.
std::vector<int> rank_descending(const std::vector<double>& omega);

// Unimodal placement: η = 1 at the centre, then alternating right and left.
std::vector<int> olo_place(const std::vector<int>& eta);

struct Consensus {
    std::vector<double> scores;
    std::vector<int> rank;
};

// positions[m][g] for one attribute; clusters of size zero carry no weight.
Consensus consensus_order(const std::vector<std::vector<int>>& positions, const std::vector<std::size_t>& sizes,
                          std::size_t n);

enum class OrdinalPolicy { learn_all, preserve_ordinal, preserve_all };

// Attributes whose order may change: more than two values, and not pinned by the policy.
std::vector<bool> learnable_attributes(const Dataset& d, OrdinalPolicy policy);

struct OrderLearning {
    OrderSet orders;
    std::vector<std::vector<double>> scores;  // consensus scores per attribute (empty if not learned)
};

OrderLearning learn_orders(const Dataset& d, const ClusterProfile& prof, const ObjectiveReport& obj,
                           const OrderSet& current, const std::vector<bool>& learnable);
OrderSet learn_orders(const Dataset& d, const Partition& q, const OrderSet& current);

}  // namespace ocl
