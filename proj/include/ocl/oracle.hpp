#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "ocl/data.hpp"
#include "ocl/metric.hpp"

namespace ocl::oracle {

// Brute-force reference implementations. They share no code with the
// production paths beyond the data types.

struct OrderSearchResult {
    std::vector<int> positions;
    double cost = 0;  // L_{m,r}
};

// Every bijection of attribute r's values, scored by L_{m,r} on cluster m;
// ties go to the lexicographically smallest position vector.
OrderSearchResult exhaustive_order_search(const Dataset& d, const Partition& q, std::size_t r, std::size_t m);

// L_{m,r} of cluster m for the given positions of attribute r, counted termwise.
double cluster_attribute_cost(const Dataset& d, const Partition& q, std::size_t r, std::size_t m,
                              const std::vector<int>& positions);

// Within-cluster value frequency by direct counting.
double tally_probability(const Dataset& d, const Partition& q, std::size_t m, std::size_t r, std::size_t g);

double objective_direct(const Dataset& d, const Partition& q, const OrderSet& o);

// Eq. 16 evaluated sample by sample against the profile of q.
std::vector<int> assign_direct(const Dataset& d, const Partition& q, const OrderSet& o);

struct PairCounts {
    long long same_same = 0;  // together in both partitions
    long long same_diff = 0;  // together in pred only
    long long diff_same = 0;  // together in truth only
    long long diff_diff = 0;
    double rand_index = 0, ari = 0, nmi = 0;
};

PairCounts pair_count_metrics(const std::vector<int>& pred, const std::vector<int>& truth);

// Best one-to-one cluster/label matching by enumerating injections.
double brute_force_accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

struct PropertyResult {
    std::string name;
    bool gating = true;
    std::size_t cases = 0;
    std::size_t failures = 0;
    double worst = 0;  // largest observed discrepancy
    std::string counterexample;
    bool passed() const { return failures == 0; }
};

// Randomized implementation-vs-oracle checks.
std::vector<PropertyResult> verify_all(std::size_t instances, std::uint64_t seed);
void print_results(std::ostream& out, const std::vector<PropertyResult>& results);

// Random categorical instance for property tests.
struct Instance {
    Dataset data;
    Partition partition;
    OrderSet orders;
};

Instance random_instance(std::uint64_t seed, std::size_t max_n = 50, std::size_t max_levels = 5,
                         std::size_t max_attributes = 4, std::size_t max_k = 4);

}  // namespace ocl::oracle
