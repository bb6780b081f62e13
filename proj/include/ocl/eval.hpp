#pragma once

#include <vector>

#include "ocl/data.hpp"
#include "ocl/metric.hpp"

namespace ocl {

// Dense contingency table; rows follow sorted distinct pred ids, columns sorted truth ids.
std::vector<std::vector<long long>> contingency(const std::vector<int>& pred, const std::vector<int>& truth);

// Maximum-weight perfect matching on a square matrix; returns column for each row.
std::vector<int> max_weight_matching(const std::vector<std::vector<long long>>& w);

double clustering_accuracy(const std::vector<int>& pred, const std::vector<int>& truth);
double adjusted_rand_index(const std::vector<int>& pred, const std::vector<int>& truth);
// Mutual information over the arithmetic mean of the two entropies.
double normalized_mutual_info(const std::vector<int>& pred, const std::vector<int>& truth);
// Mean normalized within-cluster value entropy over non-empty clusters and
// attributes with more than one value.
double compactness(const Dataset& d, const Partition& q);

struct MetricReport {
    double ca = 0, ari = 0, nmi = 0, cmp = 0;
};

MetricReport evaluate(const Dataset& d, const Partition& q);

struct MeanStd {
    double mean = 0, std = 0;
};

MeanStd mean_std(const std::vector<double>& v);

struct MetricSummary {
    std::vector<MetricReport> per_seed;
    MeanStd ca, ari, nmi, cmp;
};

MetricSummary aggregate(const std::vector<MetricReport>& runs);

}  // namespace ocl
