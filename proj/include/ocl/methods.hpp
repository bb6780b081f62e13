#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ocl/cluster.hpp"
#include "ocl/eval.hpp"

namespace ocl {

// Named method presets used by the benchmark harness:
//   OCL, OCL-I, OCL-II, OCL-III, LNRO, RNRO  -- fit_ocl variants
//   KMD (alias WO)                           -- k-modes with Hamming distance
//   SO, RO                                   -- fixed semantic / random orders
//   KMS+OCL, KPT                             -- mixed-data pipeline and k-prototypes
std::vector<std::string> known_methods();
bool is_known_method(const std::string& name);
bool method_needs_numerical(const std::string& name);
bool method_needs_semantic(const std::string& name);

FitResult run_method(const std::string& name, const Dataset& d, std::size_t k, std::uint64_t seed);

struct RunRecord {
    std::uint64_t seed = 0;
    FitResult fit;
    MetricReport metrics;
};

// Seeds base_seed + i for i < runs, executed concurrently.
std::vector<RunRecord> run_seeds(const std::string& method, const Dataset& d, std::size_t k, std::size_t runs,
                                 std::uint64_t base_seed);
MetricSummary summarize(const std::vector<RunRecord>& runs);

}  // namespace ocl
