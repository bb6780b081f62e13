#include "ocl/methods.hpp"

#include <algorithm>
#include <stdexcept>

#include "ocl/parallel.hpp"

namespace ocl {

std::vector<std::string> known_methods() {
    return {"OCL", "OCL-I", "OCL-II", "OCL-III", "LNRO", "RNRO", "KMD", "WO", "SO", "RO", "KMS+OCL", "KPT"};
}

bool is_known_method(const std::string& name) {
    const auto all = known_methods();
    return std::find(all.begin(), all.end(), name) != all.end();
}

bool method_needs_numerical(const std::string& name) { return name == "KMS+OCL" || name == "KPT"; }

bool method_needs_semantic(const std::string& name) { return name == "SO" || name == "LNRO" || name == "RNRO"; }

FitResult run_method(const std::string& name, const Dataset& d, std::size_t k, std::uint64_t seed) {
    FitConfig cfg;
    cfg.k = k;
    cfg.seed = seed;
    if (name == "OCL") return fit_ocl(d, cfg);
    if (name == "OCL-I" || name == "OCL-II" || name == "OCL-III") {
        cfg.ablation = parse_ablation(name);
        return fit_ocl(d, cfg);
    }
    if (name == "LNRO" || name == "RNRO") {
        cfg.ordinal_policy = parse_ordinal_policy(name);
        return fit_ocl(d, cfg);
    }
    if (name == "KMD" || name == "WO") return fit_kmodes(d, k, seed);
    if (name == "SO") return fit_fixed_order(d, k, semantic_table(d), seed);
    if (name == "RO") {
        Rng rng(seed);
        const OrderSet o = random_order(d, rng);
        return fit_fixed_order(d, k, o, rng.next());
    }
    if (name == "KMS+OCL") return fit_mixed(d, cfg);
    if (name == "KPT") return fit_kprototypes(d, k, seed);
    throw std::invalid_argument("unknown method '" + name + "'");
}

std::vector<RunRecord> run_seeds(const std::string& method, const Dataset& d, std::size_t k, std::size_t runs,
                                 std::uint64_t base_seed) {
    if (runs == 0) throw std::invalid_argument("runs must be at least 1");
    return parallel_map(runs, [&](std::size_t i) {
        RunRecord rec;
        rec.seed = base_seed + i;
        rec.fit = run_method(method, d, k, rec.seed);
        if (d.has_labels) rec.metrics = evaluate(d, rec.fit.partition);
        else rec.metrics.cmp = compactness(d, rec.fit.partition);
        return rec;
    });
}

MetricSummary summarize(const std::vector<RunRecord>& runs) {
    std::vector<MetricReport> m;
    for (const auto& r : runs) m.push_back(r.metrics);
    return aggregate(m);
}

}  // namespace ocl
