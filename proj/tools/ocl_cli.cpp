#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ocl/methods.hpp"
#include "ocl/oracle.hpp"
#include "ocl/parallel.hpp"
#include "ocl/report.hpp"

namespace fs = std::filesystem;
using namespace ocl;

namespace {

enum Exit { ok = 0, verify_failed = 1, config_error = 2, data_error = 3, runtime_error = 4 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataSource {
    std::string data, schema;
    std::string missing = "drop_row";
};

std::string default_out_dir() {
    const char* env = std::getenv("OCL_OUTPUT_DIR");
    return env && *env ? env : "ocl_out";
}

void add_data_options(CLI::App* cmd, DataSource& src) {
    cmd->add_option("--data", src.data, "CSV file with a header row")->required();
    cmd->add_option("--schema", src.schema, "column schema file")->required();
    cmd->add_option("--missing", src.missing, "drop_row or error")->check(CLI::IsMember({"drop_row", "error"}));
}

Dataset load(const DataSource& src) {
    if (!fs::exists(src.schema)) throw DataError("schema file not found: " + src.schema);
    if (!fs::exists(src.data)) throw DataError("data file not found: " + src.data);
    return load_csv(src.data, read_schema_file(src.schema),
                    src.missing == "error" ? MissingPolicy::error : MissingPolicy::drop_row);
}

fs::path prepare_out(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec || !fs::is_directory(p)) throw ConfigError("cannot create output directory: " + dir);
    return p;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw ConfigError("cannot write " + p.string());
    return f;
}

std::size_t resolve_k(std::size_t k, const Dataset& d) {
    if (k > 0) return k;
    if (d.has_labels && d.num_classes() > 0) return d.num_classes();
    throw ConfigError("--k is required when the schema has no label column");
}

std::string seed_list(std::uint64_t base, std::size_t runs) {
    std::ostringstream s;
    for (std::size_t i = 0; i < runs; ++i) s << (i ? "," : "") << base + i;
    return s.str();
}

KeyValues data_section(const DataSource& src, const Dataset& d) {
    const auto st = d.stats();
    std::ostringstream lv;
    lv << std::fixed << std::setprecision(3) << st.mean_levels;
    std::string degenerate;
    for (const auto& n : d.degenerate_names()) degenerate += (degenerate.empty() ? "" : ",") + n;
    return {{"data", src.data},
            {"schema", src.schema},
            {"missing_policy", src.missing},
            {"n", std::to_string(d.n)},
            {"categorical", std::to_string(d.num_categorical())},
            {"active_categorical", std::to_string(d.num_active())},
            {"numerical", std::to_string(d.num_numerical())},
            {"dropped_rows", std::to_string(d.dropped_rows)},
            {"mean_levels", lv.str()},
            {"degenerate_columns", degenerate.empty() ? "none" : degenerate},
            {"classes", d.has_labels ? std::to_string(d.num_classes()) : "unlabelled"}};
}

const KeyValues kConventions = {
    {"numerical_normalization", "min-max to [0,1], constant columns map to 0"},
    {"objective_normalizer", "active categorical attributes (single-valued columns excluded)"},
    {"nmi_normalizer", "arithmetic mean of entropies"},
    {"cmp_exclusions", "empty clusters and single-valued attributes"},
    {"seed_derivation", "base_seed + run_index"},
};

// ---- fit ----

struct FitOptions {
    DataSource src;
    std::size_t k = 0, runs = 10;
    std::uint64_t seed = 1;
    std::string init = "kmodes_once", order_mode = "learned", ablation = "full", policy = "learn_all";
    bool random_initial_order = false, categorical_only = false, export_distances = false;
    std::size_t max_outer = 50, max_inner = 500;
    std::string out;
};

int cmd_fit(const FitOptions& o) {
    FitConfig cfg;
    cfg.init = parse_init_mode(o.init);
    cfg.order_mode = parse_order_mode(o.order_mode);
    if (cfg.order_mode == OrderMode::fixed) throw ConfigError("order mode 'fixed' is library-only");
    cfg.ablation = parse_ablation(o.ablation);
    cfg.ordinal_policy = parse_ordinal_policy(o.policy);
    cfg.random_initial_order = o.random_initial_order;
    cfg.max_outer = o.max_outer;
    cfg.max_inner = o.max_inner;
    if (o.runs == 0) throw ConfigError("--runs must be at least 1");

    const Dataset d = load(o.src);
    cfg.k = resolve_k(o.k, d);
    if (cfg.k > d.n) throw ConfigError("k exceeds the number of samples");
    const bool mixed = d.num_numerical() > 0 && !o.categorical_only;
    const fs::path out = prepare_out(o.out);

    auto runs = parallel_map(o.runs, [&](std::size_t i) {
        RunRecord rec;
        rec.seed = o.seed + i;
        FitConfig c = cfg;
        c.seed = rec.seed;
        rec.fit = mixed ? fit_mixed(d, c) : fit_ocl(d, c);
        if (d.has_labels) rec.metrics = evaluate(d, rec.fit.partition);
        else rec.metrics.cmp = compactness(d, rec.fit.partition);
        return rec;
    });

    const bool hamming = cfg.order_mode == OrderMode::hamming || cfg.ablation == Ablation::hamming_only;
    KeyValues conf = {{"k", std::to_string(cfg.k)},
                      {"runs", std::to_string(o.runs)},
                      {"base_seed", std::to_string(o.seed)},
                      {"seeds", seed_list(o.seed, o.runs)},
                      {"init", to_string(cfg.init)},
                      {"order_mode", to_string(cfg.order_mode)},
                      {"ablation", to_string(cfg.ablation)},
                      {"ordinal_policy", to_string(cfg.ordinal_policy)},
                      {"random_initial_order", cfg.random_initial_order ? "yes" : "no"},
                      {"max_outer", std::to_string(cfg.max_outer)},
                      {"max_inner", std::to_string(cfg.max_inner)},
                      {"pipeline", mixed ? "order learning on categorical columns, then k-means on encoded table"
                                         : "categorical"}};
    if (hamming) conf.push_back({"behaviour", "OCL-III (Hamming distance, no order learning)"});
    conf.insert(conf.end(), kConventions.begin(), kConventions.end());

    std::ostringstream report;
    write_section(report, "config", conf);
    write_section(report, "dataset", data_section(o.src, d));
    write_metrics(report, runs, d.has_labels);
    const auto best = std::min_element(runs.begin(), runs.end(), [](const RunRecord& a, const RunRecord& b) {
        return a.fit.trace.final_objective < b.fit.trace.final_objective;
    });
    report << "# orders from seed " << best->seed << " (lowest objective)\n";
    write_orders(report, d, best->fit.orders, best->fit.order_scores);
    write_trace_summary(report, runs);

    open_out(out / "report.txt") << report.str();
    auto per_seed = open_out(out / "per_seed.csv");
    write_per_seed_csv(per_seed, runs);
    auto trace = open_out(out / "trace.csv");
    write_trace_csv(trace, runs);
    auto orders = open_out(out / "orders.csv");
    write_orders_csv(orders, d, best->fit.orders, best->fit.order_scores);
    if (o.export_distances) {
        auto dm = open_out(out / "distances.csv");
        write_distance_matrix_csv(dm, d, hamming ? hamming_table(d) : distance_table(d, best->fit.orders));
    }
    std::cout << report.str() << "written to " << out.string() << '\n';
    return ok;
}

// ---- demo-orders ----

struct DemoOptions {
    DataSource src;
    std::size_t k = 0, wo_runs = 100, so_runs = 100, ro_draws = 1000, ocl_runs = 10;
    std::uint64_t seed = 1;
    std::string out;
};

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::vector<double> cas(const std::vector<RunRecord>& runs) {
    std::vector<double> v;
    for (const auto& r : runs) v.push_back(r.metrics.ca);
    return v;
}

void distribution_line(std::ostream& out, const std::string& name, const std::vector<double>& v) {
    const auto ms = mean_std(v);
    out << std::fixed << std::setprecision(4) << name << ": count=" << v.size() << " mean=" << ms.mean
        << " std=" << ms.std << " min=" << quantile(v, 0) << " q25=" << quantile(v, 0.25)
        << " median=" << quantile(v, 0.5) << " q75=" << quantile(v, 0.75) << " max=" << quantile(v, 1) << '\n';
}

int cmd_demo(const DemoOptions& o) {
    const Dataset d = load(o.src);
    if (!d.has_labels) throw ConfigError("demo-orders needs a label column");
    const std::size_t k = resolve_k(o.k, d);
    if (o.wo_runs == 0 || o.ro_draws == 0 || o.ocl_runs == 0) throw ConfigError("run counts must be positive");
    const fs::path out = prepare_out(o.out);

    bool has_semantic = false;
    for (const auto& a : d.attributes) has_semantic = has_semantic || !a.semantic_rank.empty();

    const auto wo = run_seeds("WO", d, k, o.wo_runs, o.seed);
    const auto ro = run_seeds("RO", d, k, o.ro_draws, o.seed);
    const auto ocl_runs = run_seeds("OCL", d, k, o.ocl_runs, o.seed);
    std::vector<RunRecord> so;
    if (has_semantic && o.so_runs > 0) so = run_seeds("SO", d, k, o.so_runs, o.seed);

    std::ostringstream rep;
    write_section(rep, "config", {{"k", std::to_string(k)},
                                  {"base_seed", std::to_string(o.seed)},
                                  {"wo_runs", std::to_string(o.wo_runs)},
                                  {"so_runs", std::to_string(has_semantic ? o.so_runs : 0)},
                                  {"ro_draws", std::to_string(o.ro_draws)},
                                  {"ocl_runs", std::to_string(o.ocl_runs)},
                                  {"seed_derivation", "base_seed + run_index"}});
    write_section(rep, "dataset", data_section(o.src, d));
    rep << "[ca_distribution]\n";
    distribution_line(rep, "WO", cas(wo));
    if (so.empty()) rep << "SO: omitted (no attribute declares a semantic order)\n";
    else distribution_line(rep, "SO", cas(so));
    distribution_line(rep, "RO", cas(ro));
    distribution_line(rep, "OCL", cas(ocl_runs));
    rep << '\n';

    auto csv = open_out(out / "demo_orders.csv");
    csv << "method,run,seed,ca\n" << std::setprecision(10);
    auto rows = [&](const std::string& name, const std::vector<RunRecord>& runs) {
        for (std::size_t i = 0; i < runs.size(); ++i)
            csv << name << ',' << i << ',' << runs[i].seed << ',' << runs[i].metrics.ca << '\n';
    };
    rows("WO", wo);
    rows("SO", so);
    rows("RO", ro);
    rows("OCL", ocl_runs);
    open_out(out / "report.txt") << rep.str();
    std::cout << rep.str() << "written to " << out.string() << '\n';
    return ok;
}

// ---- bench / ablate ----

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) v.push_back(item);
    return v;
}

struct SuiteEntry {
    std::string name, dir;
    std::size_t k = 0;
    bool mixed = false;
};

struct Suite {
    std::size_t runs = 10;
    std::uint64_t base_seed = 1;
    std::vector<SuiteEntry> datasets;
};

Suite read_suite(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("suite file not found: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw ConfigError("malformed suite file " + path + ": " + e.what());
    }
    Suite s;
    s.runs = j.value("runs", std::size_t{10});
    s.base_seed = j.value("base_seed", std::uint64_t{1});
    const fs::path root = fs::path(path).parent_path();
    if (!j.contains("datasets") || !j["datasets"].is_array()) throw ConfigError("suite lists no datasets");
    for (const auto& e : j["datasets"]) {
        SuiteEntry se;
        se.name = e.at("name").get<std::string>();
        se.dir = (root / e.at("dir").get<std::string>()).string();
        se.k = e.value("k", std::size_t{0});
        se.mixed = e.value("mixed", false);
        s.datasets.push_back(se);
    }
    return s;
}

struct BenchOptions {
    std::string suite;
    std::string methods = "OCL,KMD,OCL-I,OCL-II,OCL-III";
    std::string only;
    std::size_t runs = 0;
    std::string out;
};

int run_bench(const BenchOptions& o, const std::vector<std::string>& methods) {
    for (const auto& m : methods)
        if (!is_known_method(m)) throw ConfigError("unknown method '" + m + "'");
    Suite suite = read_suite(o.suite);
    if (o.runs > 0) suite.runs = o.runs;
    const auto only = split_list(o.only);
    const fs::path out = prepare_out(o.out);

    auto matrix = open_out(out / "matrix.csv");
    auto per_seed = open_out(out / "per_seed.csv");
    matrix << "dataset,method,runs,ca_mean,ca_std,ari_mean,ari_std,nmi_mean,nmi_std,cmp_mean,cmp_std,seconds,status\n";
    per_seed << "dataset,method,seed,ca,ari,nmi,cmp,objective\n";
    matrix << std::setprecision(6);
    per_seed << std::setprecision(10);
    std::cout << "[config]\nsuite: " << o.suite << "\nruns: " << suite.runs << "\nseeds: "
              << seed_list(suite.base_seed, suite.runs) << "\nmethods: " << o.methods << "\n\n";
    std::size_t failures = 0;
    for (const auto& e : suite.datasets) {
        if (!only.empty() && std::find(only.begin(), only.end(), e.name) == only.end()) continue;
        Dataset d;
        try {
            d = load({e.dir + "/data.csv", e.dir + "/schema.txt", "drop_row"});
        } catch (const std::exception& ex) {
            ++failures;
            matrix << e.name << ",*,0,,,,,,,,,,load failed: " << ex.what() << '\n';
            std::cout << e.name << ": load failed: " << ex.what() << '\n';
            continue;
        }
        const std::size_t k = e.k ? e.k : d.num_classes();
        for (const auto& m : methods) {
            if (method_needs_numerical(m) && d.num_numerical() == 0) continue;
            if (method_needs_semantic(m) && std::none_of(d.attributes.begin(), d.attributes.end(),
                                                         [](const auto& a) { return !a.semantic_rank.empty(); }))
                continue;
            try {
                const auto runs = run_seeds(m, d, k, suite.runs, suite.base_seed);
                const auto s = summarize(runs);
                double secs = 0;
                for (const auto& r : runs) {
                    secs += r.fit.trace.wall_time;
                    per_seed << e.name << ',' << m << ',' << r.seed << ',' << r.metrics.ca << ',' << r.metrics.ari
                             << ',' << r.metrics.nmi << ',' << r.metrics.cmp << ',' << r.fit.trace.final_objective
                             << '\n';
                }
                matrix << e.name << ',' << m << ',' << runs.size() << ',' << s.ca.mean << ',' << s.ca.std << ','
                       << s.ari.mean << ',' << s.ari.std << ',' << s.nmi.mean << ',' << s.nmi.std << ','
                       << s.cmp.mean << ',' << s.cmp.std << ',' << secs << ",ok\n";
                std::cout << std::left << std::setw(5) << e.name << std::setw(9) << m << " CA "
                          << format_mean_std(s.ca) << "  ARI " << format_mean_std(s.ari) << "  NMI "
                          << format_mean_std(s.nmi) << "  CMP " << format_mean_std(s.cmp) << '\n';
            } catch (const std::exception& ex) {
                ++failures;
                matrix << e.name << ',' << m << ",0,,,,,,,,,," << ex.what() << '\n';
                std::cout << e.name << ' ' << m << ": failed: " << ex.what() << '\n';
            }
        }
    }
    std::cout << "\nwritten to " << out.string() << (failures ? " (" + std::to_string(failures) + " failures)" : "")
              << '\n';
    return ok;
}

// ---- bench-efficiency ----

struct EffOptions {
    std::string axis = "n", values;
    std::size_t n = 10000, s = 20, k = 5, levels = 5, repeats = 1;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_efficiency(const EffOptions& o) {
    std::vector<std::size_t> values;
    for (const auto& v : split_list(o.values)) {
        try {
            values.push_back(std::stoul(v));
        } catch (const std::exception&) {
            throw ConfigError("bad sweep value '" + v + "'");
        }
    }
    if (values.empty()) throw ConfigError("--values is empty");
    const SweepAxis axis = parse_sweep_axis(o.axis);
    const fs::path out = prepare_out(o.out);
    const auto pts = efficiency_bench(axis, values, o.n, o.s, o.k, o.levels, std::max<std::size_t>(1, o.repeats),
                                      o.seed);
    auto csv = open_out(out / "efficiency.csv");
    csv << "n,s,k,seconds,total_inner\n" << std::setprecision(8);
    std::cout << "[config]\naxis: " << o.axis << "\nvalues_per_attribute: " << o.levels << "\nrepeats: " << o.repeats
              << "\nseed: " << o.seed << "\n\n";
    for (const auto& p : pts) {
        csv << p.n << ',' << p.s << ',' << p.k << ',' << p.seconds << ',' << p.total_inner << '\n';
        std::cout << "n=" << p.n << " s=" << p.s << " k=" << p.k << " seconds=" << p.seconds
                  << " inner=" << p.total_inner << '\n';
    }
    std::cout << "written to " << out.string() << '\n';
    return ok;
}

// ---- export-distances ----

struct ExportOptions {
    DataSource src;
    std::string order_mode = "learned";
    std::size_t k = 0;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_export(const ExportOptions& o) {
    const Dataset d = load(o.src);
    const fs::path out = prepare_out(o.out);
    const OrderMode mode = parse_order_mode(o.order_mode);
    DistanceTable dist;
    OrderSet orders = dictionary_order(d);
    std::vector<std::vector<double>> scores;
    switch (mode) {
        case OrderMode::hamming: dist = hamming_table(d); break;
        case OrderMode::semantic: dist = semantic_table(d); orders = semantic_order(d); break;
        case OrderMode::random: {
            Rng rng(o.seed);
            orders = random_order(d, rng);
            dist = distance_table(d, orders);
            break;
        }
        case OrderMode::learned: {
            FitConfig cfg;
            cfg.k = resolve_k(o.k, d);
            cfg.seed = o.seed;
            auto fit = fit_ocl(d, cfg);
            orders = fit.orders;
            scores = fit.order_scores;
            dist = distance_table(d, orders);
            break;
        }
        case OrderMode::fixed: throw ConfigError("order mode 'fixed' is library-only");
    }
    auto dm = open_out(out / "distances.csv");
    write_distance_matrix_csv(dm, d, dist);
    auto oc = open_out(out / "orders.csv");
    write_orders_csv(oc, d, orders, scores);
    std::cout << "order_mode: " << to_string(mode) << "\nn: " << d.n << "\nwritten to " << out.string() << '\n';
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Order-learning clustering for categorical and mixed data"};
    app.require_subcommand(1);

    FitOptions fit;
    fit.out = default_out_dir();
    auto* c_fit = app.add_subcommand("fit", "cluster one dataset over several seeds");
    add_data_options(c_fit, fit.src);
    c_fit->add_option("--k", fit.k, "number of clusters (default: number of classes)");
    c_fit->add_option("--runs", fit.runs, "number of seeds");
    c_fit->add_option("--seed", fit.seed, "base seed; run i uses base + i");
    c_fit->add_option("--init", fit.init, "kmodes_once or random_partition");
    c_fit->add_option("--order-mode", fit.order_mode, "learned, semantic, random or hamming");
    c_fit->add_option("--ablation", fit.ablation, "full, OCL-I, OCL-II or OCL-III");
    c_fit->add_option("--ordinal-policy", fit.policy, "learn_all, preserve_ordinal (LNRO) or preserve_all (RNRO)");
    c_fit->add_flag("--random-initial-order", fit.random_initial_order, "start from random orders");
    c_fit->add_flag("--categorical-only", fit.categorical_only, "ignore numerical columns");
    c_fit->add_flag("--export-distances", fit.export_distances, "also write the n x n distance matrix");
    c_fit->add_option("--max-outer", fit.max_outer, "cap on order-learning epochs");
    c_fit->add_option("--max-inner", fit.max_inner, "cap on assignment steps per epoch");
    c_fit->add_option("--out", fit.out, "output directory (env OCL_OUTPUT_DIR)");

    DemoOptions demo;
    demo.out = default_out_dir();
    auto* c_demo = app.add_subcommand("demo-orders", "CA distributions of Hamming, semantic and random orders");
    add_data_options(c_demo, demo.src);
    c_demo->add_option("--k", demo.k, "number of clusters (default: number of classes)");
    c_demo->add_option("--wo-runs", demo.wo_runs, "Hamming k-modes seeds");
    c_demo->add_option("--so-runs", demo.so_runs, "semantic-order seeds");
    c_demo->add_option("--ro-draws", demo.ro_draws, "random-order draws");
    c_demo->add_option("--ocl-runs", demo.ocl_runs, "order-learning seeds for the overlay");
    c_demo->add_option("--seed", demo.seed, "base seed");
    c_demo->add_option("--out", demo.out, "output directory (env OCL_OUTPUT_DIR)");

    BenchOptions bench;
    bench.out = default_out_dir();
    auto* c_bench = app.add_subcommand("bench", "methods x datasets matrix from a suite file");
    c_bench->add_option("--suite", bench.suite, "suite JSON")->required();
    c_bench->add_option("--methods", bench.methods, "comma-separated method names");
    c_bench->add_option("--only", bench.only, "comma-separated dataset names");
    c_bench->add_option("--runs", bench.runs, "override the suite's run count");
    c_bench->add_option("--out", bench.out, "output directory (env OCL_OUTPUT_DIR)");

    BenchOptions ablate;
    ablate.out = default_out_dir();
    auto* c_ablate = app.add_subcommand("ablate", "OCL and its ablations on a suite");
    c_ablate->add_option("--suite", ablate.suite, "suite JSON")->required();
    c_ablate->add_option("--only", ablate.only, "comma-separated dataset names");
    c_ablate->add_option("--runs", ablate.runs, "override the suite's run count");
    c_ablate->add_flag("--data-ablations", "also run LNRO and RNRO");
    c_ablate->add_option("--out", ablate.out, "output directory (env OCL_OUTPUT_DIR)");

    EffOptions eff;
    eff.out = default_out_dir();
    auto* c_eff = app.add_subcommand("bench-efficiency", "wall time over synthetic n, s or k sweeps");
    c_eff->add_option("--axis", eff.axis, "n, s or k")->check(CLI::IsMember({"n", "s", "k"}));
    c_eff->add_option("--values", eff.values, "comma-separated sweep values")->required();
    c_eff->add_option("--n", eff.n, "samples when not swept");
    c_eff->add_option("--s", eff.s, "attributes when not swept");
    c_eff->add_option("--k", eff.k, "clusters when not swept");
    c_eff->add_option("--levels", eff.levels, "values per attribute");
    c_eff->add_option("--repeats", eff.repeats, "timed repeats per point");
    c_eff->add_option("--seed", eff.seed, "base seed");
    c_eff->add_option("--out", eff.out, "output directory (env OCL_OUTPUT_DIR)");

    std::size_t instances = 200;
    std::uint64_t verify_seed = 1;
    auto* c_verify = app.add_subcommand("verify", "check the implementation against brute-force oracles");
    c_verify->add_option("--instances", instances, "random instances per property");
    c_verify->add_option("--seed", verify_seed, "base seed");

    ExportOptions ex;
    ex.out = default_out_dir();
    auto* c_export = app.add_subcommand("export-distances", "write the sample distance matrix");
    add_data_options(c_export, ex.src);
    c_export->add_option("--order-mode", ex.order_mode, "learned, semantic, random or hamming");
    c_export->add_option("--k", ex.k, "clusters for the learned mode");
    c_export->add_option("--seed", ex.seed, "seed");
    c_export->add_option("--out", ex.out, "output directory (env OCL_OUTPUT_DIR)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : config_error;
    }

    try {
        if (*c_fit) return cmd_fit(fit);
        if (*c_demo) return cmd_demo(demo);
        if (*c_bench) return run_bench(bench, split_list(bench.methods));
        if (*c_ablate) {
            std::vector<std::string> m = {"OCL", "OCL-I", "OCL-II", "OCL-III"};
            if (c_ablate->count("--data-ablations")) {
                m.push_back("LNRO");
                m.push_back("RNRO");
            }
            ablate.methods.clear();
            for (const auto& x : m) ablate.methods += (ablate.methods.empty() ? "" : ",") + x;
            return run_bench(ablate, m);
        }
        if (*c_eff) return cmd_efficiency(eff);
        if (*c_verify) {
            const auto results = oracle::verify_all(instances, verify_seed);
            oracle::print_results(std::cout, results);
            const bool all = std::all_of(results.begin(), results.end(),
                                         [](const auto& r) { return !r.gating || r.passed(); });
            std::cout << (all ? "verify: PASS" : "verify: FAIL") << '\n';
            return all ? ok : verify_failed;
        }
        if (*c_export) return cmd_export(ex);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return data_error;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return runtime_error;
    }
    return ok;
}
