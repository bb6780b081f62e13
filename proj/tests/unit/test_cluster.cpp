#include <cmath>

#include "doctest.h"
#include "ocl/cluster.hpp"
#include "ocl/eval.hpp"
#include "ocl/methods.hpp"
#include "ocl/oracle.hpp"
#include "util.hpp"

using namespace ocl;
using testutil::partition;
using testutil::table;

namespace {

// Two constant blocks with disjoint values on every attribute.
Dataset separable() {
    std::string csv = "a,b,c,y\n";
    for (int i = 0; i < 12; ++i) csv += i < 6 ? "p,x,u,L\n" : "r,z,w,R\n";
    return table("a nominal\nb nominal\nc nominal\ny label\n", csv);
}

// Steps between two trace markers form one inner loop; accepted steps must strictly
// decrease and the terminal step must fail to improve.
void check_descent(const FitTrace& t) {
    double prev = 0;
    bool in_loop = false;
    for (const auto& s : t.steps) {
        if (s.kind != StepKind::inner) {
            prev = s.objective;
            in_loop = true;
            continue;
        }
        REQUIRE(in_loop);
        if (s.accepted) {
            CHECK(s.objective < prev);
            prev = s.objective;
        } else {
            CHECK(s.objective >= prev);
        }
    }
}

}  // namespace

TEST_CASE("enum names round trip") {
    for (auto m : {InitMode::kmodes_once, InitMode::random_partition}) CHECK(parse_init_mode(to_string(m)) == m);
    for (auto m : {OrderMode::learned, OrderMode::semantic, OrderMode::random, OrderMode::hamming, OrderMode::fixed})
        CHECK(parse_order_mode(to_string(m)) == m);
    for (auto a : {Ablation::full, Ablation::no_prob_weight, Ablation::single_order_update, Ablation::hamming_only})
        CHECK(parse_ablation(to_string(a)) == a);
    CHECK(parse_ablation("OCL-III") == Ablation::hamming_only);
    CHECK(parse_ordinal_policy("LNRO") == OrdinalPolicy::preserve_ordinal);
    CHECK_THROWS(parse_order_mode("bogus"));
}

TEST_CASE("assign") {
    SUBCASE("argmin") {
        // Sample 0 sits at 0 from cluster 0 and 0.5 from cluster 1.
        const auto d = table("v nominal\n", "v\na\nb\nc\n");
        const auto prof = compute_profile(d, partition(2, {0, 1, 1}));
        const auto q = assign(d, prof, distance_table(d, dictionary_order(d)));
        CHECK(q.assignment[0] == 0);
    }
    SUBCASE("ties go to the lowest cluster id") {
        // Cluster 0 = {a, c}, cluster 1 = {b}: samples a and c are 0.5 from both.
        const auto d = table("v nominal\n", "v\na\nb\nc\n");
        const auto prof = compute_profile(d, partition(2, {0, 1, 0}));
        const auto dist = distance_table(d, dictionary_order(d));
        CHECK(sample_cluster_distance(d, 0, 0, dist, prof) == 0.5);
        CHECK(sample_cluster_distance(d, 0, 1, dist, prof) == 0.5);
        CHECK(assign(d, prof, dist).assignment == std::vector<int>{0, 1, 0});
    }
    SUBCASE("empty clusters receive nothing") {
        const auto d = table("v nominal\n", "v\na\nb\nc\n");
        const auto q = assign(d, compute_profile(d, partition(3, {2, 2, 2})), hamming_table(d));
        for (int a : q.assignment) CHECK(a == 2);
    }
    SUBCASE("matches per-sample evaluation") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto inst = oracle::random_instance(seed);
            const auto prof = compute_profile(inst.data, inst.partition);
            const auto dist = distance_table(inst.data, inst.orders);
            const auto q = assign(inst.data, prof, dist);
            const auto direct = oracle::assign_direct(inst.data, inst.partition, inst.orders);
            for (std::size_t i = 0; i < inst.data.n; ++i) {
                if (q.assignment[i] == direct[i]) continue;
                // Only a rounding-level tie may separate the two evaluations.
                const double a = sample_cluster_distance(inst.data, i, q.assignment[i], dist, prof);
                const double b = sample_cluster_distance(inst.data, i, direct[i], dist, prof);
                CHECK(std::abs(a - b) <= 1e-12);
            }
        }
    }
}

TEST_CASE("fit_ocl on separable blocks") {
    const auto d = separable();
    for (auto init : {InitMode::kmodes_once, InitMode::random_partition}) {
        FitConfig cfg;
        cfg.k = 2;
        cfg.init = init;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            cfg.seed = seed;
            const auto r = fit_ocl(d, cfg);
            CHECK(is_valid(r.orders, d));
            check_descent(r.trace);
            if (init == InitMode::kmodes_once) {
                CHECK(clustering_accuracy(r.partition.assignment, d.labels) == 1.0);
                CHECK(r.trace.final_objective == 0.0);
            }
        }
    }
}

TEST_CASE("fit_ocl on identical samples") {
    const auto d = table("a nominal\nb nominal\n", "a,b\nx,y\nx,y\nx,y\nx,y\n");
    FitConfig cfg;
    cfg.k = 2;
    const auto r = fit_ocl(d, cfg);
    CHECK(r.trace.final_objective == 0.0);
    CHECK(r.trace.converged);
}

TEST_CASE("fit_ocl is deterministic and descends") {
    const auto d = synthesize(300, 6, 3, 5, 17);
    for (auto ab : {Ablation::full, Ablation::no_prob_weight, Ablation::single_order_update, Ablation::hamming_only}) {
        FitConfig cfg;
        cfg.k = 3;
        cfg.seed = 4;
        cfg.ablation = ab;
        const auto a = fit_ocl(d, cfg);
        const auto b = fit_ocl(d, cfg);
        CHECK(a.partition.assignment == b.partition.assignment);
        CHECK(a.orders.rank == b.orders.rank);
        REQUIRE(a.trace.steps.size() == b.trace.steps.size());
        for (std::size_t i = 0; i < a.trace.steps.size(); ++i)
            CHECK(a.trace.steps[i].objective == b.trace.steps[i].objective);
        check_descent(a.trace);
        CHECK(a.trace.converged);
        CHECK_FALSE(a.trace.cap_reached);
        if (ab == Ablation::single_order_update) CHECK(a.trace.order_updates <= 1);
        if (ab == Ablation::hamming_only) CHECK(a.trace.order_updates == 0);
        const Weighting w = ab == Ablation::no_prob_weight ? Weighting::mode : Weighting::probability;
        const auto dist = ab == Ablation::hamming_only ? hamming_table(d) : distance_table(d, a.orders);
        CHECK(objective(d, a.partition, dist, w).total == doctest::Approx(a.trace.final_objective).epsilon(1e-12));
    }
}

TEST_CASE("accepted epochs strictly lower the objective") {
    const auto d = synthesize(400, 8, 4, 6, 23);
    FitConfig cfg;
    cfg.k = 4;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        cfg.seed = seed;
        const auto r = fit_ocl(d, cfg);
        REQUIRE(r.trace.epoch_accepted.size() == r.trace.order_updates);
        std::size_t accepted = 0;
        for (bool a : r.trace.epoch_accepted) accepted += a;
        CHECK(accepted == r.trace.accepted_order_updates);
        CHECK(r.trace.final_objective <= r.trace.initial_objective);
    }
}

TEST_CASE("hamming order mode matches the hamming ablation") {
    const auto d = synthesize(200, 5, 3, 4, 8);
    FitConfig a, b;
    a.k = b.k = 3;
    a.order_mode = OrderMode::hamming;
    b.ablation = Ablation::hamming_only;
    CHECK(fit_ocl(d, a).partition.assignment == fit_ocl(d, b).partition.assignment);
}

TEST_CASE("ordinal policies keep declared orders") {
    const auto d = testutil::load_fixture("hr");
    FitConfig cfg;
    cfg.k = 3;
    cfg.ordinal_policy = OrdinalPolicy::preserve_ordinal;
    const auto r = fit_ocl(d, cfg);
    for (std::size_t r_ = 0; r_ < d.num_categorical(); ++r_) {
        if (!d.attributes[r_].semantic_rank.empty()) CHECK(r.orders.rank[r_] == d.attributes[r_].semantic_rank);
    }
    cfg.ordinal_policy = OrdinalPolicy::preserve_all;
    const auto all = fit_ocl(d, cfg);
    const auto sem = semantic_order(d);
    CHECK(all.orders.rank == sem.rank);
}

TEST_CASE("binary data: all orders give the same fit") {
    const auto d = synthesize(120, 6, 2, 2, 31);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        FitConfig full, ham;
        full.k = ham.k = 2;
        full.seed = ham.seed = seed;
        ham.ablation = Ablation::hamming_only;
        CHECK(fit_ocl(d, full).partition.assignment == fit_ocl(d, ham).partition.assignment);
        Rng rng(seed);
        const auto ro = fit_fixed_order(d, 2, random_order(d, rng), seed);
        const auto wo = fit_fixed_order(d, 2, hamming_table(d), seed);
        CHECK(ro.partition.assignment == wo.partition.assignment);
    }
}

TEST_CASE("fit_kmodes") {
    SUBCASE("separable blocks") {
        const auto d = separable();
        std::size_t perfect = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed)
            perfect += clustering_accuracy(fit_kmodes(d, 2, seed).partition.assignment, d.labels) == 1.0;
        CHECK(perfect >= 1);
    }
    SUBCASE("identical samples leave one effective cluster") {
        const auto d = table("a nominal\n", "a\nx\nx\nx\n");
        const auto r = fit_kmodes(d, 2, 1);
        CHECK(r.effective_clusters == 1);
    }
    SUBCASE("rejects bad k") {
        const auto d = table("a nominal\n", "a\nx\ny\n");
        CHECK_THROWS(fit_kmodes(d, 0, 1));
        CHECK_THROWS(fit_kmodes(d, 3, 1));
    }
}

TEST_CASE("fit_fixed_order and semantic baseline") {
    const auto d = testutil::load_fixture("hr");
    const auto so = fit_fixed_order(d, 3, semantic_table(d), 1);
    check_descent(so.trace);
    CHECK(so.trace.converged);
    const auto nominal = table("a nominal\n", "a\nx\ny\n");
    CHECK_THROWS(semantic_table(nominal));
}

TEST_CASE("encode_mixed and fit_mixed") {
    const auto d = table("a nominal\nb nominal\nx numerical\ny label\n",
                         "a,b,x,y\np,u,1,A\nq,u,3,A\nr,v,5,B\np,v,5,B\n");
    const auto enc = encode_mixed(normalize_numerical(d), dictionary_order(d));
    REQUIRE(enc.size() == 4);
    CHECK(enc[0] == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(enc[1] == std::vector<double>{0.5, 0.0, 0.5});
    CHECK(enc[2] == std::vector<double>{1.0, 1.0, 1.0});

    FitConfig cfg;
    cfg.k = 2;
    const auto r = fit_mixed(d, cfg);
    CHECK(r.partition.assignment.size() == 4);
    CHECK(is_valid(r.orders, d));
    CHECK_THROWS(fit_mixed(categorical_only(d), cfg));
}

TEST_CASE("fit_mixed ignores a constant numerical column") {
    auto build = [](const char* constant) {
        std::string csv = "a,b,x\n";
        const char* rows[] = {"p,u", "q,u", "p,v", "r,w", "s,w", "r,t"};
        for (int i = 0; i < 30; ++i) csv += std::string(rows[i % 6]) + "," + constant + "\n";
        return table("a nominal\nb nominal\nx numerical\n", csv);
    };
    const auto d7 = build("7"), d3 = build("-3");
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        FitConfig cfg;
        cfg.k = 2;
        cfg.seed = seed;
        const auto a = fit_mixed(d7, cfg);
        const auto b = fit_mixed(d3, cfg);
        CHECK(a.partition.assignment == b.partition.assignment);
        CHECK(a.orders.rank == fit_ocl(categorical_only(d7), cfg).orders.rank);
    }
}

TEST_CASE("kmeans") {
    const std::vector<std::vector<double>> x = {{0, 0}, {0, 0.1}, {5, 5}, {5, 5.1}};
    const auto q = kmeans(x, 2, 3);
    CHECK(q.assignment[0] == q.assignment[1]);
    CHECK(q.assignment[2] == q.assignment[3]);
    CHECK(q.assignment[0] != q.assignment[2]);
    CHECK_THROWS(kmeans(x, 5, 1));
}

TEST_CASE("fit_kprototypes") {
    const auto d = table("a nominal\nx numerical\ny label\n", "a,x,y\np,0,A\np,0.1,A\nq,9,B\nq,9.2,B\n");
    std::size_t perfect = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
        perfect += clustering_accuracy(fit_kprototypes(d, 2, seed).partition.assignment, d.labels) == 1.0;
    CHECK(perfect >= 1);
}

TEST_CASE("method presets") {
    const auto d = testutil::load_fixture("hr");
    for (const auto& m : known_methods()) {
        if (method_needs_numerical(m)) continue;
        CAPTURE(m);
        const auto runs = run_seeds(m, d, 3, 2, 1);
        REQUIRE(runs.size() == 2);
        CHECK(runs[0].seed == 1);
        CHECK(runs[1].seed == 2);
        CHECK(runs[0].metrics.ca > 0.0);
        const auto again = run_seeds(m, d, 3, 2, 1);
        CHECK(again[1].fit.partition.assignment == runs[1].fit.partition.assignment);
    }
    CHECK_THROWS(run_method("nope", d, 3, 1));
    CHECK_FALSE(is_known_method("nope"));
}

TEST_CASE("efficiency bench grows with n") {
    const auto pts = efficiency_bench(SweepAxis::n, {500, 1000}, 0, 5, 3, 5, 1, 1);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].n == 500);
    CHECK(pts[1].n == 1000);
    CHECK(pts[1].s == 5);
    CHECK(pts[0].seconds > 0.0);
    CHECK(parse_sweep_axis("k") == SweepAxis::k);
    CHECK_THROWS(parse_sweep_axis("q"));
}
