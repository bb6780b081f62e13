#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ocl/metric.hpp"
#include "ocl/oracle.hpp"
#include "util.hpp"

using namespace ocl;
using testutil::partition;
using testutil::table;

namespace {

OrderSet mirrored(const OrderSet& o) {
    OrderSet m = o;
    for (auto& row : m.rank) {
        const int l = static_cast<int>(row.size());
        for (auto& v : row) v = l + 1 - v;
    }
    return m;
}

}  // namespace

TEST_CASE("compute_profile counts within clusters") {
    const auto d = table("v nominal\n", "v\na\na\nb\nc\n");
    const auto prof = compute_profile(d, partition(2, {0, 0, 0, 1}));
    CHECK(prof.sizes == std::vector<std::size_t>{3, 1});
    CHECK(prof.p(0, 0, 0) == doctest::Approx(2.0 / 3));
    CHECK(prof.p(0, 0, 1) == doctest::Approx(1.0 / 3));
    CHECK(prof.p(0, 0, 2) == 0.0);
    CHECK(prof.p(1, 0, 0) == 0.0);
    CHECK(prof.p(1, 0, 1) == 0.0);
    CHECK(prof.p(1, 0, 2) == 1.0);
    CHECK(prof.mode(0, 0) == 0);
}

TEST_CASE("compute_profile flags empty clusters") {
    const auto d = table("v nominal\n", "v\na\nb\n");
    const auto prof = compute_profile(d, partition(3, {0, 0}));
    CHECK(prof.empty(1));
    CHECK(prof.empty(2));
    CHECK(prof.p(1, 0, 0) == 0.0);
    CHECK(prof.p(1, 0, 1) == 0.0);
}

TEST_CASE("profile rows sum to one and sizes sum to n") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto inst = oracle::random_instance(seed);
        const auto prof = compute_profile(inst.data, inst.partition);
        std::size_t total = 0;
        for (auto s : prof.sizes) total += s;
        CHECK(total == inst.data.n);
        for (std::size_t m = 0; m < prof.k; ++m) {
            if (prof.empty(m)) continue;
            for (std::size_t r = 0; r < inst.data.num_categorical(); ++r) {
                double sum = 0;
                for (std::size_t g = 0; g < inst.data.attributes[r].levels(); ++g) {
                    CHECK(prof.p(m, r, g) >= 0.0);
                    sum += prof.p(m, r, g);
                }
                CHECK(std::abs(sum - 1.0) <= 1e-12);
            }
        }
    }
}

TEST_CASE("order_distance_vector") {
    CHECK(order_distance_vector(0, {1, 2, 3}) == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(order_distance_vector(0, {2, 3, 1}) == std::vector<double>{0.0, 0.5, 0.5});
    CHECK(order_distance_vector(0, {1, 2}) == std::vector<double>{0.0, 1.0});
    CHECK(order_distance_vector(1, {2, 1}) == std::vector<double>{1.0, 0.0});
    CHECK_THROWS(order_distance_vector(0, {1}));
}

TEST_CASE("distance table entries") {
    const auto d = table("a nominal\nb nominal\n", "a,b\np,x\nq,y\nr,x\ns,y\n");
    Rng rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const auto o = random_order(d, rng);
        const auto t = distance_table(d, o);
        for (std::size_t r = 0; r < 2; ++r) {
            const std::size_t l = t.levels[r];
            for (std::size_t g = 0; g < l; ++g) {
                for (std::size_t h = 0; h < l; ++h) {
                    CHECK(t.at(r, g, h) >= 0.0);
                    CHECK(t.at(r, g, h) <= 1.0);
                    CHECK((t.at(r, g, h) == 0.0) == (g == h));
                    if (l == 2 && g != h) CHECK(t.at(r, g, h) == 1.0);
                }
            }
        }
    }
}

TEST_CASE("sample_cluster_distance") {
    SUBCASE("dot product with the cluster profile") {
        const auto d = table("v nominal\n", "v\na\na\nb\nc\n");
        const auto q = partition(2, {0, 0, 0, 1});
        const auto prof = compute_profile(d, q);
        const auto dist = distance_table(d, dictionary_order(d));
        CHECK(sample_cluster_distance(d, 0, 0, dist, prof) == doctest::Approx(1.0 / 6));
        CHECK(sample_cluster_distance(d, 3, 1, dist, prof) == 0.0);
    }
    SUBCASE("mean over attributes") {
        const auto d = table("a nominal\nb nominal\n", "a,b\np,x\np,x\np,y\np,y\nq,y\n");
        const auto q = partition(1, {0, 0, 0, 0, 0});
        const auto prof = compute_profile(d, q);
        const auto dist = distance_table(d, dictionary_order(d));
        CHECK(sample_cluster_distance(d, 0, 0, dist, prof) == doctest::Approx(0.4));
    }
    SUBCASE("empty cluster is rejected") {
        const auto d = table("v nominal\n", "v\na\nb\n");
        const auto prof = compute_profile(d, partition(2, {0, 0}));
        CHECK_THROWS(sample_cluster_distance(d, 0, 1, hamming_table(d), prof));
    }
}

TEST_CASE("theta lies in [0,1] and vanishes only on pure clusters") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto inst = oracle::random_instance(seed);
        const auto& d = inst.data;
        const auto prof = compute_profile(d, inst.partition);
        const auto dist = distance_table(d, inst.orders);
        for (std::size_t i = 0; i < d.n; ++i) {
            for (std::size_t m = 0; m < prof.k; ++m) {
                if (prof.empty(m)) continue;
                const double t = sample_cluster_distance(d, i, m, dist, prof);
                CHECK(t >= 0.0);
                CHECK(t <= 1.0 + 1e-12);
                bool pure = true;
                for (std::size_t r : d.active) pure = pure && prof.p(m, r, d.code(i, r)) == 1.0;
                CHECK((t == 0.0) == pure);
            }
        }
    }
}

TEST_CASE("objective examples") {
    SUBCASE("identical samples give zero") {
        const auto d = table("a nominal\nb nominal\n", "a,b\np,x\np,x\np,x\nq,y\n");
        const auto rep = objective(d, partition(2, {0, 0, 0, 1}), dictionary_order(d));
        CHECK(rep.total == 0.0);
    }
    SUBCASE("four samples on one attribute") {
        const auto d = table("v nominal\n", "v\na\nb\nc\na\n");
        const auto q = partition(1, {0, 0, 0, 0});
        const auto o = dictionary_order(d);
        // p = (1/2, 1/4, 1/4); θ(a) = 3/8, θ(b) = 3/8, θ(c) = 5/8
        const auto rep = objective(d, q, o);
        CHECK(rep.total == doctest::Approx(3.0 / 8 + 3.0 / 8 + 5.0 / 8 + 3.0 / 8));
        CHECK(rep.total == doctest::Approx(oracle::objective_direct(d, q, o)));
        CHECK(rep.per_value[0] == doctest::Approx(2 * 3.0 / 8));
    }
    SUBCASE("cluster label symmetry") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto inst = oracle::random_instance(seed);
            auto swapped = inst.partition;
            for (auto& a : swapped.assignment) a = static_cast<int>(swapped.k) - 1 - a;
            CHECK(objective(inst.data, swapped, inst.orders).total ==
                  doctest::Approx(objective(inst.data, inst.partition, inst.orders).total).epsilon(1e-12));
        }
    }
}

TEST_CASE("objective decomposition identities") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto inst = oracle::random_instance(seed);
        const auto& d = inst.data;
        const auto rep = objective(d, inst.partition, inst.orders);
        const auto prof = compute_profile(d, inst.partition);
        double sum = 0;
        for (std::size_t m = 0; m < rep.k; ++m) {
            for (std::size_t r = 0; r < d.num_categorical(); ++r) {
                double parts = 0;
                for (std::size_t g = 0; g < d.attributes[r].levels(); ++g)
                    parts += rep.per_value[m * prof.width + prof.offset[r] + g];
                CHECK(parts == doctest::Approx(rep.cluster_attribute(m, r)).epsilon(1e-9));
                sum += rep.cluster_attribute(m, r);
            }
        }
        const double sc = d.active.empty() ? 1.0 : static_cast<double>(d.num_active());
        CHECK(rep.total == doctest::Approx(sum / sc).epsilon(1e-9));
    }
}

TEST_CASE("order reversal invariance") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto inst = oracle::random_instance(seed);
        const auto& d = inst.data;
        const auto a = distance_table(d, inst.orders);
        const auto b = distance_table(d, mirrored(inst.orders));
        CHECK(a.mat == b.mat);
        CHECK(objective(d, inst.partition, inst.orders).total ==
              objective(d, inst.partition, mirrored(inst.orders)).total);
    }
}

TEST_CASE("binary collapse") {
    const auto d = synthesize(60, 6, 3, 2, 11);
    Rng rng(5);
    const auto q = partition(3, std::vector<int>(d.labels.begin(), d.labels.end()));
    const double ham = objective(d, q, hamming_table(d)).total;
    for (int rep = 0; rep < 10; ++rep) {
        const auto o = random_order(d, rng);
        CHECK(distance_table(d, o).mat == hamming_table(d).mat);
        CHECK(objective(d, q, o).total == ham);
    }
}

TEST_CASE("mode weighting uses the cluster mode") {
    const auto d = table("v nominal\n", "v\na\na\nb\nc\n");
    const auto q = partition(1, {0, 0, 0, 0});
    const auto prof = compute_profile(d, q);
    const auto dist = distance_table(d, dictionary_order(d));
    CHECK(sample_cluster_distance(d, 2, 0, dist, prof, Weighting::mode) == doctest::Approx(0.5));
    CHECK(sample_cluster_distance(d, 3, 0, dist, prof, Weighting::mode) == doctest::Approx(1.0));
}

TEST_CASE("pairwise distance matrix") {
    const auto d = table("a nominal\nb nominal\n", "a,b\np,x\nq,y\nr,x\n");
    const auto dist = distance_table(d, dictionary_order(d));
    CHECK(pairwise_distance(d, dist, 0, 0) == 0.0);
    CHECK(pairwise_distance(d, dist, 0, 2) == doctest::Approx(0.5));
    CHECK(pairwise_distance(d, dist, 0, 1) == doctest::Approx(0.75));
    CHECK(pairwise_distance(d, dist, 1, 0) == pairwise_distance(d, dist, 0, 1));
    std::ostringstream out;
    write_distance_matrix_csv(out, d, dist);
    std::size_t lines = 0;
    for (char c : out.str()) lines += c == '\n';
    CHECK(lines >= 3);
}

TEST_CASE("orders") {
    const auto d = table("a nominal\nb ordinal lo|mid|hi\n", "a,b\nx,hi\ny,lo\nz,mid\n");
    CHECK(dictionary_order(d).rank[0] == std::vector<int>{1, 2, 3});
    CHECK(semantic_order(d).rank[1] == std::vector<int>{3, 1, 2});
    CHECK(semantic_order(d).rank[0] == std::vector<int>{1, 2, 3});
    Rng rng(1);
    for (int i = 0; i < 20; ++i) CHECK(is_valid(random_order(d, rng), d));
    CHECK(is_bijection({2, 1, 3}));
    CHECK_FALSE(is_bijection({1, 1, 3}));
    CHECK_FALSE(is_bijection({0, 1, 2}));
}
