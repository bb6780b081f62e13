#include <sstream>

#include "doctest.h"
#include "ocl/eval.hpp"
#include "ocl/oracle.hpp"
#include "util.hpp"

using namespace ocl;
using testutil::partition;
using testutil::table;

TEST_CASE("exhaustive order search") {
    SUBCASE("binary attribute: both orders tie, lexicographic wins") {
        const auto d = table("v nominal\n", "v\na\nb\na\n");
        const auto r = oracle::exhaustive_order_search(d, partition(1, {0, 0, 0}), 0, 0);
        CHECK(r.positions == std::vector<int>{1, 2});
    }
    SUBCASE("pure cluster costs zero under every order") {
        const auto d = table("v nominal\n", "v\na\na\nb\nc\n");
        const auto q = partition(2, {0, 0, 1, 1});
        const auto r = oracle::exhaustive_order_search(d, q, 0, 0);
        CHECK(r.cost == 0.0);
        CHECK(r.positions == std::vector<int>{1, 2, 3});
    }
    SUBCASE("guards the factorial") {
        std::string csv = "v\n";
        for (char c = 'a'; c <= 'h'; ++c) csv += std::string(1, c) + "\n";
        const auto d = table("v nominal\n", csv);
        CHECK_THROWS(oracle::exhaustive_order_search(d, partition(1, std::vector<int>(8, 0)), 0, 0));
    }
}

TEST_CASE("oracle primitives") {
    const auto d = table("v nominal\n", "v\na\na\nb\nc\n");
    const auto q = partition(2, {0, 0, 0, 1});
    CHECK(oracle::tally_probability(d, q, 0, 0, 0) == doctest::Approx(2.0 / 3));
    CHECK(oracle::objective_direct(d, partition(1, {0, 0, 0, 0}), dictionary_order(d)) > 0.0);
    CHECK(oracle::objective_direct(table("v nominal\n", "v\na\na\n"), partition(1, {0, 0}),
                                   dictionary_order(table("v nominal\n", "v\na\na\n"))) == 0.0);
    std::vector<int> singletons = {0, 1, 2, 3};
    CHECK(oracle::objective_direct(d, partition(4, singletons), dictionary_order(d)) == 0.0);
}

TEST_CASE("pair counts") {
    const std::vector<int> a = {0, 0, 1, 1, 2};
    const auto pc = oracle::pair_count_metrics(a, a);
    CHECK(pc.ari == doctest::Approx(1.0));
    CHECK(pc.same_diff == 0);
    CHECK(pc.diff_same == 0);
    CHECK(pc.same_same + pc.diff_diff == 10);
    CHECK(oracle::pair_count_metrics({0, 0, 0, 0}, {0, 0, 1, 1}).ari == doctest::Approx(0.0));
    CHECK_THROWS(oracle::pair_count_metrics(std::vector<int>(2001, 0), std::vector<int>(2001, 0)));
}

TEST_CASE("brute-force accuracy") {
    CHECK(oracle::brute_force_accuracy({0, 0, 0, 0, 1, 1, 1, 1, 1, 1}, {0, 0, 0, 1, 0, 0, 1, 1, 1, 1}) ==
          doctest::Approx(0.7));
}

TEST_CASE("random instances respect their bounds") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto inst = oracle::random_instance(seed, 50, 5, 4, 4);
        CHECK(inst.data.n >= 1);
        CHECK(inst.data.n <= 50);
        for (const auto& a : inst.data.attributes) CHECK(a.levels() <= 5);
        CHECK(is_valid(inst.orders, inst.data));
        CHECK(inst.partition.assignment.size() == inst.data.n);
    }
}

TEST_CASE("verify_all passes its gating properties") {
    const auto results = oracle::verify_all(40, 3);
    CHECK(results.size() >= 10);
    for (const auto& r : results) {
        CAPTURE(r.name);
        CAPTURE(r.counterexample);
        CHECK(r.cases > 0);
        if (r.gating) CHECK(r.passed());
    }
    std::ostringstream out;
    oracle::print_results(out, results);
    CHECK(out.str().find("PASS") != std::string::npos);
}
