#include <sstream>

#include "doctest.h"
#include "ocl/report.hpp"
#include "util.hpp"

using namespace ocl;

namespace {

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("format_mean_std") {
    CHECK(format_mean_std({0.98304, 0.0512}) == "0.9830±0.0512");
    CHECK(format_mean_std({0.5, 0.0}, 2) == "0.50±0.00");
}

TEST_CASE("write_section") {
    std::ostringstream out;
    write_section(out, "config", {{"k", "3"}, {"order_mode", "hamming"}});
    CHECK(out.str() == "[config]\nk: 3\norder_mode: hamming\n\n");
}

TEST_CASE("report blocks from a fitted run") {
    const auto d = testutil::load_fixture("hr");
    const auto runs = run_seeds("OCL", d, 3, 3, 1);

    std::ostringstream metrics;
    write_metrics(metrics, runs, true);
    CHECK(metrics.str().find("ca: ") != std::string::npos);
    CHECK(metrics.str().find("seed 3:") != std::string::npos);

    std::ostringstream orders;
    write_orders(orders, d, runs[0].fit.orders, runs[0].fit.order_scores);
    CHECK(orders.str().find("hobby:") != std::string::npos);

    std::ostringstream per_seed;
    write_per_seed_csv(per_seed, runs);
    CHECK(count_lines(per_seed.str()) == 4);

    std::ostringstream trace;
    write_trace_csv(trace, runs);
    std::size_t steps = 0;
    for (const auto& r : runs) steps += r.fit.trace.steps.size();
    CHECK(count_lines(trace.str()) == steps + 1);

    std::ostringstream oc;
    write_orders_csv(oc, d, runs[0].fit.orders, runs[0].fit.order_scores);
    std::size_t values = 0;
    for (const auto& a : d.attributes)
        if (!a.degenerate()) values += a.levels();
    CHECK(count_lines(oc.str()) == values + 1);

    std::ostringstream summary;
    write_trace_summary(summary, runs);
    CHECK(summary.str().find("order_updates=") != std::string::npos);
}
