#include "ocl/report.hpp"

#include <iomanip>
#include <numeric>
#include <sstream>

namespace ocl {

namespace {

const char* kind_name(StepKind k) {
    switch (k) {
        case StepKind::init: return "init";
        case StepKind::order_update: return "order_update";
        case StepKind::inner: return "inner";
    }
    return "?";
}

std::string fixed(double v, int precision) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << v;
    return s.str();
}

// Value indices of attribute r sorted by rank.
std::vector<std::size_t> by_rank(const std::vector<int>& rank) {
    std::vector<std::size_t> idx(rank.size());
    for (std::size_t g = 0; g < rank.size(); ++g) idx[rank[g] - 1] = g;
    return idx;
}

}  // namespace

std::string format_mean_std(const MeanStd& v, int precision) {
    return fixed(v.mean, precision) + "±" + fixed(v.std, precision);
}

void write_section(std::ostream& out, const std::string& name, const KeyValues& entries) {
    out << '[' << name << "]\n";
    for (const auto& [k, v] : entries) out << k << ": " << v << '\n';
    out << '\n';
}

void write_metrics(std::ostream& out, const std::vector<RunRecord>& runs, bool has_labels) {
    const auto s = summarize(runs);
    out << "[metrics]\n";
    for (const auto& r : runs) {
        out << "seed " << r.seed << ": ";
        if (has_labels) {
            out << "ca=" << fixed(r.metrics.ca, 4) << " ari=" << fixed(r.metrics.ari, 4)
                << " nmi=" << fixed(r.metrics.nmi, 4) << ' ';
        }
        out << "cmp=" << fixed(r.metrics.cmp, 4) << " objective=" << std::setprecision(10)
            << r.fit.trace.final_objective << " effective_clusters=" << r.fit.effective_clusters << '\n';
    }
    if (has_labels) {
        out << "ca: " << format_mean_std(s.ca) << '\n';
        out << "ari: " << format_mean_std(s.ari) << '\n';
        out << "nmi: " << format_mean_std(s.nmi) << '\n';
    }
    out << "cmp: " << format_mean_std(s.cmp) << "\n\n";
}

void write_orders(std::ostream& out, const Dataset& d, const OrderSet& o,
                  const std::vector<std::vector<double>>& scores) {
    out << "[orders]\n";
    for (std::size_t r = 0; r < d.num_categorical(); ++r) {
        const auto& a = d.attributes[r];
        out << a.name << ':';
        if (a.degenerate()) {
            out << " (single value, excluded)\n";
            continue;
        }
        for (std::size_t g : by_rank(o.rank[r])) {
            out << ' ' << a.values[g];
            if (r < scores.size() && !scores[r].empty()) out << '(' << fixed(scores[r][g], 3) << ')';
        }
        out << '\n';
    }
    out << '\n';
}

void write_trace_summary(std::ostream& out, const std::vector<RunRecord>& runs) {
    out << "[trace]\n";
    for (const auto& r : runs) {
        const auto& t = r.fit.trace;
        out << "seed " << r.seed << ": initial=" << std::setprecision(10) << t.initial_objective
            << " final=" << t.final_objective << " order_updates=" << t.order_updates
            << " accepted_order_updates=" << t.accepted_order_updates << " inner_total=" << t.total_inner
            << " inner_per_epoch=";
        for (std::size_t i = 0; i < t.inner_counts.size(); ++i) out << (i ? "," : "") << t.inner_counts[i];
        out << " converged=" << (t.converged ? "yes" : "no") << " seconds=" << fixed(t.wall_time, 4) << '\n';
    }
    out << '\n';
}

void write_per_seed_csv(std::ostream& out, const std::vector<RunRecord>& runs) {
    out << "seed,ca,ari,nmi,cmp,objective,order_updates,inner_total,seconds\n";
    out << std::setprecision(10);
    for (const auto& r : runs) {
        out << r.seed << ',' << r.metrics.ca << ',' << r.metrics.ari << ',' << r.metrics.nmi << ',' << r.metrics.cmp
            << ',' << r.fit.trace.final_objective << ',' << r.fit.trace.order_updates << ','
            << r.fit.trace.total_inner << ',' << r.fit.trace.wall_time << '\n';
    }
}

void write_trace_csv(std::ostream& out, const std::vector<RunRecord>& runs) {
    out << "seed,step,epoch,iteration,kind,objective,accepted,order_update\n";
    out << std::setprecision(12);
    for (const auto& r : runs) {
        std::size_t step = 0;
        for (const auto& s : r.fit.trace.steps) {
            out << r.seed << ',' << step++ << ',' << s.epoch << ',' << s.iteration << ',' << kind_name(s.kind) << ','
                << s.objective << ',' << (s.accepted ? 1 : 0) << ',' << (s.kind == StepKind::order_update ? 1 : 0)
                << '\n';
        }
    }
}

void write_orders_csv(std::ostream& out, const Dataset& d, const OrderSet& o,
                      const std::vector<std::vector<double>>& scores) {
    out << "attribute,rank,value,score\n";
    for (std::size_t r = 0; r < d.num_categorical(); ++r) {
        if (d.attributes[r].degenerate()) continue;
        for (std::size_t g : by_rank(o.rank[r])) {
            out << d.attributes[r].name << ',' << o.rank[r][g] << ',' << d.attributes[r].values[g] << ',';
            if (r < scores.size() && !scores[r].empty()) out << scores[r][g];
            out << '\n';
        }
    }
}

}  // namespace ocl
