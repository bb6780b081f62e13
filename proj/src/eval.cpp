#include "ocl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace ocl {

namespace {

void check_lengths(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("partition lengths differ");
    if (a.empty()) throw std::invalid_argument("empty partition");
}

std::vector<int> dense_ids(const std::vector<int>& v, std::size_t& count) {
    std::map<int, int> ids;
    for (int x : v) ids.emplace(x, 0);
    int next = 0;
    for (auto& [key, id] : ids) id = next++;
    count = ids.size();
    std::vector<int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = ids[v[i]];
    return out;
}

double choose2(double x) { return x * (x - 1) / 2; }

double entropy(const std::vector<long long>& counts, double n) {
    double h = 0;
    for (long long c : counts) {
        if (c > 0) h -= (c / n) * std::log(c / n);
    }
    return h;
}

}  // namespace

std::vector<std::vector<long long>> contingency(const std::vector<int>& pred, const std::vector<int>& truth) {
    check_lengths(pred, truth);
    std::size_t kp, kt;
    const auto p = dense_ids(pred, kp);
    const auto t = dense_ids(truth, kt);
    std::vector<std::vector<long long>> c(kp, std::vector<long long>(kt, 0));
    for (std::size_t i = 0; i < p.size(); ++i) ++c[p[i]][t[i]];
    return c;
}

std::vector<int> max_weight_matching(const std::vector<std::vector<long long>>& w) {
    const std::size_t n = w.size();
    if (n == 0) return {};
    // Hungarian method on costs -w, 1-based potentials.
    const long long inf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> u(n + 1, 0), v(n + 1, 0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<long long> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            long long delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const long long cur = -w[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n, -1);
    for (std::size_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = static_cast<int>(j - 1);
    return row_to_col;
}

double clustering_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
    const auto c = contingency(pred, truth);
    const std::size_t size = std::max(c.size(), c.front().size());
    std::vector<std::vector<long long>> sq(size, std::vector<long long>(size, 0));
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < c[i].size(); ++j) sq[i][j] = c[i][j];
    }
    const auto match = max_weight_matching(sq);
    long long hit = 0;
    for (std::size_t i = 0; i < size; ++i) hit += sq[i][match[i]];
    return static_cast<double>(hit) / static_cast<double>(pred.size());
}

double adjusted_rand_index(const std::vector<int>& pred, const std::vector<int>& truth) {
    const auto c = contingency(pred, truth);
    const double n = static_cast<double>(pred.size());
    double index = 0, a = 0, b = 0;
    std::vector<long long> col(c.front().size(), 0);
    for (const auto& row : c) {
        long long rs = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            index += choose2(static_cast<double>(row[j]));
            rs += row[j];
            col[j] += row[j];
        }
        a += choose2(static_cast<double>(rs));
    }
    for (long long cs : col) b += choose2(static_cast<double>(cs));
    const double total = choose2(n);
    if (total == 0) return 1.0;
    const double expected = a * b / total;
    const double max_index = (a + b) / 2;
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

double normalized_mutual_info(const std::vector<int>& pred, const std::vector<int>& truth) {
    const auto c = contingency(pred, truth);
    const double n = static_cast<double>(pred.size());
    std::vector<long long> rows(c.size(), 0), cols(c.front().size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < c[i].size(); ++j) {
            rows[i] += c[i][j];
            cols[j] += c[i][j];
        }
    }
    const bool pred_const = rows.size() == 1, truth_const = cols.size() == 1;
    if (pred_const && truth_const) return 1.0;
    if (pred_const || truth_const) return 0.0;
    double mi = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < c[i].size(); ++j) {
            if (c[i][j] == 0) continue;
            const double pij = c[i][j] / n;
            mi += pij * std::log(n * c[i][j] / (static_cast<double>(rows[i]) * static_cast<double>(cols[j])));
        }
    }
    const double denom = (entropy(rows, n) + entropy(cols, n)) / 2;
    if (denom <= 0) return 0.0;
    return std::clamp(mi / denom, 0.0, 1.0);
}

double compactness(const Dataset& d, const Partition& q) {
    const auto prof = compute_profile(d, q);
    double sum = 0;
    std::size_t clusters = 0, attrs = 0;
    for (std::size_t r = 0; r < d.num_categorical(); ++r) attrs += d.attributes[r].levels() > 1;
    for (std::size_t m = 0; m < prof.k; ++m) {
        if (prof.empty(m)) continue;
        ++clusters;
        for (std::size_t r = 0; r < d.num_categorical(); ++r) {
            const std::size_t l = d.attributes[r].levels();
            if (l <= 1) continue;
            double h = 0;
            for (std::size_t g = 0; g < l; ++g) {
                const double p = prof.p(m, r, g);
                if (p > 0) h -= p * std::log(p);
            }
            sum += h / std::log(static_cast<double>(l));
        }
    }
    if (clusters == 0 || attrs == 0) return 0.0;
    return sum / static_cast<double>(clusters * attrs);
}

MetricReport evaluate(const Dataset& d, const Partition& q) {
    if (!d.has_labels) throw std::invalid_argument("dataset has no label column");
    MetricReport m;
    m.ca = clustering_accuracy(q.assignment, d.labels);
    m.ari = adjusted_rand_index(q.assignment, d.labels);
    m.nmi = normalized_mutual_info(q.assignment, d.labels);
    m.cmp = compactness(d, q);
    return m;
}

MeanStd mean_std(const std::vector<double>& v) {
    MeanStd r;
    if (v.empty()) return r;
    for (double x : v) r.mean += x;
    r.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0;
        for (double x : v) ss += (x - r.mean) * (x - r.mean);
        r.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return r;
}

MetricSummary aggregate(const std::vector<MetricReport>& runs) {
    if (runs.empty()) throw std::invalid_argument("aggregate needs at least one run");
    MetricSummary s;
    s.per_seed = runs;
    std::vector<double> ca, ari, nmi, cmp;
    for (const auto& r : runs) {
        ca.push_back(r.ca);
        ari.push_back(r.ari);
        nmi.push_back(r.nmi);
        cmp.push_back(r.cmp);
    }
    s.ca = mean_std(ca);
    s.ari = mean_std(ari);
    s.nmi = mean_std(nmi);
    s.cmp = mean_std(cmp);
    return s;
}

}  // namespace ocl
