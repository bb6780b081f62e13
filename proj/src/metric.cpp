#include "ocl/metric.hpp"

#include <cmath>
#include <iomanip>
#include <stdexcept>

namespace ocl {

OrderSet dictionary_order(const Dataset& d) {
    OrderSet o;
    o.rank.resize(d.num_categorical());
    for (std::size_t r = 0; r < d.num_categorical(); ++r) {
        auto& row = o.rank[r];
        row.resize(d.attributes[r].levels());
        for (std::size_t g = 0; g < row.size(); ++g) row[g] = static_cast<int>(g) + 1;
    }
    return o;
}

OrderSet semantic_order(const Dataset& d) {
    OrderSet o = dictionary_order(d);
    for (std::size_t r = 0; r < d.num_categorical(); ++r) {
        if (!d.attributes[r].semantic_rank.empty()) o.rank[r] = d.attributes[r].semantic_rank;
    }
    return o;
}

OrderSet random_order(const Dataset& d, Rng& rng) {
    OrderSet o = dictionary_order(d);
    for (auto& row : o.rank) rng.shuffle(row);
    return o;
}

bool is_bijection(const std::vector<int>& rank) {
    std::vector<bool> seen(rank.size(), false);
    for (int v : rank) {
        if (v < 1 || static_cast<std::size_t>(v) > rank.size() || seen[v - 1]) return false;
        seen[v - 1] = true;
    }
    return true;
}

bool is_valid(const OrderSet& o, const Dataset& d) {
    if (o.rank.size() != d.num_categorical()) return false;
    for (std::size_t r = 0; r < o.rank.size(); ++r) {
        if (o.rank[r].size() != d.attributes[r].levels() || !is_bijection(o.rank[r])) return false;
    }
    return true;
}

std::vector<std::size_t> cluster_sizes(const Partition& q) {
    std::vector<std::size_t> sizes(q.k, 0);
    for (int m : q.assignment) ++sizes[m];
    return sizes;
}

int ClusterProfile::mode(std::size_t m, std::size_t r) const {
    std::size_t l = (r + 1 < offset.size() ? offset[r + 1] : width) - offset[r];
    const std::uint32_t* c = &counts[m * width + offset[r]];
    std::size_t best = 0;
    for (std::size_t g = 1; g < l; ++g) {
        if (c[g] > c[best]) best = g;
    }
    return static_cast<int>(best);
}

ClusterProfile compute_profile(const Dataset& d, const Partition& q) {
    if (q.assignment.size() != d.n) throw std::invalid_argument("partition size does not match dataset");
    ClusterProfile p;
    p.k = q.k;
    const std::size_t s = d.num_categorical();
    p.offset.resize(s);
    for (std::size_t r = 0; r < s; ++r) {
        p.offset[r] = p.width;
        p.width += d.attributes[r].levels();
    }
    p.sizes.assign(q.k, 0);
    p.counts.assign(q.k * p.width, 0);
    for (std::size_t i = 0; i < d.n; ++i) {
        int m = q.assignment[i];
        if (m < 0 || static_cast<std::size_t>(m) >= q.k) throw std::invalid_argument("cluster id out of range");
        ++p.sizes[m];
        std::uint32_t* row = &p.counts[m * p.width];
        for (std::size_t r = 0; r < s; ++r) ++row[p.offset[r] + d.code(i, r)];
    }
    p.prob.assign(q.k * p.width, 0.0);
    for (std::size_t m = 0; m < q.k; ++m) {
        if (p.sizes[m] == 0) continue;
        double inv = 1.0 / static_cast<double>(p.sizes[m]);
        for (std::size_t j = 0; j < p.width; ++j) p.prob[m * p.width + j] = p.counts[m * p.width + j] * inv;
    }
    return p;
}

std::vector<double> order_distance_vector(std::size_t value_index, const std::vector<int>& rank) {
    const std::size_t l = rank.size();
    if (l < 2) throw std::invalid_argument("order distance needs at least two values");
    if (value_index >= l) throw std::invalid_argument("value index out of range");
    std::vector<double> out(l);
    const double denom = static_cast<double>(l - 1);
    for (std::size_t g = 0; g < l; ++g) out[g] = std::abs(rank[value_index] - rank[g]) / denom;
    return out;
}

DistanceTable masked_table(const Dataset& d, const OrderSet& o, const std::vector<bool>& use_order) {
    DistanceTable t;
    const std::size_t s = d.num_categorical();
    t.levels.resize(s);
    t.mat.resize(s);
    for (std::size_t r = 0; r < s; ++r) {
        const std::size_t l = d.attributes[r].levels();
        t.levels[r] = l;
        t.mat[r].assign(l * l, 0.0);
        if (l < 2) continue;
        for (std::size_t g = 0; g < l; ++g) {
            if (use_order[r]) {
                auto row = order_distance_vector(g, o.rank[r]);
                std::copy(row.begin(), row.end(), t.mat[r].begin() + g * l);
            } else {
                for (std::size_t h = 0; h < l; ++h) t.mat[r][g * l + h] = g == h ? 0.0 : 1.0;
            }
        }
    }
    return t;
}

DistanceTable distance_table(const Dataset& d, const OrderSet& o) {
    if (!is_valid(o, d)) throw std::invalid_argument("order set does not match dataset");
    return masked_table(d, o, std::vector<bool>(d.num_categorical(), true));
}

DistanceTable hamming_table(const Dataset& d) {
    return masked_table(d, dictionary_order(d), std::vector<bool>(d.num_categorical(), false));
}

std::vector<double> value_costs(const Dataset& d, const ClusterProfile& prof, const DistanceTable& dist,
                                Weighting w) {
    std::vector<double> cost(prof.k * prof.width, 0.0);
    for (std::size_t m = 0; m < prof.k; ++m) {
        if (prof.empty(m)) continue;
        for (std::size_t r : d.active) {
            const std::size_t l = dist.levels[r];
            const double* mat = dist.mat[r].data();
            double* out = &cost[m * prof.width + prof.offset[r]];
            if (w == Weighting::mode) {
                const std::size_t h = prof.mode(m, r);
                for (std::size_t g = 0; g < l; ++g) out[g] = mat[g * l + h];
            } else {
                const double* p = &prof.prob[m * prof.width + prof.offset[r]];
                for (std::size_t g = 0; g < l; ++g) {
                    double acc = 0;
                    for (std::size_t h = 0; h < l; ++h) acc += mat[g * l + h] * p[h];
                    out[g] = acc;
                }
            }
        }
    }
    return cost;
}

double sample_cluster_distance(const Dataset& d, std::size_t i, std::size_t m, const DistanceTable& dist,
                               const ClusterProfile& prof, Weighting w) {
    if (prof.empty(m)) throw std::invalid_argument("distance to an empty cluster");
    if (d.active.empty()) return 0.0;
    double sum = 0;
    for (std::size_t r : d.active) {
        const std::size_t l = dist.levels[r];
        const std::size_t g = d.code(i, r);
        if (w == Weighting::mode) {
            sum += dist.at(r, g, prof.mode(m, r));
        } else {
            double theta = 0;
            for (std::size_t h = 0; h < l; ++h) theta += dist.at(r, g, h) * prof.p(m, r, h);
            sum += theta;
        }
    }
    return sum / static_cast<double>(d.active.size());
}

ObjectiveReport objective_from_profile(const Dataset& d, const ClusterProfile& prof, const DistanceTable& dist,
                                       Weighting w) {
    ObjectiveReport rep;
    rep.k = prof.k;
    rep.s = d.num_categorical();
    rep.per_cluster_attribute.assign(rep.k * rep.s, 0.0);
    rep.per_value.assign(prof.k * prof.width, 0.0);
    const auto cost = value_costs(d, prof, dist, w);
    double sum = 0;
    for (std::size_t m = 0; m < prof.k; ++m) {
        if (prof.empty(m)) continue;
        for (std::size_t r : d.active) {
            double lmr = 0;
            for (std::size_t g = 0; g < dist.levels[r]; ++g) {
                const std::size_t j = m * prof.width + prof.offset[r] + g;
                const double lmrg = prof.counts[j] * cost[j];
                rep.per_value[j] = lmrg;
                lmr += lmrg;
            }
            rep.per_cluster_attribute[m * rep.s + r] = lmr;
            sum += lmr;
        }
    }
    rep.total = d.active.empty() ? 0.0 : sum / static_cast<double>(d.active.size());
    return rep;
}

ObjectiveReport objective(const Dataset& d, const Partition& q, const DistanceTable& dist, Weighting w) {
    return objective_from_profile(d, compute_profile(d, q), dist, w);
}

ObjectiveReport objective(const Dataset& d, const Partition& q, const OrderSet& o) {
    return objective(d, q, distance_table(d, o));
}

double pairwise_distance(const Dataset& d, const DistanceTable& dist, std::size_t i, std::size_t j) {
    if (d.active.empty()) return 0.0;
    double sum = 0;
    for (std::size_t r : d.active) sum += dist.at(r, d.code(i, r), d.code(j, r));
    return sum / static_cast<double>(d.active.size());
}

void write_distance_matrix_csv(std::ostream& out, const Dataset& d, const DistanceTable& dist) {
    out << std::setprecision(10);
    for (std::size_t i = 0; i < d.n; ++i) {
        for (std::size_t j = 0; j < d.n; ++j) {
            if (j) out << ',';
            out << pairwise_distance(d, dist, i, j);
        }
        out << '\n';
    }
}

}  // namespace ocl
