#include "ocl/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "ocl/rng.hpp"

namespace ocl {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_by(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_real(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

const char* to_string(AttributeKind kind) {
    switch (kind) {
        case AttributeKind::nominal: return "nominal";
        case AttributeKind::ordinal: return "ordinal";
        case AttributeKind::numerical: return "numerical";
        case AttributeKind::label: return "label";
        case AttributeKind::ignore: return "ignore";
    }
    return "?";
}

AttributeKind parse_attribute_kind(const std::string& text) {
    if (text == "nominal") return AttributeKind::nominal;
    if (text == "ordinal") return AttributeKind::ordinal;
    if (text == "numerical") return AttributeKind::numerical;
    if (text == "label") return AttributeKind::label;
    if (text == "ignore") return AttributeKind::ignore;
    throw DataError("unknown attribute kind '" + text + "'");
}

std::vector<AttributeSchema> parse_schema(const std::string& text) {
    std::vector<AttributeSchema> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int labels = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream fields(line);
        AttributeSchema a;
        std::string kind, order;
        fields >> a.name >> kind;
        if (kind.empty()) throw DataError("schema line " + std::to_string(line_no) + ": missing kind");
        a.kind = parse_attribute_kind(kind);
        std::getline(fields, order);
        order = trim(order);
        if (a.kind == AttributeKind::ordinal) {
            if (order.empty())
                throw DataError("schema line " + std::to_string(line_no) + ": ordinal column '" +
                                a.name + "' needs a value order");
            std::vector<std::string> values;
            for (auto& v : split_by(order, '|')) values.push_back(trim(v));
            std::vector<std::string> sorted = values;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw DataError("schema line " + std::to_string(line_no) + ": repeated value in order");
            a.declared_semantic_order = std::move(values);
        } else if (!order.empty()) {
            throw DataError("schema line " + std::to_string(line_no) +
                            ": value order given for non-ordinal column '" + a.name + "'");
        }
        if (a.kind == AttributeKind::label) ++labels;
        out.push_back(std::move(a));
    }
    if (labels > 1) throw DataError("schema declares more than one label column");
    if (out.empty()) throw DataError("schema is empty");
    return out;
}

std::vector<AttributeSchema> read_schema_file(const std::string& path) {
    return parse_schema(read_file(path));
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

Dataset parse_csv_text(const std::string& text, const std::vector<AttributeSchema>& schema,
                       MissingPolicy policy) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split_csv_line(line);
            break;
        }
    }
    if (header.empty()) throw DataError("CSV has no header row");
    if (header.size() != schema.size())
        throw DataError("schema lists " + std::to_string(schema.size()) + " columns but CSV has " +
                        std::to_string(header.size()));

    Dataset d;
    std::vector<int> cat_slot(schema.size(), -1), num_slot(schema.size(), -1);
    int label_col = -1;
    for (std::size_t c = 0; c < schema.size(); ++c) {
        const auto& a = schema[c];
        switch (a.kind) {
            case AttributeKind::nominal:
            case AttributeKind::ordinal: {
                cat_slot[c] = static_cast<int>(d.attributes.size());
                CategoricalAttribute attr;
                attr.name = a.name;
                attr.ordinal = a.kind == AttributeKind::ordinal;
                d.attributes.push_back(std::move(attr));
                break;
            }
            case AttributeKind::numerical:
                num_slot[c] = static_cast<int>(d.numerical_names.size());
                d.numerical_names.push_back(a.name);
                break;
            case AttributeKind::label:
                label_col = static_cast<int>(c);
                break;
            case AttributeKind::ignore:
                break;
        }
    }
    const std::size_t sc = d.attributes.size();
    if (sc == 0 && d.numerical_names.empty()) throw DataError("schema has no feature columns");
    d.numerical.resize(d.numerical_names.size());
    d.has_labels = label_col >= 0;

    std::vector<std::unordered_map<std::string, int>> dict(sc);
    std::unordered_map<std::string, int> label_dict;
    std::vector<std::int32_t> row_codes(sc);
    std::vector<double> row_num(d.numerical_names.size());

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != schema.size())
            throw DataError("CSV line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(schema.size()));
        bool missing = false;
        for (std::size_t c = 0; c < schema.size(); ++c) {
            if (schema[c].kind != AttributeKind::ignore && cells[c].empty()) missing = true;
        }
        if (missing) {
            if (policy == MissingPolicy::error)
                throw DataError("CSV line " + std::to_string(line_no) + " has a missing cell");
            ++d.dropped_rows;
            continue;
        }
        for (std::size_t c = 0; c < schema.size(); ++c) {
            if (cat_slot[c] >= 0) {
                auto& dm = dict[cat_slot[c]];
                auto [it, inserted] = dm.emplace(cells[c], static_cast<int>(dm.size()));
                if (inserted) d.attributes[cat_slot[c]].values.push_back(cells[c]);
                row_codes[cat_slot[c]] = it->second;
            } else if (num_slot[c] >= 0) {
                double v;
                if (!parse_real(cells[c], v))
                    throw DataError("CSV line " + std::to_string(line_no) + ": column '" +
                                    schema[c].name + "' has non-numeric value '" + cells[c] + "'");
                row_num[num_slot[c]] = v;
            }
        }
        d.codes.insert(d.codes.end(), row_codes.begin(), row_codes.end());
        for (std::size_t j = 0; j < row_num.size(); ++j) d.numerical[j].push_back(row_num[j]);
        if (label_col >= 0) {
            const auto& lv = cells[label_col];
            auto [it, inserted] = label_dict.emplace(lv, static_cast<int>(label_dict.size()));
            if (inserted) d.label_values.push_back(lv);
            d.labels.push_back(it->second);
        }
        ++d.n;
    }
    if (d.n == 0) throw DataError("CSV has no complete data rows");

    for (std::size_t c = 0; c < schema.size(); ++c) {
        if (cat_slot[c] < 0 || schema[c].kind != AttributeKind::ordinal) continue;
        auto& attr = d.attributes[cat_slot[c]];
        const auto& declared = *schema[c].declared_semantic_order;
        std::unordered_map<std::string, int> pos;
        for (const auto& v : declared) {
            if (dict[cat_slot[c]].count(v)) pos.emplace(v, static_cast<int>(pos.size()) + 1);
        }
        attr.semantic_rank.resize(attr.values.size());
        for (std::size_t g = 0; g < attr.values.size(); ++g) {
            auto it = pos.find(attr.values[g]);
            if (it == pos.end())
                throw DataError("ordinal column '" + attr.name + "' has value '" + attr.values[g] +
                                "' absent from its declared order");
            attr.semantic_rank[g] = it->second;
        }
    }
    for (std::size_t r = 0; r < sc; ++r) {
        if (!d.attributes[r].degenerate()) d.active.push_back(r);
    }
    return d;
}

Dataset load_csv(const std::string& path, const std::vector<AttributeSchema>& schema,
                 MissingPolicy policy) {
    return parse_csv_text(read_file(path), schema, policy);
}

DatasetStats Dataset::stats() const {
    DatasetStats st;
    if (active.empty()) return st;
    st.min_levels = std::numeric_limits<std::size_t>::max();
    double sum = 0;
    for (auto r : active) {
        std::size_t l = attributes[r].levels();
        sum += static_cast<double>(l);
        st.max_levels = std::max(st.max_levels, l);
        st.min_levels = std::min(st.min_levels, l);
    }
    st.mean_levels = sum / static_cast<double>(active.size());
    return st;
}

std::vector<std::string> Dataset::degenerate_names() const {
    std::vector<std::string> out;
    for (const auto& a : attributes) {
        if (a.degenerate()) out.push_back(a.name);
    }
    return out;
}

Dataset normalize_numerical(Dataset d) {
    for (auto& col : d.numerical) {
        if (col.empty()) continue;
        auto [lo, hi] = std::minmax_element(col.begin(), col.end());
        double min = *lo, span = *hi - *lo;
        for (auto& v : col) v = span > 0 ? (v - min) / span : 0.0;
    }
    return d;
}

Dataset synthesize(std::size_t n, std::size_t s, std::size_t k, std::size_t values_per_attribute,
                   std::uint64_t seed) {
    if (n == 0 || s == 0 || k == 0 || values_per_attribute == 0)
        throw DataError("synthesize: all counts must be positive");
    Rng rng(seed);
    Dataset d;
    d.n = n;
    d.attributes.resize(s);
    for (std::size_t r = 0; r < s; ++r) {
        d.attributes[r].name = "a" + std::to_string(r + 1);
        for (std::size_t g = 0; g < values_per_attribute; ++g)
            d.attributes[r].values.push_back("v" + std::to_string(g + 1));
    }
    d.codes.resize(n * s);
    for (auto& c : d.codes) c = static_cast<std::int32_t>(rng.uniform_index(values_per_attribute));
    for (std::size_t r = 0; r < s; ++r) {
        if (!d.attributes[r].degenerate()) d.active.push_back(r);
    }
    d.has_labels = true;
    d.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.labels[i] = static_cast<int>(i % k);
    for (std::size_t m = 0; m < std::min(k, n); ++m) d.label_values.push_back("c" + std::to_string(m + 1));
    return d;
}

Dataset categorical_only(const Dataset& d) {
    Dataset out = d;
    out.numerical.clear();
    out.numerical_names.clear();
    return out;
}

}  // namespace ocl
