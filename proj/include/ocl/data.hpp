#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ocl {

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AttributeKind { nominal, ordinal, numerical, label, ignore };

const char* to_string(AttributeKind kind);
AttributeKind parse_attribute_kind(const std::string& text);

struct AttributeSchema {
    std::string name;
    AttributeKind kind = AttributeKind::nominal;
    std::optional<std::vector<std::string>> declared_semantic_order;
};

// Schema text: one column per line, "name kind [v1|v2|...]"; '#' starts a comment.
std::vector<AttributeSchema> parse_schema(const std::string& text);
std::vector<AttributeSchema> read_schema_file(const std::string& path);

enum class MissingPolicy { drop_row, error };

struct CategoricalAttribute {
    std::string name;
    bool ordinal = false;
    std::vector<std::string> values;  // V_r, first-appearance order
    // semantic_rank[g] in 1..l_r when the schema declares an order, else empty.
    std::vector<int> semantic_rank;
    bool degenerate() const { return values.size() <= 1; }
    std::size_t levels() const { return values.size(); }
};

struct DatasetStats {
    double mean_levels = 0;   // ϑ over active categorical attributes
    std::size_t max_levels = 0;
    std::size_t min_levels = 0;
};

struct Dataset {
    std::size_t n = 0;
    std::vector<CategoricalAttribute> attributes;
    // Row-major value indices: codes[i * attributes.size() + r].
    std::vector<std::int32_t> codes;
    // Indices into attributes of the non-degenerate columns; size is s^c.
    std::vector<std::size_t> active;

    std::vector<std::string> numerical_names;
    // Column-major numerical values: numerical[j][i].
    std::vector<std::vector<double>> numerical;

    bool has_labels = false;
    std::vector<int> labels;
    std::vector<std::string> label_values;

    std::size_t dropped_rows = 0;

    std::size_t num_categorical() const { return attributes.size(); }
    std::size_t num_active() const { return active.size(); }
    std::size_t num_numerical() const { return numerical.size(); }
    int code(std::size_t i, std::size_t r) const { return codes[i * attributes.size() + r]; }
    std::size_t num_classes() const { return label_values.size(); }
    DatasetStats stats() const;
    std::vector<std::string> degenerate_names() const;
};

Dataset load_csv(const std::string& path, const std::vector<AttributeSchema>& schema,
                 MissingPolicy policy = MissingPolicy::drop_row);
Dataset parse_csv_text(const std::string& text, const std::vector<AttributeSchema>& schema,
                       MissingPolicy policy = MissingPolicy::drop_row);

// Splits one CSV record; handles double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

Dataset normalize_numerical(Dataset d);

// Uniform categorical table; labels are planted round-robin over k.
Dataset synthesize(std::size_t n, std::size_t s, std::size_t k, std::size_t values_per_attribute,
                   std::uint64_t seed);

// Copy with the numerical columns removed.
Dataset categorical_only(const Dataset& d);

}  // namespace ocl
