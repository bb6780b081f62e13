#pragma once

#include <string>
#include <vector>

#include "ocl/data.hpp"
#include "ocl/metric.hpp"

namespace testutil {

inline ocl::Dataset table(const std::string& schema, const std::string& csv) {
    return ocl::parse_csv_text(csv, ocl::parse_schema(schema));
}

inline ocl::Partition partition(std::size_t k, std::vector<int> a) {
    ocl::Partition q;
    q.k = k;
    q.assignment = std::move(a);
    return q;
}

inline std::string fixture(const std::string& key) { return std::string(OCL_FIXTURE_DIR) + "/" + key; }

inline ocl::Dataset load_fixture(const std::string& key) {
    return ocl::load_csv(fixture(key) + "/data.csv", ocl::read_schema_file(fixture(key) + "/schema.txt"));
}

}  // namespace testutil
