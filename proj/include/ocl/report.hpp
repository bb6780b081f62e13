#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ocl/methods.hpp"

namespace ocl {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

std::string format_mean_std(const MeanStd& v, int precision = 4);

void write_section(std::ostream& out, const std::string& name, const KeyValues& entries);
void write_metrics(std::ostream& out, const std::vector<RunRecord>& runs, bool has_labels);
// Values of every categorical attribute listed from rank 1 upwards, with consensus scores when available.
void write_orders(std::ostream& out, const Dataset& d, const OrderSet& o,
                  const std::vector<std::vector<double>>& scores);
void write_trace_summary(std::ostream& out, const std::vector<RunRecord>& runs);

void write_per_seed_csv(std::ostream& out, const std::vector<RunRecord>& runs);
void write_trace_csv(std::ostream& out, const std::vector<RunRecord>& runs);
void write_orders_csv(std::ostream& out, const Dataset& d, const OrderSet& o,
                      const std::vector<std::vector<double>>& scores);

}  // namespace ocl
