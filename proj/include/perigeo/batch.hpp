#pragma once

#include "perigeo/metric.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace perigeo {

enum class BatchMode { Amd, Isoset, Emd };

BatchMode parse_batch_mode(const std::string& name);
std::string batch_mode_name(BatchMode mode);

struct BatchResult {
    BatchMode mode = BatchMode::Amd;
    std::vector<std::string> names;  // valid inputs, in input order
    Eigen::MatrixXd matrix;          // symmetric; isoset mode holds 1 (isometric) or 0
    std::vector<std::string> warnings;
};

/// Pairwise comparison of the readable files among `paths`. Files that fail
/// to parse are reported in `warnings` and skipped.
BatchResult batch_compare(const std::vector<std::string>& paths, BatchMode mode, int k = 100,
                          const DrConfig& cfg = {}, const Tolerances& tol = {});

std::string batch_to_csv(const BatchResult& r);
nlohmann::json batch_to_json(const BatchResult& r);

}  // namespace perigeo
