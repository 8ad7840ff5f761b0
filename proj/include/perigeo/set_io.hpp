#pragma once

#include "perigeo/periodic_set.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace perigeo {

// Text format:
//   dim n
//   <n lines: basis vectors>
//   motif m
//   <m lines: n fractions, optional trailing label>
// Blank lines and lines starting with '#' are ignored.

/// Parses either the text or the JSON form (detected by a leading '{').
/// Errors carry the 1-based line number of the offending line.
PeriodicSet parse_set(const std::string& text, const Tolerances& tol = {});

PeriodicSet parse_set_file(const std::string& path, const Tolerances& tol = {});

PeriodicSet set_from_json(const nlohmann::json& j, const Tolerances& tol = {});

nlohmann::json set_to_json(const PeriodicSet& set);

std::string write_set_text(const PeriodicSet& set);

}  // namespace perigeo
