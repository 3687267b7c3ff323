#pragma once

#include <string>
#include <vector>

#include "hx/verification.hpp"

namespace hx {

// Writes content to path via a temporary file and rename, so readers never
// observe a partial report.  Throws std::runtime_error on an unwritable path.
void write_file_atomic(const std::string& path, const std::string& content);

// Verification records as a JSON array of
// {theorem_id, refinement, tolerance, measured, pass} objects and as CSV
// with a fixed header.  Output is byte-stable for identical inputs.
std::string records_to_json(const std::vector<CheckRecord>& records);
std::string records_to_csv(const std::vector<CheckRecord>& records);

// epoch,loss rows for a training curve.
std::string losses_to_csv(const std::vector<double>& losses);

}  // namespace hx
