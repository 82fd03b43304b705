#pragma once

#include <istream>
#include <string>

#include "footrule/sample.hpp"

namespace footrule {

/// Reads the two-column `x,y` format: header required, one row per pair,
/// empty cell = missing value. NaN and infinities are malformed input.
/// Parse errors name the offending file line (1-based, header included).
PairedSample read_paired_csv(std::istream& in);
PairedSample read_paired_csv_file(const std::string& path);
PairedSample read_paired_csv_string(const std::string& text);

}  // namespace footrule
