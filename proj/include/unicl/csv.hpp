#pragma once

#include <iosfwd>
#include <string>

#include "unicl/dataset.hpp"

namespace unicl {

/// Parse a headerless CSV of real columns. If expected_cols > 0, every row
/// must have exactly that many fields; otherwise the first row fixes the
/// width. Throws DataFormatError with the offending line number.
Dataset load_dataset_csv(std::istream& in, std::size_t expected_cols = 0);
Dataset load_dataset_csv(const std::string& path, std::size_t expected_cols = 0);

/// Write a headerless CSV. Values round-trip exactly (17 significant
/// digits); printed summaries elsewhere use 6.
void save_dataset_csv(std::ostream& out, const Dataset& data);
void save_dataset_csv(const std::string& path, const Dataset& data);

/// Format a double with the given number of significant digits.
std::string format_sig(double v, int digits = 6);

} // namespace unicl
