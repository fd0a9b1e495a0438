#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace ghill {

/// Reads observations. Without a column: one decimal number per line.
/// With a column: CSV whose first row is a header containing that name.
/// Blank lines and lines starting with '#' are skipped. Throws DataError
/// with the 1-based line number of the first bad row.
std::vector<double> read_values(std::istream& in, const std::optional<std::string>& column = std::nullopt);

/// Same as read_values on the named file; DataError when it cannot be opened.
std::vector<double> load_values(const std::string& path,
                                const std::optional<std::string>& column = std::nullopt);

}  // namespace ghill
