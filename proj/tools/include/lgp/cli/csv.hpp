#pragma once

#include <string>
#include <vector>

namespace lgp::cli {

/// Writes a header line and numeric rows. Values use the shortest form that
/// reads back exactly, so identical runs give byte-identical files.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

[[nodiscard]] std::string format_csv(const std::vector<std::string>& header,
                                     const std::vector<std::vector<double>>& rows);

/// Column names prefix1..prefixN.
[[nodiscard]] std::vector<std::string> numbered(const std::string& prefix, int count);

}  // namespace lgp::cli
