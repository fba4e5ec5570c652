#pragma once

#include <string>
#include <vector>

namespace dskg::io {

// Three-column run series with the fixed header "t,h_s_norm,weighted_norm".
// Downstream tooling keys on that exact header, so it never varies; the
// run's summary records what the two value columns hold when a subcommand
// repurposes them. Values are printed with 17 significant digits so doubles
// round-trip losslessly. The first column must be strictly increasing and
// all three columns must have equal, nonzero length (DomainError otherwise).
std::string series_csv(const std::vector<double>& t,
                       const std::vector<double>& primary,
                       const std::vector<double>& secondary);

// gnuplot script rendering both value columns of the named CSV against the
// first column on a logarithmic y-axis.
std::string plot_script(const std::string& csv_name, const std::string& title);

// Write content under the final path via a sibling temporary file and an
// atomic rename, so concurrent readers never observe partial output. Parent
// directories must exist. Throws dskg::Error on filesystem failures.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace dskg::io
