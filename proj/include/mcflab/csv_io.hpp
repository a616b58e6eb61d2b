#pragma once

// CSV emission at full double precision (17 significant digits) so identical
// runs produce byte-identical files.

#include <string>
#include <vector>

namespace mcflab::csv {

/// "%.17g" rendering of a double.
std::string fmt(double v);

std::string two_columns(const std::string& h1, const std::string& h2,
                        const std::vector<double>& a,
                        const std::vector<double>& b);

std::string columns(const std::vector<std::string>& headers,
                    const std::vector<const std::vector<double>*>& cols);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// Parse a two-column CSV with a header line back into vectors (tests,
/// round-trips).
void parse_two_columns(const std::string& content, std::vector<double>& a,
                       std::vector<double>& b);

}  // namespace mcflab::csv
