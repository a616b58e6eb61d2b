#include "mcflab/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mcflab/errors.hpp"

namespace mcflab::csv {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string two_columns(const std::string& h1, const std::string& h2,
                        const std::vector<double>& a,
                        const std::vector<double>& b) {
    return columns({h1, h2}, {&a, &b});
}

std::string columns(const std::vector<std::string>& headers,
                    const std::vector<const std::vector<double>*>& cols) {
    if (headers.size() != cols.size() || cols.empty())
        throw ArgumentError("csv: header/column mismatch");
    std::size_t rows = cols[0]->size();
    for (auto* c : cols)
        if (c->size() != rows) throw ArgumentError("csv: ragged columns");
    std::ostringstream os;
    for (std::size_t i = 0; i < headers.size(); ++i)
        os << (i ? "," : "") << headers[i];
    os << "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            os << (i ? "," : "") << fmt((*cols[i])[r]);
        os << "\n";
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot open for writing: " + path);
    f << content;
    if (!f) throw ArgumentError("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot open: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void parse_two_columns(const std::string& content, std::vector<double>& a,
                       std::vector<double>& b) {
    a.clear();
    b.clear();
    std::istringstream is(content);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (first) {  // header
            first = false;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ArgumentError("csv: malformed line: " + line);
        a.push_back(std::stod(line.substr(0, comma)));
        b.push_back(std::stod(line.substr(comma + 1)));
    }
}

}  // namespace mcflab::csv
