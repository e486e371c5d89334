#include "unicl/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "unicl/errors.hpp"

namespace unicl {

namespace {

double parse_field(std::string_view field, long line) {
    // trim spaces and an optional trailing \r
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() &&
           (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
        field.remove_suffix(1);
    double v = 0.0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw DataFormatError("malformed numeric field '" + std::string(field) + "'", line);
    return v;
}

} // namespace

Dataset load_dataset_csv(std::istream& in, std::size_t expected_cols) {
    std::vector<double> values;
    std::size_t cols = expected_cols;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view rest(line);
        if (!rest.empty() && rest.back() == '\r') rest.remove_suffix(1);
        if (rest.empty()) continue;
        std::size_t nfields = 0;
        while (true) {
            const std::size_t comma = rest.find(',');
            values.push_back(parse_field(rest.substr(0, comma), lineno));
            ++nfields;
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (cols == 0) cols = nfields;
        if (nfields != cols)
            throw DataFormatError("expected " + std::to_string(cols) + " fields, found " +
                                      std::to_string(nfields),
                                  lineno);
    }
    if (values.empty()) throw DataFormatError("empty dataset");
    return Dataset(std::move(values), cols);
}

Dataset load_dataset_csv(const std::string& path, std::size_t expected_cols) {
    std::ifstream in(path);
    if (!in) throw DataFormatError("cannot open '" + path + "'");
    return load_dataset_csv(in, expected_cols);
}

void save_dataset_csv(std::ostream& out, const Dataset& data) {
    char buf[40];
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t j = 0; j < data.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", data(i, j));
            if (j) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

void save_dataset_csv(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw DataFormatError("cannot open '" + path + "' for writing");
    save_dataset_csv(out, data);
}

std::string format_sig(double v, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

} // namespace unicl
