#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "footrule/csv.hpp"

namespace footrule {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
    std::ostringstream msg;
    msg << "line " << line << ": " << what;
    raise(errc::parse, msg.str());
}

std::optional<double> parse_cell(const std::string& raw, std::size_t line, const char* name) {
    std::string cell = trim(raw);
    if (cell.empty()) return std::nullopt;
    const char* begin = cell.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end != begin + cell.size()) {
        parse_error(line, std::string("malformed ") + name + " value '" + cell + "'");
    }
    if (!std::isfinite(value)) {
        parse_error(line, std::string(name) + " value '" + cell +
                              "' is not a finite number; missing values are empty cells");
    }
    return value;
}

}  // namespace

PairedSample read_paired_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        raise(errc::parse, "empty input: expected an 'x,y' header");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::size_t comma = line.find(',');
        if (comma == std::string::npos || trim(line.substr(0, comma)) != "x" ||
            trim(line.substr(comma + 1)) != "y") {
            raise(errc::parse, "line 1: header must be 'x,y'");
        }
    }

    std::vector<std::optional<double>> xs, ys;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::size_t first = line.find(',');
        if (first == std::string::npos) {
            parse_error(line_no, "expected two comma-separated cells");
        }
        if (line.find(',', first + 1) != std::string::npos) {
            parse_error(line_no, "expected exactly two cells");
        }
        xs.push_back(parse_cell(line.substr(0, first), line_no, "x"));
        ys.push_back(parse_cell(line.substr(first + 1), line_no, "y"));
    }
    if (xs.empty()) {
        raise(errc::parse, "no data rows after the header");
    }
    return PairedSample::create(std::move(xs), std::move(ys));
}

PairedSample read_paired_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        raise(errc::io, "cannot open '" + path + "'");
    }
    return read_paired_csv(in);
}

PairedSample read_paired_csv_string(const std::string& text) {
    std::istringstream in(text);
    return read_paired_csv(in);
}

}  // namespace footrule
