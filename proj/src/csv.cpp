#include "heatgen/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <istream>
#include <system_error>

#include "heatgen/errors.hpp"

namespace heatgen {

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            if (!current.empty()) {
                throw InputError("line " + std::to_string(line_no) +
                                 ": quote inside unquoted field");
            }
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (quoted) {
        throw InputError("line " + std::to_string(line_no) + ": unterminated quoted field");
    }
    fields.push_back(std::move(current));
    return fields;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (const char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_double(double value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

void append_double(std::string& out, double value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, result.ptr);
}

void append_micro(std::string& out, std::int64_t micro) {
    if (micro < 0) {
        out.push_back('-');
        micro = -micro;
    }
    const std::int64_t whole = micro / 1000000;
    const std::int64_t frac = micro % 1000000;
    char buf[24];
    auto result = std::to_chars(buf, buf + sizeof(buf), whole);
    out.append(buf, result.ptr);
    if (frac != 0) {
        char digits[7] = {'0', '0', '0', '0', '0', '0', '\0'};
        std::int64_t f = frac;
        for (int pos = 5; pos >= 0; --pos) {
            digits[pos] = static_cast<char>('0' + f % 10);
            f /= 10;
        }
        int last = 5;
        while (digits[last] == '0') {
            --last;
        }
        out.push_back('.');
        out.append(digits, static_cast<std::size_t>(last + 1));
    }
}

double parse_double_field(const std::string& field, std::size_t line_no, const char* column) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        throw InputError("line " + std::to_string(line_no) + ": column " + column +
                         ": not a number: '" + field + "'");
    }
    return value;
}

long parse_int_field(const std::string& field, std::size_t line_no, const char* column) {
    long value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        throw InputError("line " + std::to_string(line_no) + ": column " + column +
                         ": not an integer: '" + field + "'");
    }
    return value;
}

bool CsvReader::next(std::vector<std::string>& fields) {
    std::string line;
    if (!std::getline(in_, line)) {
        return false;
    }
    ++line_no_;
    if (line_no_ == 1 && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF) {
        line.erase(0, 3);
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    fields = split_csv_line(line, line_no_);
    return true;
}

}  // namespace heatgen
