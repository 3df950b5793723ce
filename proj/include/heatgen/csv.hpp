#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace heatgen {

// RFC-4180-style field splitting: commas separate fields, double quotes wrap
// fields containing commas or quotes, "" escapes a quote. Embedded newlines
// inside quoted fields are not supported by the canonical schemas.
std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no);

// Quotes a field only when needed, so canonical files stay minimal.
std::string csv_escape(std::string_view field);

// Shortest representation that parses back to the same double.
std::string format_double(double value);
void append_double(std::string& out, double value);

// Fixed-point micro-unit formatting: 3271828 -> "3.271828", 5000000 -> "5".
// Used for series values so that written bytes are canonical and cheap to
// produce.
void append_micro(std::string& out, std::int64_t micro);

double parse_double_field(const std::string& field, std::size_t line_no, const char* column);
long parse_int_field(const std::string& field, std::size_t line_no, const char* column);

// Reads one CSV line per call; skips a UTF-8 BOM on the first line. Returns
// false at end of input. Carriage returns before the newline are stripped.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    bool next(std::vector<std::string>& fields);
    std::size_t line_no() const { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

}  // namespace heatgen
