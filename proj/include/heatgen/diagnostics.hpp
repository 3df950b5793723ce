#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace heatgen {

enum class Severity : std::uint8_t { info = 0, warning = 1, error = 2 };

struct Diagnostic {
    Severity severity = Severity::info;
    std::string id;       // building id or empty
    std::string message;
    std::size_t line_no = 0;  // source line/feature index, 0 if not applicable
};

class DiagnosticLog {
public:
    void add(Severity severity, std::string id, std::string message, std::size_t line_no = 0) {
        entries_.push_back({severity, std::move(id), std::move(message), line_no});
        if (severity == Severity::warning) {
            ++warnings_;
        } else if (severity == Severity::error) {
            ++errors_;
        }
    }

    const std::vector<Diagnostic>& entries() const { return entries_; }
    std::size_t warning_count() const { return warnings_; }
    std::size_t error_count() const { return errors_; }

    void append(const DiagnosticLog& other) {
        for (const auto& d : other.entries_) {
            entries_.push_back(d);
        }
        warnings_ += other.warnings_;
        errors_ += other.errors_;
    }

    void write(std::ostream& out) const {
        for (const auto& d : entries_) {
            switch (d.severity) {
                case Severity::info: out << "info"; break;
                case Severity::warning: out << "warning"; break;
                case Severity::error: out << "error"; break;
            }
            if (!d.id.empty()) {
                out << ' ' << d.id;
            }
            if (d.line_no != 0) {
                out << " line " << d.line_no;
            }
            out << ": " << d.message << '\n';
        }
    }

private:
    std::vector<Diagnostic> entries_;
    std::size_t warnings_ = 0;
    std::size_t errors_ = 0;
};

}  // namespace heatgen
