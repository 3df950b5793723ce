#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace heatgen {

// Run manifest: "key = value" lines in insertion order. Input and output
// entries carry SHA-256 content hashes so a rerun can be checked for
// reproducibility; duration_seconds is informational and naturally varies
// between runs.
class RunManifest {
public:
    void set(std::string key, std::string value);
    void set_input(const std::string& name, const std::string& path);
    void set_output(const std::string& name, const std::string& path);

    void write(const std::string& path) const;
    std::string to_string() const;

    static std::map<std::string, std::string> read(const std::string& path);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace heatgen
