#include "heatgen/manifest.hpp"

#include <fstream>

#include "heatgen/errors.hpp"
#include "heatgen/sha256.hpp"

namespace heatgen {

void RunManifest::set(std::string key, std::string value) {
    entries_.emplace_back(std::move(key), std::move(value));
}

void RunManifest::set_input(const std::string& name, const std::string& path) {
    set("input." + name, path);
    set("input." + name + ".sha256", Sha256::hex_file_digest(path));
}

void RunManifest::set_output(const std::string& name, const std::string& path) {
    set("output." + name, path);
    set("output." + name + ".sha256", Sha256::hex_file_digest(path));
}

std::string RunManifest::to_string() const {
    std::string out;
    for (const auto& [key, value] : entries_) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

void RunManifest::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write manifest: " + path);
    }
    const std::string text = to_string();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::map<std::string, std::string> RunManifest::read(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot read manifest: " + path);
    }
    std::map<std::string, std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t eq = line.find(" = ");
        if (eq == std::string::npos) {
            continue;
        }
        entries[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return entries;
}

}  // namespace heatgen
