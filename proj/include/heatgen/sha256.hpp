#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace heatgen {

// Streaming SHA-256 (FIPS 180-4), used for file hashes in run manifests.
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(const void* data, std::size_t length);
    std::array<std::uint8_t, 32> digest();

    static std::string hex_digest(std::string_view data);
    static std::string hex_file_digest(const std::string& path);

private:
    void process_block(const std::uint8_t* block);

    std::uint32_t state_[8];
    std::uint64_t total_bytes_ = 0;
    std::uint8_t buffer_[64];
    std::size_t buffered_ = 0;
};

std::string to_hex(const std::array<std::uint8_t, 32>& digest);

}  // namespace heatgen
