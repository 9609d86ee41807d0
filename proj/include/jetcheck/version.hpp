#pragma once

#include <cstdint>
#include <string>

namespace jetcheck {

inline constexpr const char* version_string = "0.1.0";

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string digest_hex(const std::string& data) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a64(data);
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) out += hex[(h >> shift) & 0xF];
    return out;
}

} // namespace jetcheck
