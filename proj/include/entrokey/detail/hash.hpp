#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace entrokey::detail {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

inline std::uint64_t fnv1a_bytes(std::uint64_t h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
    return h;
}

// Length-prefixed FNV-1a over a token sequence. The prefix keeps
// ["ab","c"] and ["a","bc"] distinct.
inline std::uint64_t hash_tokens(const std::vector<std::string>& tokens) {
    std::uint64_t h = kFnvOffset;
    for (const std::string& t : tokens) {
        std::uint64_t len = t.size();
        unsigned char prefix[8];
        for (int i = 0; i < 8; ++i) prefix[i] = static_cast<unsigned char>((len >> (8 * i)) & 0xff);
        h = fnv1a_bytes(h, prefix, 8);
        h = fnv1a_bytes(h, t.data(), t.size());
    }
    return h;
}

inline std::string hash_to_hex(std::uint64_t h) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace entrokey::detail
