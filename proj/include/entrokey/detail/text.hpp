#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace entrokey::detail {

// Codepoints with the Unicode White_Space property (15.0).
inline bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case 0x0009: case 0x000A: case 0x000B: case 0x000C: case 0x000D:
        case 0x0020: case 0x0085: case 0x00A0: case 0x1680:
        case 0x2000: case 0x2001: case 0x2002: case 0x2003: case 0x2004:
        case 0x2005: case 0x2006: case 0x2007: case 0x2008: case 0x2009:
        case 0x200A: case 0x2028: case 0x2029: case 0x202F: case 0x205F:
        case 0x3000:
            return true;
        default:
            return false;
    }
}

// Decodes the codepoint starting at `pos`, advancing `pos` past it.
// Malformed bytes are passed through one at a time as their own codepoint,
// so tokenization never fails on broken input.
inline char32_t next_codepoint(std::string_view s, std::size_t& pos) {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    const unsigned char b0 = byte(pos);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
    else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
    else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }
    else { ++pos; return b0; }
    if (pos + len > s.size()) { ++pos; return b0; }
    for (std::size_t i = 1; i < len; ++i) {
        const unsigned char bi = byte(pos + i);
        if ((bi & 0xC0) != 0x80) { ++pos; return b0; }
        cp = (cp << 6) | (bi & 0x3F);
    }
    pos += len;
    return cp;
}

inline std::size_t codepoint_count(std::string_view s) {
    std::size_t n = 0, pos = 0;
    while (pos < s.size()) {
        next_codepoint(s, pos);
        ++n;
    }
    return n;
}

// ASCII-only lowering; multibyte sequences are left untouched.
inline std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

}  // namespace entrokey::detail
