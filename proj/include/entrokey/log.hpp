#pragma once

#include <cstdlib>
#include <iostream>
#include <string>
#include <string_view>

namespace entrokey::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

// Threshold comes from ENTROKEY_LOG in {error, warn, info, debug}; default warn.
inline Level& threshold() {
    static Level level = [] {
        const char* env = std::getenv("ENTROKEY_LOG");
        if (env == nullptr) return Level::warn;
        std::string_view v(env);
        if (v == "error") return Level::error;
        if (v == "warn") return Level::warn;
        if (v == "info") return Level::info;
        if (v == "debug") return Level::debug;
        return Level::warn;
    }();
    return level;
}

inline void write(Level level, std::string_view message) {
    if (static_cast<int>(level) > static_cast<int>(threshold())) return;
    static constexpr const char* names[] = {"error", "warn", "info", "debug"};
    std::cerr << "entrokey [" << names[static_cast<int>(level)] << "] " << message << '\n';
}

inline void error(std::string_view m) { write(Level::error, m); }
inline void warn(std::string_view m) { write(Level::warn, m); }
inline void info(std::string_view m) { write(Level::info, m); }
inline void debug(std::string_view m) { write(Level::debug, m); }

}  // namespace entrokey::log
