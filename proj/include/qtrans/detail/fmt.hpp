#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace qtrans::detail {

// Locale-independent float rendering. CSV and report files must be
// byte-stable across runs and hosts, so iostreams are out.

// shortest representation that round-trips
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// fixed number of significant digits (general format)
inline std::string format_sig(double v, int digits = 15) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
    return std::string(buf, res.ptr);
}

}  // namespace qtrans::detail
