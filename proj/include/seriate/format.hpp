#pragma once

#include <charconv>
#include <string>

namespace seriate {

// Locale-independent shortest decimal with a fixed number of significant
// digits. All file output goes through here so reruns are byte-identical.
inline std::string format_real(double v, int precision = 12) {
    if (v == 0.0) v = 0.0; // flush -0
    char buf[64];
    const std::to_chars_result r =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
    return std::string(buf, r.ptr);
}

} // namespace seriate
