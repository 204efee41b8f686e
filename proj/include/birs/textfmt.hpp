#pragma once

#include <string>
#include <string_view>

namespace birs::text {

// Shortest round-trip decimal, never in exponent form. Negative zero prints
// as "0".
std::string decimal(double v);

// Like decimal(), but integral values keep a trailing ".0".
std::string decimal_point(double v);

// Fixed number of fractional digits; "-0.000" collapses to "0.000".
std::string fixed(double v, int digits);

// Double-quoted with backslash escapes for quote, backslash and control
// characters.
std::string quoted(std::string_view s);

// Inverse of quoted(); `s` must start at the opening quote. Sets `consumed`
// to the number of bytes read including both quotes.
std::string unquote(std::string_view s, std::size_t& consumed);

std::string_view trim(std::string_view s);

}  // namespace birs::text
