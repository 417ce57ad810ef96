#include "shotnoise/format.hpp"

#include <charconv>
#include <cstdio>

namespace shotnoise {

std::string format_number(double value) {
    char buf[64];
    int n = std::snprintf(buf, sizeof buf, "%.*g", output_digits, value);
    return std::string(buf, static_cast<std::size_t>(n));
}

double round_to_output(double value) {
    double out = value;
    parse_number(format_number(value), out);
    return out;
}

bool parse_number(std::string_view text, double& out) {
    if (text.empty())
        return false;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (*first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

} // namespace shotnoise
