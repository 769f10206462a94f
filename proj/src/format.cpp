#include "rsj/format.hpp"

#include <array>
#include <charconv>

namespace rsj {

std::string format_fixed6(double value)
{
    std::array<char, 512> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, 6);
    return {buf.data(), end};
}

std::string format_shortest(double value)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return {buf.data(), end};
}

}  // namespace rsj
