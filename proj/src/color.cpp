#include "tricolor/color.hpp"

namespace tricolor
{

std::string_view to_string(Color c) noexcept
{
    switch (c)
    {
    case Color::Red:
        return "red";
    case Color::Yellow:
        return "yellow";
    case Color::Green:
        return "green";
    }
    return "?";
}

std::optional<Color> parse_color(std::string_view text) noexcept
{
    if (text == "red")
        return Color::Red;
    if (text == "yellow")
        return Color::Yellow;
    if (text == "green")
        return Color::Green;
    return std::nullopt;
}

} // namespace tricolor
