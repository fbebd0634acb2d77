/**
 * @file color.hpp
 * @brief Constraint strength carried by every TDAG node and arc.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace tricolor
{

/**
 * @brief Three-valued constraint strength.
 *
 * Red is essential, yellow may be ignored but never violated, green may be
 * violated. The enumerator values encode the strength order
 * Green < Yellow < Red, so the built-in comparisons are meaningful.
 */
enum class Color : std::uint8_t
{
    Green = 0,
    Yellow = 1,
    Red = 2,
};

inline constexpr Color kAllColors[] = {Color::Red, Color::Yellow, Color::Green};

/// Color of the element that results from unifying two elements.
constexpr Color join(Color a, Color b) noexcept
{
    return a < b ? b : a;
}

/// True when an element of color `general` may subsume one of color `specific`.
constexpr bool color_subsumes(Color general, Color specific) noexcept
{
    return general <= specific;
}

/// One painter step weaker, or nullopt for green.
constexpr std::optional<Color> weakened(Color c) noexcept
{
    switch (c)
    {
    case Color::Red:
        return Color::Yellow;
    case Color::Yellow:
        return Color::Green;
    case Color::Green:
        break;
    }
    return std::nullopt;
}

std::string_view to_string(Color c) noexcept;
std::optional<Color> parse_color(std::string_view text) noexcept;

} // namespace tricolor
