/**
 * @file errors.hpp
 * @brief Exception types shared by the tricolor modules.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tricolor
{

/// A precondition of an operation was not met (e.g. ill-formed input TDAG).
class ContractError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// Malformed text input. `line()` is 1-based; 0 when no line applies.
class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, const std::string& msg)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg)
        , m_line(line)
        , m_message(msg)
    {}

    std::size_t line() const noexcept { return m_line; }
    /// The message without the line prefix.
    const std::string& message() const noexcept { return m_message; }

private:
    std::size_t m_line;
    std::string m_message;
};

} // namespace tricolor
