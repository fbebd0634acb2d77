/**
 * @file tdag_text.hpp
 * @brief Line-oriented TDAG text format.
 *
 * @code
 * # comment
 * root <id>
 * node <id> color=<red|yellow|green> [label=<atom>]
 * arc <from-id> <feature> <to-id> color=<red|yellow|green>
 * @endcode
 *
 * Lines may appear in any order; `root` must appear exactly once.
 */
#pragma once

#include "tricolor/tdag.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tricolor
{

/// Throws ParseError (with the offending line) on malformed or structurally invalid input.
Tdag parse_tdag(std::string_view text, FeaturePolicy policy = FeaturePolicy::Unique);

std::string serialize_tdag(const Tdag& t);

Tdag load_tdag(const std::string& path);

/// Splits on whitespace, dropping a trailing `#` comment.
std::vector<std::string_view> split_fields(std::string_view line);

/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::string& path);

} // namespace tricolor
