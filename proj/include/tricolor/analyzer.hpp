/**
 * @file analyzer.hpp
 * @brief Bottom-up chart analysis of a token sequence into a red TDAG.
 */
#pragma once

#include "tricolor/grammar.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tricolor
{

struct Analysis
{
    /// A red root whose `pred` arc holds the start symbol's semantics.
    Tdag tdag;
    /// The first complete analysis in rule-priority order.
    DerivationTree tree;
    /// Number of complete start-symbol analyses found.
    std::size_t parse_count = 0;
};

class AnalysisError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Whitespace-separated words; sentence-final punctuation is dropped.
std::vector<std::string> tokenize(std::string_view sentence);

/**
 * Chart parse over unary and binary rules, composing rule equations by
 * unification. Ties between complete analyses go to the one whose rules,
 * read in preorder, come first in the grammar.
 *
 * Throws AnalysisError for unknown words and when no complete analysis
 * exists; the latter names the longest edge found.
 */
Analysis analyze(const std::vector<std::string>& tokens, const Grammar& grammar);

} // namespace tricolor
