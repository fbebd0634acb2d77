/**
 * @file generator.hpp
 * @brief Generation from a TDAG by top-down derivation search under the
 *        color-aware termination conditions.
 */
#pragma once

#include "tricolor/grammar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tricolor
{

/// Depth budget used when none is given.
inline constexpr std::size_t kDefaultDepth = 12;

struct Derivation
{
    DerivationTree tree;
    std::string surface;
    /// The part of the input the derivation produced, all red.
    Tdag derived;
};

enum class Coverage
{
    DerivedRed,
    LeftYellow,
    LeftGreen,
    /// A red element the derivation did not produce.
    MissingRed,
};

std::string_view to_string(Coverage c) noexcept;

struct GenReport
{
    std::optional<Derivation> derivation;
    /// Empty on success.
    std::string failure;
    /// Indexed by node id and arc id of the input.
    std::vector<Coverage> node_coverage;
    std::vector<Coverage> arc_coverage;
    /// Call log of the successful derivation, one line per call and return.
    std::vector<std::string> trace;

    bool success() const noexcept { return derivation.has_value(); }
};

struct GenerateOptions
{
    std::size_t depth_budget = kDefaultDepth;
    /// Skip a constituent that repeats an ancestor's symbol on the same input
    /// node without anything derived in between.
    bool prune_loops = true;
};

/**
 * Iterative deepening over derivation-tree depth, rules tried in grammar
 * order. A rule application survives only if everything it says about the
 * semantics exists in `t` at some color and no two derived nodes land on
 * the same input node. A complete derivation succeeds when
 * check_termination() passes.
 *
 * Throws ContractError when `t` is not well-formed or the budget is 0.
 */
GenReport generate(const Tdag& t, const Grammar& grammar, const GenerateOptions& options = {});

/// Every successful derivation within the budget, in search order.
std::vector<Derivation> enumerate_derivations(const Tdag& t, const Grammar& grammar,
                                              const GenerateOptions& options = {});

struct TerminationCheck
{
    /// Every red node and arc of the input was derived.
    bool all_red_derived = false;
    /// The derivation introduced nothing absent from the input.
    bool nothing_new = false;
    /// Every reentrancy among red paths was derived as a reentrancy.
    bool red_reentrancies_derived = false;
    /// One line per problem found.
    std::vector<std::string> problems;

    bool passed() const noexcept { return all_red_derived && nothing_new && red_reentrancies_derived; }
};

TerminationCheck check_termination(const Tdag& t, const Derivation& derivation);

/// red_core(t) subsumes the derived TDAG, which subsumes saturate(t).
bool verify_sandwich(const Tdag& t, const Derivation& derivation);

} // namespace tricolor
