/**
 * @file transfer.hpp
 * @brief Semantic transfer operations: additions of yellow/green elements
 *        and the painter, plus the replayable trace format.
 *
 * Trace text, one op per line (`#` starts a comment):
 * @code
 * paint <node | from/feature> <from-color> <to-color>
 * add-node <yellow|green> <attach> <feature> <new-name> [label=<atom>]
 * add-arc <yellow|green> <from> <feature> <to>
 * @endcode
 */
#pragma once

#include "tricolor/tdag.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tricolor
{

/// New yellow node reached from `attach` through a new yellow arc.
struct AddYellowNode
{
    NodeId attach;
    std::string feature;
    std::optional<std::string> label;
    std::string name;

    friend bool operator==(const AddYellowNode&, const AddYellowNode&) = default;
};

struct AddYellowArc
{
    NodeId from;
    std::string feature;
    NodeId to;

    friend bool operator==(const AddYellowArc&, const AddYellowArc&) = default;
};

/// New green node reached from `attach` through a new green arc.
struct AddGreenNode
{
    NodeId attach;
    std::string feature;
    std::optional<std::string> label;
    std::string name;

    friend bool operator==(const AddGreenNode&, const AddGreenNode&) = default;
};

struct AddGreenArc
{
    NodeId from;
    std::string feature;
    NodeId to;

    friend bool operator==(const AddGreenArc&, const AddGreenArc&) = default;
};

struct PaintRedToYellow
{
    ElementRef target;

    friend bool operator==(const PaintRedToYellow&, const PaintRedToYellow&) = default;
};

struct PaintYellowToGreen
{
    ElementRef target;

    friend bool operator==(const PaintYellowToGreen&, const PaintYellowToGreen&) = default;
};

using TransferOp =
    std::variant<AddYellowNode, AddYellowArc, AddGreenNode, AddGreenArc, PaintRedToYellow, PaintYellowToGreen>;

/// True for the two painter variants.
bool is_paint(const TransferOp& op) noexcept;

/// Why an op was refused.
class TransferError : public std::runtime_error
{
public:
    enum class Kind
    {
        /// A coordinate does not name an element of the TDAG.
        Coordinate,
        /// The op's guard does not hold for this TDAG.
        Rejected,
    };

    TransferError(Kind kind, const std::string& msg)
        : std::runtime_error(msg)
        , m_kind(kind)
    {}

    Kind kind() const noexcept { return m_kind; }

private:
    Kind m_kind;
};

/**
 * True iff `target` is not the root, is not green, and weakening it one step
 * leaves the TDAG well-formed.
 *
 * Weakening a node also weakens its incoming arcs that carry the node's
 * current color: a red arc may only join red nodes and a yellow arc may not
 * reach a green node, so a leaf and the arc holding it can only be weakened
 * together. Weakening an arc changes that arc alone.
 */
bool can_paint(const Tdag& t, ElementRef target);

/**
 * Applies `op` to `t`, returning a new well-formed TDAG; `t` is unchanged.
 * Throws TransferError (Coordinate or Rejected) and ContractError when `t`
 * is not well-formed.
 */
Tdag apply_op(const Tdag& t, const TransferOp& op);

/// One line of trace text for `op`, naming elements as they appear in `before`.
std::string format_op(const Tdag& before, const TransferOp& op);

/// Parses one op line against `before`. Throws ParseError or TransferError.
TransferOp parse_op(const Tdag& before, std::string_view line);

struct TransferStep
{
    TransferOp op;
    Tdag result;
};

/// An initial TDAG and the ops applied to it, with every intermediate result.
struct TransferTrace
{
    Tdag initial;
    std::vector<TransferStep> steps;

    const Tdag& final_tdag() const noexcept { return steps.empty() ? initial : steps.back().result; }
};

std::string format_trace(const TransferTrace& trace);

/// Applies every op line of `text` in order. ParseError carries the line number.
TransferTrace replay_trace(const Tdag& initial, std::string_view text);

} // namespace tricolor
