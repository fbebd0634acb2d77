/**
 * @file tdag.hpp
 * @brief Tricolor DAG value type and its builder.
 */
#pragma once

#include "tricolor/color.hpp"
#include "tricolor/errors.hpp"

#include <boost/container/small_vector.hpp>

#include <compare>
#include <memory>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace tricolor
{

struct NodeId
{
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

struct ArcId
{
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(ArcId, ArcId) = default;
};

/// A node or an arc of one TDAG.
using ElementRef = std::variant<NodeId, ArcId>;

struct Node
{
    NodeId id;
    /// Text-format identifier; empty means anonymous.
    std::string name;
    Color color = Color::Red;
    /// Atom value. A labeled node never has outgoing arcs.
    std::optional<std::string> label;

    bool atomic() const noexcept { return label.has_value(); }
};

struct Arc
{
    ArcId id;
    NodeId from;
    std::string feature;
    NodeId to;
    Color color = Color::Red;
};

enum class BuildErrorKind
{
    DanglingEndpoint,
    DuplicateFeature,
    Cycle,
    AtomWithArcs,
    Unreachable,
    DuplicateName,
    EmptyFeature,
};

/**
 * @brief Structural construction error.
 *
 * Carries the offending element so callers (e.g. the text parser) can map it
 * back to a source location.
 */
class BuildError : public std::runtime_error
{
public:
    BuildError(BuildErrorKind kind, ElementRef element, const std::string& msg)
        : std::runtime_error(msg)
        , m_kind(kind)
        , m_element(element)
    {}

    BuildErrorKind kind() const noexcept { return m_kind; }
    ElementRef element() const noexcept { return m_element; }

private:
    BuildErrorKind m_kind;
    ElementRef m_element;
};

/// Whether build() rejects two arcs sharing (from, feature).
enum class FeaturePolicy
{
    Unique,
    /// Lets tests construct W6 violations for check_well_formed().
    AllowDuplicates,
};

class TdagBuilder;

/**
 * @brief Rooted, acyclic, feature-labeled graph with colored nodes and arcs.
 *
 * Values are immutable; every edit produces a new Tdag. Node and arc ids are
 * dense indices, stable for the lifetime of the value and carried over by
 * edits that derive one TDAG from another (TdagBuilder(const Tdag&)).
 *
 * Structural validity (endpoints, acyclicity, rootedness, atomic leaves) is
 * enforced at build time. Well-formedness (conditions W1-W6) is only checked,
 * and cached, so that ill-formed values can be constructed for tests.
 */
class Tdag
{
public:
    template <class T, std::size_t N>
    using SmallVector = boost::container::small_vector<T, N>;

    NodeId root() const noexcept { return m_rep->m_root; }

    std::span<const Node> nodes() const noexcept { return {m_rep->m_nodes.data(), m_rep->m_nodes.size()}; }
    std::span<const Arc> arcs() const noexcept { return {m_rep->m_arcs.data(), m_rep->m_arcs.size()}; }
    std::size_t node_count() const noexcept { return m_rep->m_nodes.size(); }
    std::size_t arc_count() const noexcept { return m_rep->m_arcs.size(); }
    std::size_t element_count() const noexcept { return node_count() + arc_count(); }

    const Node& node(NodeId id) const
    {
        if (id.value >= m_rep->m_nodes.size()) [[unlikely]]
            throw_bad_id(id);
        return m_rep->m_nodes[id.value];
    }
    const Arc& arc(ArcId id) const
    {
        if (id.value >= m_rep->m_arcs.size()) [[unlikely]]
            throw_bad_id(id);
        return m_rep->m_arcs[id.value];
    }
    bool contains(ElementRef ref) const noexcept;
    Color color(ElementRef ref) const;

    /// Outgoing arcs of `id`, sorted by feature name.
    std::span<const ArcId> out_arcs(NodeId id) const
    {
        const Rep& r = *m_rep;
        if (id.value >= r.m_nodes.size()) [[unlikely]]
            throw_bad_id(id);
        return {r.m_out.data() + r.m_out_offsets[id.value], r.m_out.data() + r.m_out_offsets[id.value + 1]};
    }
    std::span<const ArcId> in_arcs(NodeId id) const
    {
        const Rep& r = *m_rep;
        if (id.value >= r.m_nodes.size()) [[unlikely]]
            throw_bad_id(id);
        return {r.m_in.data() + r.m_in_offsets[id.value], r.m_in.data() + r.m_in_offsets[id.value + 1]};
    }
    std::optional<ArcId> find_arc(NodeId from, std::string_view feature) const;
    std::optional<NodeId> find_node(std::string_view name) const;

    /// Name used in text output: the node name, or `n<id>` when anonymous.
    std::string display_name(NodeId id) const;
    /// `<from-name>/<feature>`.
    std::string display_name(ArcId id) const;
    std::string display_name(ElementRef ref) const;
    /// Resolves a node name or an `<from-name>/<feature>` arc reference.
    std::optional<ElementRef> resolve(std::string_view ref) const;

    /// Cached result of check_well_formed(*this).empty().
    bool well_formed() const noexcept { return m_rep->m_well_formed; }

    /// Copy with the given elements recolored; structure unchanged.
    Tdag recolored(std::span<const std::pair<ElementRef, Color>> changes) const;

private:
    friend class TdagBuilder;

    /// Shared immutable representation; copies of a Tdag share it.
    struct Rep
    {
        SmallVector<Node, 6> m_nodes;
        SmallVector<Arc, 8> m_arcs;
        SmallVector<std::uint32_t, 8> m_out_offsets;
        SmallVector<ArcId, 8> m_out;
        SmallVector<std::uint32_t, 8> m_in_offsets;
        SmallVector<ArcId, 8> m_in;
        NodeId m_root;
        bool m_well_formed = false;

        void index();
    };

    explicit Tdag(std::shared_ptr<const Rep> rep)
        : m_rep(std::move(rep))
    {}
    [[noreturn]] static void throw_bad_id(ElementRef ref);

    std::shared_ptr<const Rep> m_rep;
};

/**
 * @brief Accumulates nodes and arcs, then validates them into a Tdag.
 *
 * Ids are handed out densely in insertion order. Referencing an id that was
 * never handed out yields a dangling-endpoint error at build().
 */
class TdagBuilder
{
public:
    TdagBuilder() = default;
    /// Starts from an existing TDAG; new ids continue after its elements.
    explicit TdagBuilder(const Tdag& base);

    NodeId add_node(Color color, std::optional<std::string> label = std::nullopt, std::string name = {});
    ArcId add_arc(NodeId from, std::string feature, NodeId to, Color color);

    std::size_t node_count() const noexcept { return m_nodes.size(); }

    /// Validates and returns the TDAG. Throws BuildError.
    Tdag build(NodeId root, FeaturePolicy policy = FeaturePolicy::Unique) const&;
    Tdag build(NodeId root, FeaturePolicy policy = FeaturePolicy::Unique) &&;

private:
    static Tdag assemble(Tdag::SmallVector<Node, 6> nodes, Tdag::SmallVector<Arc, 8> arcs, NodeId root,
                         FeaturePolicy policy);

    Tdag::SmallVector<Node, 6> m_nodes;
    Tdag::SmallVector<Arc, 8> m_arcs;
};

} // namespace tricolor
