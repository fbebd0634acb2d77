/**
 * @file partition.hpp
 * @brief Constraint sets of TDAGs and the shared / source-only / violated /
 *        target-only partition between a source and a target.
 */
#pragma once

#include "tricolor/algebra.hpp"

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace tricolor
{

enum class ConstraintKind : std::uint8_t
{
    /// A `value`-labeled arc leaves the node at `anchor`.
    Arc,
    /// The node at `anchor` is the atom `value`.
    AtomBinding,
    /// `anchor` and `other` reach the same node.
    Reentrancy,
};

std::string_view to_string(ConstraintKind k) noexcept;

/**
 * One piece of information carried by a TDAG. Paths are root paths, each
 * node named by its lexicographically least path. Strength does not take
 * part in identity.
 */
struct Constraint
{
    ConstraintKind kind = ConstraintKind::Arc;
    Path anchor;
    /// Feature (Arc) or atom (AtomBinding); empty for Reentrancy.
    std::string value;
    /// Second path of a Reentrancy, greater than `anchor`; empty otherwise.
    Path other;
    Color strength = Color::Red;

    /// Identity without strength.
    auto identity() const { return std::tie(anchor, kind, value, other); }
    bool same_as(const Constraint& c) const { return identity() == c.identity(); }
};

std::string to_string(const Constraint& c);

/**
 * One Arc constraint per arc, one AtomBinding per labeled node and one
 * Reentrancy per pair of distinct root paths of a node; sorted by identity.
 */
std::vector<Constraint> extract_constraints(const Tdag& t);

enum class Verdict
{
    FullyInterlingual,
    UnderGenerated,
    OverGenerated,
    Inconsistent,
    Mixed,
};

std::string_view to_string(Verdict v) noexcept;

struct PartitionReport
{
    /// Source constraints the target shares (source strength).
    std::vector<Constraint> c0;
    /// Source constraints the target lacks but does not contradict.
    std::vector<Constraint> c_plus;
    /// Source constraints the target contradicts.
    std::vector<Constraint> c_minus;
    /// Target constraints the source lacks (target strength).
    std::vector<Constraint> c_new;
    Verdict verdict = Verdict::FullyInterlingual;
};

/// Verdict implied by which of C+, C- and C_new are empty.
Verdict verdict_for(bool plus_empty, bool minus_empty, bool new_empty) noexcept;

/**
 * Partitions the source constraints: shared with the target (C0); contradicted
 * by it, i.e. the target binds the same anchor to a different atom or makes an
 * atomic anchor complex or vice versa (C-); otherwise C+. Target constraints
 * without a source match form C_new.
 */
PartitionReport classify(const Tdag& source, const Tdag& target);
PartitionReport classify(const std::vector<Constraint>& source, const std::vector<Constraint>& target);

/// (|C-|, |C+|, |C_new|); smaller is better, compared lexicographically.
std::tuple<std::size_t, std::size_t, std::size_t> score(const PartitionReport& report);

/// A constraint reduced to interned ids, for batch classification.
/// Bit set over dense ids handed out by a ConstraintIndex.
using IdMask = boost::container::small_vector<std::uint64_t, 2>;

/// A constraint set in the form ConstraintIndex::classify() works on.
struct InternedSet
{
    /// Identity id of each constraint, in the order of the original set.
    std::vector<std::uint32_t> ids;
    /// One bit per identity id present.
    IdMask members;
    /// One bit per anchor id holding an atom binding.
    IdMask atom_anchors;
    /// One bit per anchor id with at least one outgoing arc.
    IdMask arc_anchors;
    /// Identity ids this set contradicts as a target, valid while the index
    /// still has `threats_known` identities (see ConstraintIndex::refresh()).
    IdMask threatened;
    std::size_t threats_known = 0;
};

/// Identity-id masks of the four constraint sets.
struct PartitionMasks
{
    IdMask c0;
    IdMask c_plus;
    IdMask c_minus;
    IdMask c_new;
};

/**
 * @brief Interns constraint identities so many sets can be classified
 *        against each other cheaply.
 *
 * Sets interned through one index are comparable with each other only.
 */
class ConstraintIndex
{
public:
    InternedSet intern(const std::vector<Constraint>& set);

    /// Number of distinct identities seen so far; ids are below this.
    std::size_t identity_count() const noexcept { return m_identity_count; }

    /// Recomputes the cached contradiction mask of a set interned earlier.
    void refresh(InternedSet& set) const;

    /// The classification behind classify(), as masks over identity ids.
    void classify(const InternedSet& source, const InternedSet& target, PartitionMasks& out) const;

private:
    IdMask threats_of(const InternedSet& set) const;

    std::uint32_t id_of(std::unordered_map<std::string, std::uint32_t>& table, std::string key);

    std::unordered_map<std::string, std::uint32_t> m_identities;
    std::unordered_map<std::string, std::uint32_t> m_paths;
    std::size_t m_identity_count = 0;
    /// Per anchor id: identities contradicted by a target atom there.
    std::vector<IdMask> m_clash_with_atom;
    /// Per anchor id: identities contradicted by a target arc there.
    std::vector<IdMask> m_clash_with_arc;
};

inline bool mask_test(const IdMask& m, std::uint32_t id) noexcept
{
    return id / 64 < m.size() && (m[id / 64] >> (id % 64) & 1u);
}

} // namespace tricolor
