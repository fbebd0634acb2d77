#include "tricolor/partition.hpp"

#include <algorithm>
#include <bit>

namespace tricolor
{

namespace
{

Color weakest_on_path(const Tdag& t, const Path& p)
{
    Color weakest = Color::Red;
    NodeId at = t.root();
    for (const std::string& feature : p)
    {
        const Arc& a = t.arc(*t.find_arc(at, feature));
        weakest = std::min(weakest, a.color);
        at = a.to;
    }
    return weakest;
}

std::string path_key(const Path& p)
{
    std::string key;
    for (const std::string& f : p)
    {
        key += f;
        key += '\x1f';
    }
    return key;
}

void mask_set(IdMask& m, std::uint32_t id)
{
    if (id / 64 >= m.size())
        m.resize(id / 64 + 1, 0);
    m[id / 64] |= std::uint64_t{1} << (id % 64);
}

std::uint64_t word(const IdMask& m, std::size_t i) noexcept
{
    return i < m.size() ? m[i] : 0;
}

} // namespace

std::string_view to_string(ConstraintKind k) noexcept
{
    switch (k)
    {
    case ConstraintKind::Arc:
        return "arc";
    case ConstraintKind::AtomBinding:
        return "atom";
    case ConstraintKind::Reentrancy:
        return "reentrancy";
    }
    return "?";
}

std::string to_string(const Constraint& c)
{
    std::string out = std::string(to_string(c.kind)) + " " + path_to_string(c.anchor);
    if (c.kind == ConstraintKind::Reentrancy)
        out += " = " + path_to_string(c.other);
    else
        out += " " + c.value;
    out += " (" + std::string(to_string(c.strength)) + ")";
    return out;
}

std::vector<Constraint> extract_constraints(const Tdag& t)
{
    if (!t.well_formed())
        throw ContractError("extract_constraints: input TDAG is not well-formed");
    const auto paths = root_paths(t);
    std::vector<Constraint> out;
    for (const Arc& a : t.arcs())
        out.push_back({ConstraintKind::Arc, paths[a.from.value].front(), a.feature, {}, a.color});
    for (const Node& n : t.nodes())
    {
        const auto& mine = paths[n.id.value];
        if (n.label)
            out.push_back({ConstraintKind::AtomBinding, mine.front(), *n.label, {}, n.color});
        for (std::size_t i = 0; i < mine.size(); ++i)
        {
            for (std::size_t j = i + 1; j < mine.size(); ++j)
            {
                Color strength = std::min(weakest_on_path(t, mine[i]), weakest_on_path(t, mine[j]));
                out.push_back({ConstraintKind::Reentrancy, mine[i], {}, mine[j], strength});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Constraint& x, const Constraint& y) { return x.identity() < y.identity(); });
    return out;
}

std::string_view to_string(Verdict v) noexcept
{
    switch (v)
    {
    case Verdict::FullyInterlingual:
        return "fully-interlingual";
    case Verdict::UnderGenerated:
        return "under-generated";
    case Verdict::OverGenerated:
        return "over-generated";
    case Verdict::Inconsistent:
        return "inconsistent";
    case Verdict::Mixed:
        return "mixed";
    }
    return "?";
}

Verdict verdict_for(bool plus_empty, bool minus_empty, bool new_empty) noexcept
{
    if (!minus_empty)
        return Verdict::Inconsistent;
    if (plus_empty && new_empty)
        return Verdict::FullyInterlingual;
    if (!plus_empty && new_empty)
        return Verdict::UnderGenerated;
    if (plus_empty && !new_empty)
        return Verdict::OverGenerated;
    return Verdict::Mixed;
}

std::uint32_t ConstraintIndex::id_of(std::unordered_map<std::string, std::uint32_t>& table, std::string key)
{
    auto [it, inserted] = table.try_emplace(std::move(key), static_cast<std::uint32_t>(table.size()));
    return it->second;
}

InternedSet ConstraintIndex::intern(const std::vector<Constraint>& set)
{
    InternedSet out;
    out.ids.reserve(set.size());
    for (const Constraint& c : set)
    {
        std::string anchor_key = path_key(c.anchor);
        const std::uint32_t anchor = id_of(m_paths, anchor_key);
        std::string identity = std::string(1, static_cast<char>('0' + static_cast<int>(c.kind))) + '\x1e' +
                               anchor_key + '\x1e' + c.value + '\x1e' + path_key(c.other);
        const std::uint32_t id = id_of(m_identities, std::move(identity));
        if (id == m_identity_count)
        {
            ++m_identity_count;
            if (anchor >= m_clash_with_atom.size())
            {
                m_clash_with_atom.resize(anchor + 1);
                m_clash_with_arc.resize(anchor + 1);
            }
            // An atom clashes with any other atom or with arcs at its anchor;
            // an arc clashes with an atom there; reentrancies never clash.
            if (c.kind == ConstraintKind::AtomBinding)
            {
                mask_set(m_clash_with_atom[anchor], id);
                mask_set(m_clash_with_arc[anchor], id);
            }
            else if (c.kind == ConstraintKind::Arc)
            {
                mask_set(m_clash_with_atom[anchor], id);
            }
        }
        out.ids.push_back(id);
        mask_set(out.members, id);
        if (c.kind == ConstraintKind::AtomBinding)
            mask_set(out.atom_anchors, anchor);
        else if (c.kind == ConstraintKind::Arc)
            mask_set(out.arc_anchors, anchor);
    }
    refresh(out);
    return out;
}

IdMask ConstraintIndex::threats_of(const InternedSet& set) const
{
    // Anything clashing with one of the set's atoms, and atoms at anchors
    // where it has arcs.
    IdMask threatened((m_identity_count + 63) / 64, 0);
    auto add = [&](const IdMask& anchors, const std::vector<IdMask>& by_anchor) {
        for (std::size_t w = 0; w < anchors.size(); ++w)
        {
            for (std::uint64_t rest = anchors[w]; rest; rest &= rest - 1)
            {
                const IdMask& ids = by_anchor[w * 64 + static_cast<std::size_t>(std::countr_zero(rest))];
                for (std::size_t k = 0; k < ids.size(); ++k)
                    threatened[k] |= ids[k];
            }
        }
    };
    add(set.atom_anchors, m_clash_with_atom);
    add(set.arc_anchors, m_clash_with_arc);
    return threatened;
}

void ConstraintIndex::refresh(InternedSet& set) const
{
    set.threatened = threats_of(set);
    set.threats_known = m_identity_count;
}

void ConstraintIndex::classify(const InternedSet& source, const InternedSet& target, PartitionMasks& out) const
{
    const std::size_t words = std::max(source.members.size(), target.members.size());
    for (IdMask* m : {&out.c0, &out.c_plus, &out.c_minus, &out.c_new})
        m->resize(words);
    const IdMask fresh = target.threats_known == m_identity_count ? IdMask{} : threats_of(target);
    const IdMask& threatened = target.threats_known == m_identity_count ? target.threatened : fresh;
    for (std::size_t w = 0; w < words; ++w)
    {
        const std::uint64_t s = word(source.members, w);
        const std::uint64_t t = word(target.members, w);
        const std::uint64_t only_source = s & ~t;
        const std::uint64_t threat = word(threatened, w);
        out.c0[w] = s & t;
        out.c_new[w] = t & ~s;
        out.c_minus[w] = only_source & threat;
        out.c_plus[w] = only_source & ~threat;
    }
}

PartitionReport classify(const std::vector<Constraint>& source, const std::vector<Constraint>& target)
{
    ConstraintIndex index;
    const InternedSet s = index.intern(source);
    const InternedSet t = index.intern(target);
    PartitionMasks masks;
    index.classify(s, t, masks);

    PartitionReport report;
    for (std::size_t i = 0; i < source.size(); ++i)
    {
        const std::uint32_t id = s.ids[i];
        if (mask_test(masks.c0, id))
            report.c0.push_back(source[i]);
        else if (mask_test(masks.c_minus, id))
            report.c_minus.push_back(source[i]);
        else
            report.c_plus.push_back(source[i]);
    }
    for (std::size_t j = 0; j < target.size(); ++j)
    {
        if (mask_test(masks.c_new, t.ids[j]))
            report.c_new.push_back(target[j]);
    }
    report.verdict = verdict_for(report.c_plus.empty(), report.c_minus.empty(), report.c_new.empty());
    return report;
}

PartitionReport classify(const Tdag& source, const Tdag& target)
{
    return classify(extract_constraints(source), extract_constraints(target));
}

std::tuple<std::size_t, std::size_t, std::size_t> score(const PartitionReport& report)
{
    return {report.c_minus.size(), report.c_plus.size(), report.c_new.size()};
}

} // namespace tricolor
