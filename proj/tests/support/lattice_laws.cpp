#include "lattice_laws.hpp"

#include "tricolor/algebra.hpp"
#include "tricolor/tdag_text.hpp"

#include <bit>
#include <chrono>
#include <unordered_map>

namespace tricolor::testkit
{

namespace
{

using Row = std::vector<std::uint64_t>;

bool test(const Row& r, std::size_t i)
{
    return r[i / 64] >> (i % 64) & 1u;
}

bool subset(const Row& small, const Row& large)
{
    for (std::size_t w = 0; w < small.size(); ++w)
    {
        if (small[w] & ~large[w])
            return false;
    }
    return true;
}

class Clock
{
public:
    explicit Clock(std::optional<double> deadline)
        : m_deadline(deadline)
    {}

    double elapsed() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - m_start).count();
    }
    bool expired() const { return m_deadline && elapsed() > *m_deadline; }

private:
    std::chrono::steady_clock::time_point m_start = std::chrono::steady_clock::now();
    std::optional<double> m_deadline;
};

} // namespace

LatticeReport check_lattice_laws(const std::vector<Tdag>& universe, std::optional<double> deadline_seconds)
{
    LatticeReport report;
    report.elements = universe.size();
    const std::size_t n = universe.size();
    const std::size_t words = (n + 63) / 64;
    Clock clock(deadline_seconds);
    auto violation = [&](std::string what) {
        ++report.violations;
        if (report.examples.size() < 5)
            report.examples.push_back(std::move(what));
    };
    auto stop = [&](const char* phase) {
        report.completed = false;
        report.phase = phase;
        report.seconds = clock.elapsed();
        return report;
    };

    // upper[a] = every c with a subsuming c.
    std::vector<Row> upper(n, Row(words, 0));
    for (std::size_t a = 0; a < n; ++a)
    {
        if (clock.expired())
            return stop("subsumption matrix");
        for (std::size_t c = 0; c < n; ++c)
        {
            if (subsumes(universe[a], universe[c]))
                upper[a][c / 64] |= std::uint64_t{1} << (c % 64);
        }
        report.subsumption_checks += n;
    }

    for (std::size_t a = 0; a < n; ++a)
    {
        if (!test(upper[a], a))
            violation("not reflexive:\n" + serialize_tdag(universe[a]));
        for (std::size_t b = a + 1; b < n; ++b)
        {
            if (test(upper[a], b) && test(upper[b], a))
                violation("mutual subsumption between distinct classes:\n" + serialize_tdag(universe[a]) + "--\n" +
                          serialize_tdag(universe[b]));
        }
    }
    for (std::size_t a = 0; a < n; ++a)
    {
        if (clock.expired())
            return stop("transitivity");
        for (std::size_t b = 0; b < n; ++b)
        {
            if (b != a && test(upper[a], b) && !subset(upper[b], upper[a]))
                violation("not transitive through:\n" + serialize_tdag(universe[b]));
        }
    }

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i)
        index.emplace(canonical_form(universe[i]), i);

    Row common(words);
    for (std::size_t a = 0; a < n; ++a)
    {
        if (clock.expired())
            return stop("least upper bounds");
        for (std::size_t b = a; b < n; ++b)
        {
            bool any_common = false;
            for (std::size_t w = 0; w < words; ++w)
            {
                common[w] = upper[a][w] & upper[b][w];
                any_common = any_common || common[w];
            }
            const UnifyOutcome outcome = unify(universe[a], universe[b]);
            ++report.unifications;
            const auto* u = std::get_if<Unified>(&outcome);
            if (!u)
            {
                if (any_common)
                    violation("unification failed despite a common upper bound:\n" + serialize_tdag(universe[a]) +
                              "--\n" + serialize_tdag(universe[b]));
                continue;
            }
            if (!subsumes(universe[a], u->result) || !subsumes(universe[b], u->result))
            {
                violation("unifier is not an upper bound:\n" + serialize_tdag(universe[a]) + "--\n" +
                          serialize_tdag(universe[b]));
                continue;
            }
            bool least = true;
            if (auto it = index.find(canonical_form(u->result)); it != index.end())
            {
                least = subset(common, upper[it->second]);
            }
            else
            {
                for (std::size_t w = 0; w < words && least; ++w)
                {
                    for (std::uint64_t rest = common[w]; rest && least; rest &= rest - 1)
                        least = subsumes(u->result, universe[w * 64 + static_cast<std::size_t>(std::countr_zero(rest))]);
                }
            }
            if (!least)
                violation("unifier is not below every common upper bound:\n" + serialize_tdag(universe[a]) + "--\n" +
                          serialize_tdag(universe[b]));
        }
    }
    report.seconds = clock.elapsed();
    return report;
}

} // namespace tricolor::testkit
