#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cogcat/category.hpp"

namespace cogcat {

/// A total endofunction on the states of one category, given as a dense
/// mapping table. The name is metadata: equality compares category and
/// table only.
class generator {
public:
    generator(std::string name, category over, std::vector<std::size_t> table)
        : name_(std::move(name)), over_(std::move(over)), table_(std::move(table)) {
        if (table_.size() != over_.size())
            throw error("generator '" + name_ + "': table has " + std::to_string(table_.size()) +
                        " entries for a category of size " + std::to_string(over_.size()));
        for (std::size_t i = 0; i < table_.size(); ++i)
            if (table_[i] >= over_.size())
                throw error("generator '" + name_ + "': image of '" + over_.label(i) +
                            "' is not a state of '" + over_.name() + "'");
    }

    const std::string& name() const noexcept { return name_; }
    const category& over() const noexcept { return over_; }
    const std::vector<std::size_t>& table() const noexcept { return table_; }

    std::size_t apply_ordinal(std::size_t ordinal) const {
        if (ordinal >= table_.size())
            throw error("generator '" + name_ + "': ordinal " + std::to_string(ordinal) +
                        " out of range");
        return table_[ordinal];
    }

    /// Runs the operation from x: the generate-and-transform view.
    state apply(const state& x) const {
        if (x.owner() != over_)
            throw error("generator '" + name_ + "': state '" + x.label() +
                        "' is not in category '" + over_.name() + "'");
        return over_.at(table_[x.ordinal()]);
    }

    /// The morphism this operation realizes from x, without following it.
    morphism to_morphism(const state& x) const {
        return hom(over_, x, apply(x));
    }

    generator renamed(std::string name) const {
        return generator(std::move(name), over_, table_);
    }

    friend bool operator==(const generator& a, const generator& b) noexcept {
        return a.over_ == b.over_ && a.table_ == b.table_;
    }
    friend bool operator!=(const generator& a, const generator& b) noexcept { return !(a == b); }

private:
    std::string name_;
    category over_;
    std::vector<std::size_t> table_;
};

inline state apply(const generator& g, const state& x) { return g.apply(x); }
inline morphism to_morphism(const generator& g, const state& x) { return g.to_morphism(x); }

/// Function composition: inner applied first, then outer.
inline generator compose_generators(const generator& outer, const generator& inner) {
    if (outer.over() != inner.over())
        throw error("compose_generators: '" + outer.name() + "' and '" + inner.name() +
                    "' act on different categories");
    std::vector<std::size_t> table(inner.table().size());
    for (std::size_t i = 0; i < table.size(); ++i)
        table[i] = outer.table()[inner.table()[i]];
    return generator(outer.name() + "∘" + inner.name(), outer.over(), std::move(table));
}

inline generator identity_generator(const category& cat) {
    std::vector<std::size_t> table(cat.size());
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = i;
    return generator("identity", cat, std::move(table));
}

/// The purposeful generator sending every state to `target`.
inline generator constant_generator(const category& cat, const state& target) {
    if (target.owner() != cat)
        throw error("constant_generator: target '" + target.label() +
                    "' is not a state of '" + cat.name() + "'");
    std::vector<std::size_t> table(cat.size(), target.ordinal());
    return generator("const_" + target.label(), cat, std::move(table));
}

/// S_i -> S_{i+1} in ordinal order, last state wrapping to the first.
inline generator cycle_generator(const category& cat) {
    std::vector<std::size_t> table(cat.size());
    for (std::size_t i = 0; i < table.size(); ++i)
        table[i] = (i + 1) % table.size();
    return generator("cycle", cat, std::move(table));
}

/// Present iff the table is constant; the value is the fixed target.
inline std::optional<state> is_purposeful(const generator& g) {
    const auto& t = g.table();
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] != t[0]) return std::nullopt;
    return g.over().at(t[0]);
}

/// An ordered set of generators over one category. Insertion order is
/// preserved (it is the declaration order used for tie-breaking);
/// duplicate tables are rejected.
class generator_set {
public:
    explicit generator_set(category over) : over_(std::move(over)) {}

    generator_set(category over, const std::vector<generator>& members)
        : over_(std::move(over)) {
        for (const auto& g : members) add(g);
    }

    /// Returns false (and keeps the set unchanged) if an equal table is present.
    bool add(generator g) {
        if (g.over() != over_)
            throw error("generator_set over '" + over_.name() + "': cannot add '" + g.name() +
                        "' over '" + g.over().name() + "'");
        if (contains_table(g)) return false;
        members_.push_back(std::move(g));
        return true;
    }

    bool contains_table(const generator& g) const {
        return std::any_of(members_.begin(), members_.end(),
                           [&](const generator& m) { return m.table() == g.table(); });
    }

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const std::vector<generator>& members() const noexcept { return members_; }
    const category& over() const noexcept { return over_; }

    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

private:
    category over_;
    std::vector<generator> members_;
};

/// True iff the members as given reach every ordered pair (A, B):
/// no implicit composition is taken.
inline bool is_omnipotent(const generator_set& gs) {
    const std::size_t n = gs.over().size();
    std::vector<char> covered(n * n, 0);
    std::size_t remaining = n * n;
    for (const auto& g : gs) {
        for (std::size_t a = 0; a < n; ++a) {
            char& c = covered[a * n + g.table()[a]];
            if (!c) {
                c = 1;
                --remaining;
            }
        }
        if (remaining == 0) return true;
    }
    return remaining == 0;
}

/// An omnipotent set of the minimum size n.
inline bool is_reduced(const generator_set& gs) {
    return gs.size() == gs.over().size() && is_omnipotent(gs);
}

/// {g, g∘g, ..., g^n} with duplicate tables removed.
inline generator_set powers_closure(const generator& g) {
    generator_set out(g.over());
    generator power = g;
    for (std::size_t i = 1; i <= g.over().size(); ++i) {
        out.add(i == 1 ? g : power.renamed(g.name() + "^" + std::to_string(i)));
        if (i < g.over().size()) power = compose_generators(g, power);
    }
    return out;
}

/// The n constant generators, one per state, in ordinal order.
inline generator_set canonical_set(const category& cat) {
    generator_set out(cat);
    for (std::size_t i = 0; i < cat.size(); ++i)
        out.add(constant_generator(cat, cat.at(i)));
    return out;
}

/// Builds the purposeful generator for every target from an omnipotent
/// set, selecting per outset the first member (declaration order) that
/// reaches the target. The result always equals canonical_set.
inline generator_set canonical_from_omnipotent(const generator_set& gs) {
    if (!is_omnipotent(gs))
        throw error("canonical_from_omnipotent: the given set is not omnipotent over '" +
                    gs.over().name() + "'");
    const category& cat = gs.over();
    const std::size_t n = cat.size();
    generator_set out(cat);
    for (std::size_t target = 0; target < n; ++target) {
        std::vector<std::size_t> table(n);
        for (std::size_t x = 0; x < n; ++x) {
            for (const auto& g : gs) {
                if (g.table()[x] == target) {
                    table[x] = g.table()[x];
                    break;
                }
            }
        }
        out.add(generator("const_" + cat.label(target), cat, std::move(table)));
    }
    return out;
}

namespace detail {

/// Calls fn with every total mapping table on n states, in lexicographic
/// (odometer) order. fn receives the table by const reference.
template <typename Fn>
void for_each_table(std::size_t n, Fn&& fn) {
    std::vector<std::size_t> table(n, 0);
    while (true) {
        fn(static_cast<const std::vector<std::size_t>&>(table));
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++table[pos] < n) break;
            table[pos] = 0;
            if (pos == 0) return;
        }
    }
}

} // namespace detail

/// All n^n total endofunctions, ordered lexicographically by table.
/// Guarded at n <= 8.
inline generator_set enumerate_generators(const category& cat) {
    const std::size_t n = cat.size();
    if (n > 8)
        throw error("enumerate_generators: category '" + cat.name() + "' has " +
                    std::to_string(n) + " states; enumeration is limited to 8");
    generator_set out(cat);
    std::size_t counter = 0;
    detail::for_each_table(n, [&](const std::vector<std::size_t>& table) {
        out.add(generator("g" + std::to_string(counter++), cat, table));
    });
    return out;
}

/// Exhaustively verifies that no generator set of size <= k over cat is
/// omnipotent. Guarded at n <= 4 and k < n.
inline bool min_omnipotent_size_check(const category& cat, std::size_t k) {
    const std::size_t n = cat.size();
    if (n > 4)
        throw error("min_omnipotent_size_check: exhaustive check is limited to 4 states");
    if (k >= n)
        throw error("min_omnipotent_size_check: k must be smaller than the category size");

    // Pair-coverage bitmask per table; n^2 <= 16 bits.
    std::vector<std::uint32_t> masks;
    detail::for_each_table(n, [&](const std::vector<std::size_t>& table) {
        std::uint32_t mask = 0;
        for (std::size_t a = 0; a < n; ++a)
            mask |= std::uint32_t{1} << (a * n + table[a]);
        masks.push_back(mask);
    });
    const std::uint32_t full = (std::uint32_t{1} << (n * n)) - 1;

    // DFS over index combinations of size <= k, accumulating coverage.
    struct walker {
        const std::vector<std::uint32_t>& masks;
        std::uint32_t full;
        std::size_t k;
        bool found_omnipotent = false;

        void visit(std::size_t first, std::uint32_t acc, std::size_t depth) {
            if (found_omnipotent || depth == k) return;
            for (std::size_t i = first; i < masks.size(); ++i) {
                const std::uint32_t next = acc | masks[i];
                if (next == full) {
                    found_omnipotent = true;
                    return;
                }
                visit(i + 1, next, depth + 1);
                if (found_omnipotent) return;
            }
        }
    } w{masks, full, k};
    w.visit(0, 0, 0);
    return !w.found_omnipotent;
}

} // namespace cogcat
