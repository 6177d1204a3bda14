#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cogcat/bignat.hpp"
#include "cogcat/category.hpp"
#include "cogcat/generator.hpp"

namespace cogcat {

/// A partition of a category's states into labeled, non-empty, disjoint
/// blocks covering every state. Block members are kept sorted by ordinal.
class partition {
public:
    partition(category over, std::vector<std::vector<std::size_t>> blocks,
              std::vector<std::string> labels)
        : over_(std::move(over)), blocks_(std::move(blocks)), labels_(std::move(labels)) {
        const std::size_t n = over_.size();
        if (blocks_.size() != labels_.size())
            throw error("partition of '" + over_.name() + "': " + std::to_string(blocks_.size()) +
                        " blocks but " + std::to_string(labels_.size()) + " labels");
        if (blocks_.empty())
            throw error("partition of '" + over_.name() + "': no blocks");
        for (std::size_t b = 0; b < labels_.size(); ++b) {
            if (labels_[b].empty())
                throw error("partition of '" + over_.name() + "': empty block label");
            for (std::size_t c = b + 1; c < labels_.size(); ++c)
                if (labels_[b] == labels_[c])
                    throw error("partition of '" + over_.name() + "': duplicate block label '" +
                                labels_[b] + "'");
        }
        block_of_.assign(n, blocks_.size());
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            if (blocks_[b].empty())
                throw error("partition of '" + over_.name() + "': block '" + labels_[b] +
                            "' is empty");
            std::sort(blocks_[b].begin(), blocks_[b].end());
            for (std::size_t ord : blocks_[b]) {
                if (ord >= n)
                    throw error("partition of '" + over_.name() + "': block '" + labels_[b] +
                                "' holds an unknown state ordinal");
                if (block_of_[ord] != blocks_.size())
                    throw error("partition of '" + over_.name() + "': state '" + over_.label(ord) +
                                "' appears in blocks '" + labels_[block_of_[ord]] + "' and '" +
                                labels_[b] + "'");
                block_of_[ord] = b;
            }
        }
        for (std::size_t ord = 0; ord < n; ++ord)
            if (block_of_[ord] == blocks_.size())
                throw error("partition of '" + over_.name() + "': state '" + over_.label(ord) +
                            "' is not covered by any block");
    }

    static partition from_states(category over, const std::vector<std::vector<state>>& blocks,
                                 std::vector<std::string> labels) {
        std::vector<std::vector<std::size_t>> ords;
        ords.reserve(blocks.size());
        for (const auto& block : blocks) {
            std::vector<std::size_t> row;
            row.reserve(block.size());
            for (const auto& s : block) {
                if (s.owner() != over)
                    throw error("partition: state '" + s.label() + "' is not in category '" +
                                over.name() + "'");
                row.push_back(s.ordinal());
            }
            ords.push_back(std::move(row));
        }
        return partition(std::move(over), std::move(ords), std::move(labels));
    }

    /// All singleton blocks, labeled by the state labels.
    static partition discrete(const category& over) {
        std::vector<std::vector<std::size_t>> blocks;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < over.size(); ++i) {
            blocks.push_back({i});
            labels.push_back(over.label(i));
        }
        return partition(over, std::move(blocks), std::move(labels));
    }

    /// One block holding every state.
    static partition single_block(const category& over, std::string label = "all") {
        std::vector<std::size_t> block(over.size());
        for (std::size_t i = 0; i < block.size(); ++i) block[i] = i;
        return partition(over, {std::move(block)}, {std::move(label)});
    }

    const category& over() const noexcept { return over_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    std::size_t block_of(std::size_t ordinal) const {
        if (ordinal >= block_of_.size())
            throw error("partition of '" + over_.name() + "': ordinal out of range");
        return block_of_[ordinal];
    }
    const std::vector<std::size_t>& block(std::size_t b) const { return blocks_.at(b); }
    const std::string& label(std::size_t b) const { return labels_.at(b); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Canonical restricted-growth string: block indices renumbered by
    /// first appearance. Two partitions group alike iff these are equal.
    std::vector<std::size_t> restricted_growth_string() const {
        std::vector<std::size_t> renumber(blocks_.size(), blocks_.size());
        std::vector<std::size_t> rgs(block_of_.size());
        std::size_t next = 0;
        for (std::size_t i = 0; i < block_of_.size(); ++i) {
            std::size_t& slot = renumber[block_of_[i]];
            if (slot == blocks_.size()) slot = next++;
            rgs[i] = slot;
        }
        return rgs;
    }

    bool same_grouping(const partition& other) const {
        return over_ == other.over_ &&
               restricted_growth_string() == other.restricted_growth_string();
    }

    friend bool operator==(const partition& a, const partition& b) noexcept {
        return a.over_ == b.over_ && a.blocks_ == b.blocks_ && a.labels_ == b.labels_;
    }
    friend bool operator!=(const partition& a, const partition& b) noexcept { return !(a == b); }

private:
    category over_;
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> block_of_;
};

/// A functor onto the quotient category induced by a partition: each state
/// maps to its block. The morphism component is forced and computed on
/// demand, never stored.
class evaluator {
public:
    explicit evaluator(partition groups, std::string quotient_name = {})
        : groups_(std::move(groups)),
          quotient_(quotient_name.empty() ? groups_.over().name() + "_V"
                                          : std::move(quotient_name),
                    groups_.labels()) {}

    const partition& groups() const noexcept { return groups_; }
    const category& source() const noexcept { return groups_.over(); }
    const category& quotient() const noexcept { return quotient_; }

    std::size_t evaluate_ordinal(std::size_t ordinal) const { return groups_.block_of(ordinal); }

    state evaluate(const state& x) const {
        if (x.owner() != source())
            throw error("evaluator over '" + source().name() + "': state '" + x.label() +
                        "' is not in the source category");
        return quotient_.at(groups_.block_of(x.ordinal()));
    }

    /// Induced morphism component: E(t_{r->s}) = t_{E(r)->E(s)}.
    morphism map(const morphism& t) const {
        return hom(quotient_, evaluate(t.dom()), evaluate(t.cod()));
    }

private:
    partition groups_;
    category quotient_;
};

inline evaluator new_evaluator(category over, const std::vector<std::vector<state>>& blocks,
                               std::vector<std::string> labels) {
    return evaluator(partition::from_states(std::move(over), blocks, std::move(labels)));
}

inline state evaluate(const evaluator& e, const state& x) { return e.evaluate(x); }

/// Witness that a generator cannot be pushed through an evaluator: two
/// states of one block whose images land in different blocks.
struct transfer_conflict {
    std::size_t block;
    std::string block_label;
    state first_witness;
    state second_witness;
    std::size_t conflicting_blocks; // how many blocks conflict in total
};

using transfer_result = std::variant<generator, transfer_conflict>;

/// Pushes g through e: succeeds iff every block maps into a single block.
/// On failure returns the first conflict (blocks scanned in order,
/// witnesses in ordinal order).
inline transfer_result transfer_generator(const evaluator& e, const generator& g) {
    if (g.over() != e.source())
        throw error("transfer_generator: '" + g.name() + "' is over '" + g.over().name() +
                    "', not over '" + e.source().name() + "'");
    const partition& p = e.groups();
    std::vector<std::size_t> table(p.block_count());
    std::size_t conflicts = 0;
    std::size_t first_conflict_block = p.block_count();
    std::pair<std::size_t, std::size_t> witnesses{0, 0};
    for (std::size_t b = 0; b < p.block_count(); ++b) {
        const auto& members = p.block(b);
        const std::size_t image = p.block_of(g.table()[members.front()]);
        table[b] = image;
        for (std::size_t m = 1; m < members.size(); ++m) {
            if (p.block_of(g.table()[members[m]]) != image) {
                ++conflicts;
                if (first_conflict_block == p.block_count()) {
                    first_conflict_block = b;
                    witnesses = {members.front(), members[m]};
                }
                break;
            }
        }
    }
    if (conflicts > 0) {
        return transfer_conflict{first_conflict_block,
                                 p.label(first_conflict_block),
                                 e.source().at(witnesses.first),
                                 e.source().at(witnesses.second),
                                 conflicts};
    }
    return generator(g.name(), e.quotient(), std::move(table));
}

/// True iff every member transfers and the transferred set is omnipotent
/// over the quotient.
inline bool is_controllable(const evaluator& e, const generator_set& gs) {
    if (gs.over() != e.source())
        throw error("is_controllable: generator set is over '" + gs.over().name() +
                    "', not over '" + e.source().name() + "'");
    generator_set transferred(e.quotient());
    for (const auto& g : gs) {
        auto result = transfer_generator(e, g);
        if (std::holds_alternative<transfer_conflict>(result)) return false;
        transferred.add(std::get<generator>(std::move(result)));
    }
    return is_omnipotent(transferred);
}

/// Common refinement of two partitions. Blocks are the non-empty
/// intersections, ordered by (a-block, b-block); labels join with '#'.
inline partition meet(const partition& a, const partition& b) {
    if (a.over() != b.over())
        throw error("meet: partitions are over different categories");
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < a.block_count(); ++i) {
        for (std::size_t j = 0; j < b.block_count(); ++j) {
            std::vector<std::size_t> cell;
            for (std::size_t ord : a.block(i))
                if (b.block_of(ord) == j) cell.push_back(ord);
            if (!cell.empty()) {
                blocks.push_back(std::move(cell));
                labels.push_back(a.label(i) + "#" + b.label(j));
            }
        }
    }
    return partition(a.over(), std::move(blocks), std::move(labels));
}

struct conjunction_result {
    evaluator combined;
    bool empty_pass; // no state satisfied every operand
};

/// Conjunction of binary pass/fail evaluators: the pass block is the
/// intersection of all operand pass blocks. An empty intersection yields
/// the single-block fail evaluator, flagged.
inline conjunction_result conjunction(const std::vector<evaluator>& operands) {
    if (operands.empty())
        throw error("conjunction: no operands");
    const category& cat = operands.front().source();
    std::vector<char> pass(cat.size(), 1);
    for (const auto& e : operands) {
        if (e.source() != cat)
            throw error("conjunction: operands are over different categories");
        const partition& p = e.groups();
        const std::vector<std::string>& ls = p.labels();
        if (ls.size() != 2 || !((ls[0] == "pass" && ls[1] == "fail") ||
                                (ls[0] == "fail" && ls[1] == "pass")))
            throw error("conjunction: operand over '" + cat.name() +
                        "' is not a binary pass/fail evaluator");
        const std::size_t pass_block = (ls[0] == "pass") ? 0 : 1;
        for (std::size_t ord = 0; ord < cat.size(); ++ord)
            if (p.block_of(ord) != pass_block) pass[ord] = 0;
    }
    std::vector<std::size_t> pass_states;
    std::vector<std::size_t> fail_states;
    for (std::size_t ord = 0; ord < cat.size(); ++ord)
        (pass[ord] ? pass_states : fail_states).push_back(ord);

    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::string> labels;
    if (!pass_states.empty()) {
        blocks.push_back(std::move(pass_states));
        labels.emplace_back("pass");
    }
    bool empty_pass = blocks.empty();
    if (!fail_states.empty()) {
        blocks.push_back(std::move(fail_states));
        labels.emplace_back("fail");
    }
    return conjunction_result{evaluator(partition(cat, std::move(blocks), std::move(labels))),
                              empty_pass};
}

/// Exact Bell number via the triangle recurrence; guarded at n <= 500.
inline bignat bell_number(std::size_t n) {
    if (n > 500)
        throw error("bell_number: n is limited to 500");
    // row holds the Bell triangle row for the current n, left to right.
    std::vector<bignat> row{bignat(1)};
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<bignat> next;
        next.reserve(i + 1);
        next.push_back(row.back());
        for (std::size_t j = 0; j < row.size(); ++j)
            next.push_back(next.back() + row[j]);
        row = std::move(next);
    }
    return row.front();
}

/// All set partitions of the states, in restricted-growth-string
/// lexicographic order. Guarded at n <= 10. Block labels are "B0", "B1",
/// ... by first appearance.
inline std::vector<partition> enumerate_partitions(const category& cat) {
    const std::size_t n = cat.size();
    if (n > 10)
        throw error("enumerate_partitions: category '" + cat.name() +
                    "' has more than 10 states");
    std::vector<partition> out;
    std::vector<std::size_t> rgs(n, 0);
    while (true) {
        std::size_t block_count = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<std::size_t>> blocks(block_count);
        for (std::size_t i = 0; i < n; ++i) blocks[rgs[i]].push_back(i);
        std::vector<std::string> labels;
        for (std::size_t b = 0; b < block_count; ++b)
            labels.push_back("B" + std::to_string(b));
        out.emplace_back(cat, std::move(blocks), std::move(labels));

        // Advance to the next restricted growth string.
        std::size_t pos = n;
        bool advanced = false;
        while (pos > 1) {
            --pos;
            std::size_t prefix_max = 0;
            for (std::size_t i = 0; i < pos; ++i) prefix_max = std::max(prefix_max, rgs[i]);
            if (rgs[pos] <= prefix_max) {
                ++rgs[pos];
                for (std::size_t i = pos + 1; i < n; ++i) rgs[i] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) return out;
    }
}

} // namespace cogcat
