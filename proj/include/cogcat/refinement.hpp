#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cogcat/category.hpp"
#include "cogcat/evaluator.hpp"
#include "cogcat/generator.hpp"

namespace cogcat {

/// One possible result of a nondeterministic operation from a state.
/// The probability is an annotation only; refinement is structural.
struct outcome {
    std::string label;
    std::size_t target;
    std::optional<double> probability;

    friend bool operator==(const outcome& a, const outcome& b) noexcept {
        return a.label == b.label && a.target == b.target;
    }
};

/// A state -> {labeled outcomes} multimap: an operation that is not yet a
/// function. Every state has at least one outcome; labels are distinct per
/// state.
class outcome_relation {
public:
    outcome_relation(std::string name, category over, std::vector<std::vector<outcome>> rows)
        : name_(std::move(name)), over_(std::move(over)), rows_(std::move(rows)) {
        if (rows_.size() != over_.size())
            throw error("relation '" + name_ + "': " + std::to_string(rows_.size()) +
                        " rows for a category of size " + std::to_string(over_.size()));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (rows_[i].empty())
                throw error("relation '" + name_ + "': state '" + over_.label(i) +
                            "' has no outcomes");
            for (std::size_t a = 0; a < rows_[i].size(); ++a) {
                if (rows_[i][a].target >= over_.size())
                    throw error("relation '" + name_ + "': outcome of '" + over_.label(i) +
                                "' targets an unknown state");
                if (rows_[i][a].label.empty())
                    throw error("relation '" + name_ + "': empty outcome label on '" +
                                over_.label(i) + "'");
                for (std::size_t b = a + 1; b < rows_[i].size(); ++b)
                    if (rows_[i][a].label == rows_[i][b].label)
                        throw error("relation '" + name_ + "': duplicate outcome label '" +
                                    rows_[i][a].label + "' on '" + over_.label(i) + "'");
            }
        }
    }

    const std::string& name() const noexcept { return name_; }
    const category& over() const noexcept { return over_; }
    const std::vector<std::vector<outcome>>& rows() const noexcept { return rows_; }
    const std::vector<outcome>& outcomes(std::size_t ordinal) const { return rows_.at(ordinal); }

    bool is_deterministic() const noexcept {
        return std::all_of(rows_.begin(), rows_.end(),
                           [](const auto& row) { return row.size() == 1; });
    }

private:
    std::string name_;
    category over_;
    std::vector<std::vector<outcome>> rows_;
};

/// The result of splitting multi-outcome states into hidden variants:
/// a refined category on which the operation is a proper generator, plus
/// the evaluator collapsing variants back onto their origin states.
struct refinement {
    category refined;
    generator gen;       // total on the refined category
    evaluator collapse;  // groups refined states by origin; quotient equals the original category
    std::vector<std::pair<std::size_t, std::string>> origin; // refined ordinal -> (origin ordinal, outcome label; empty if unsplit)
};

/// Splits every multi-outcome state into one variant per outcome (labeled
/// "state#outcome"); single-outcome states are kept unsplit. The refined
/// generator follows each variant's own outcome; a target that is itself
/// split is entered through its first outcome variant.
inline refinement refine(const outcome_relation& rel) {
    const category& src = rel.over();
    const std::size_t n = src.size();

    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::string>> origin;
    std::vector<std::size_t> first_variant(n); // origin ordinal -> first refined ordinal
    for (std::size_t x = 0; x < n; ++x) {
        const auto& row = rel.outcomes(x);
        first_variant[x] = labels.size();
        if (row.size() == 1) {
            labels.push_back(src.label(x));
            origin.emplace_back(x, std::string{});
        } else {
            for (const auto& out : row) {
                labels.push_back(src.label(x) + "#" + out.label);
                origin.emplace_back(x, out.label);
            }
        }
    }
    category refined(src.name() + "_refined", std::move(labels));

    std::vector<std::size_t> table(refined.size());
    for (std::size_t x = 0; x < n; ++x) {
        const auto& row = rel.outcomes(x);
        for (std::size_t k = 0; k < row.size(); ++k)
            table[first_variant[x] + k] = first_variant[row[k].target];
    }
    generator gen(rel.name(), refined, std::move(table));

    std::vector<std::vector<std::size_t>> blocks(n);
    for (std::size_t r = 0; r < refined.size(); ++r)
        blocks[origin[r].first].push_back(r);
    evaluator collapse(partition(refined, std::move(blocks), src.labels()), src.name());

    return refinement{std::move(refined), std::move(gen), std::move(collapse), std::move(origin)};
}

/// Per-state verdicts from replaying a refinement against its relation.
struct roundtrip_report {
    bool ok = false;                 // every origin's outcome-target set is reproduced
    std::vector<bool> single_valued; // per origin state: collapse∘generator has one value
    bool single_valued_everywhere() const {
        return std::all_of(single_valued.begin(), single_valued.end(),
                           [](bool v) { return v; });
    }
};

/// Checks that collapsing the refined generator's images reproduces, per
/// origin state, exactly the relation's outcome target set.
inline roundtrip_report verify_roundtrip(const outcome_relation& rel, const refinement& r) {
    const category& src = rel.over();
    if (r.collapse.quotient() != src || r.gen.over() != r.refined ||
        r.origin.size() != r.refined.size() || r.collapse.source() != r.refined)
        throw error("verify_roundtrip: refinement does not match relation '" + rel.name() + "'");
    for (const auto& [orig, _] : r.origin)
        if (orig >= src.size())
            throw error("verify_roundtrip: refinement does not match relation '" + rel.name() +
                        "'");

    std::vector<std::set<std::size_t>> reached(src.size());
    for (std::size_t v = 0; v < r.refined.size(); ++v) {
        const std::size_t image = r.gen.table()[v];
        reached[r.origin[v].first].insert(r.collapse.evaluate_ordinal(image));
    }

    roundtrip_report report;
    report.ok = true;
    report.single_valued.resize(src.size());
    for (std::size_t x = 0; x < src.size(); ++x) {
        std::set<std::size_t> expected;
        for (const auto& out : rel.outcomes(x)) expected.insert(out.target);
        if (reached[x] != expected) report.ok = false;
        report.single_valued[x] = reached[x].size() == 1;
    }
    return report;
}

} // namespace cogcat
