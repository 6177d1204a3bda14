#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "cogcat/category.hpp"
#include "cogcat/evaluator.hpp"
#include "cogcat/generator.hpp"

namespace cogcat {

/// A cognitive problem: transform every outset state into some goal state
/// using the available operations.
class problem {
public:
    problem(category cat, const std::vector<state>& outset, const std::vector<state>& goal,
            generator_set available)
        : cat_(std::move(cat)), available_(std::move(available)) {
        if (available_.over() != cat_)
            throw error("problem: generator set is over '" + available_.over().name() +
                        "', not over '" + cat_.name() + "'");
        outset_ = to_ordinals(outset, "outset");
        goal_ = to_ordinals(goal, "goal");
    }

    problem(category cat, std::vector<std::size_t> outset, std::vector<std::size_t> goal,
            generator_set available)
        : cat_(std::move(cat)), available_(std::move(available)) {
        if (available_.over() != cat_)
            throw error("problem: generator set is over '" + available_.over().name() +
                        "', not over '" + cat_.name() + "'");
        outset_ = normalize(std::move(outset), "outset");
        goal_ = normalize(std::move(goal), "goal");
    }

    const category& over() const noexcept { return cat_; }
    const std::vector<std::size_t>& outset() const noexcept { return outset_; }
    const std::vector<std::size_t>& goal() const noexcept { return goal_; }
    const generator_set& available() const noexcept { return available_; }

private:
    std::vector<std::size_t> to_ordinals(const std::vector<state>& states, const char* what) {
        std::vector<std::size_t> ords;
        ords.reserve(states.size());
        for (const auto& s : states) {
            if (s.owner() != cat_)
                throw error("problem: " + std::string(what) + " state '" + s.label() +
                            "' is not in category '" + cat_.name() + "'");
            ords.push_back(s.ordinal());
        }
        return normalize(std::move(ords), what);
    }

    std::vector<std::size_t> normalize(std::vector<std::size_t> ords, const char* what) {
        if (ords.empty())
            throw error("problem over '" + cat_.name() + "': empty " + std::string(what));
        for (std::size_t ord : ords)
            if (ord >= cat_.size())
                throw error("problem over '" + cat_.name() + "': " + std::string(what) +
                            " ordinal out of range");
        std::sort(ords.begin(), ords.end());
        ords.erase(std::unique(ords.begin(), ords.end()), ords.end());
        return ords;
    }

    category cat_;
    std::vector<std::size_t> outset_;
    std::vector<std::size_t> goal_;
    generator_set available_;
};

/// A solving composition. Steps are applied first-to-last; the induced
/// generator is their composite (identity for the empty plan).
struct plan {
    std::vector<generator> steps;
    generator induced;

    std::vector<std::string> step_names() const {
        std::vector<std::string> names;
        names.reserve(steps.size());
        for (const auto& g : steps) names.push_back(g.name());
        return names;
    }
};

struct unsolvable {
    std::size_t depth_searched;
    bool truncated; // true when max_depth cut the search before it closed
};

using solve_result = std::variant<plan, unsolvable>;

struct transfer_failure {
    struct item {
        std::string generator_name;
        transfer_conflict conflict;
    };
    std::vector<item> conflicts;
};

using quotient_solve_result = std::variant<plan, unsolvable, transfer_failure>;

/// Depth bound that makes an Unsolvable verdict definitive: the search
/// nodes are subsets of the state set, so 2^n layers always suffice.
inline std::size_t default_max_depth(const category& cat) {
    if (cat.size() >= std::numeric_limits<std::size_t>::digits)
        return std::numeric_limits<std::size_t>::max();
    return std::size_t{1} << cat.size();
}

/// Sequential application of the steps.
inline state execute_plan(const plan& p, const state& x) {
    if (x.owner() != p.induced.over())
        throw error("execute_plan: state '" + x.label() + "' is not in category '" +
                    p.induced.over().name() + "'");
    state current = x;
    for (const auto& g : p.steps) current = g.apply(current);
    return current;
}

/// The visited states, outset first: x, step1(x), step2(step1(x)), ...
inline std::vector<state> execution_trace(const plan& p, const state& x) {
    if (x.owner() != p.induced.over())
        throw error("execution_trace: state '" + x.label() + "' is not in category '" +
                    p.induced.over().name() + "'");
    std::vector<state> trace{x};
    for (const auto& g : p.steps) trace.push_back(g.apply(trace.back()));
    return trace;
}

namespace detail {

struct node_hash {
    std::size_t operator()(const std::vector<std::size_t>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (std::size_t x : v) {
            h ^= x + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace detail

/// Breadth-first search over generator compositions. The search node is
/// the image of the outset set under the composition so far; a node is a
/// solution when it is contained in the goal set. Ties between equally
/// short plans break toward earlier declaration order.
inline solve_result solve(const problem& p, std::size_t max_depth) {
    const auto& goal = p.goal();
    auto subset_of_goal = [&](const std::vector<std::size_t>& node) {
        return std::includes(goal.begin(), goal.end(), node.begin(), node.end());
    };

    auto make_plan = [&](const std::vector<std::size_t>& gen_indices) {
        plan out{{}, identity_generator(p.over())};
        for (std::size_t gi : gen_indices) {
            const generator& g = p.available().members()[gi];
            out.steps.push_back(g);
            out.induced = compose_generators(g, out.induced);
        }
        // Soundness post-check; a failure here is a solver bug.
        for (std::size_t ord : p.outset()) {
            const std::size_t landed = out.induced.table()[ord];
            if (!std::binary_search(goal.begin(), goal.end(), landed))
                throw error("solve: internal error, plan fails the soundness check");
            if (execute_plan(out, p.over().at(ord)).ordinal() != landed)
                throw error("solve: internal error, steps disagree with the induced generator");
        }
        return out;
    };

    if (subset_of_goal(p.outset())) return make_plan({});

    struct link {
        std::size_t parent;
        std::size_t gen;
    };
    std::vector<std::vector<std::size_t>> nodes{p.outset()};
    std::vector<link> links{{0, 0}}; // root sentinel
    std::unordered_map<std::vector<std::size_t>, std::size_t, detail::node_hash> seen;
    seen.emplace(p.outset(), 0);

    std::deque<std::size_t> frontier{0};
    std::size_t depth = 0;
    while (!frontier.empty()) {
        if (depth == max_depth)
            return unsolvable{depth, true};
        ++depth;
        std::deque<std::size_t> next_frontier;
        for (std::size_t node_index : frontier) {
            for (std::size_t gi = 0; gi < p.available().size(); ++gi) {
                const auto& table = p.available().members()[gi].table();
                std::vector<std::size_t> image;
                image.reserve(nodes[node_index].size());
                for (std::size_t ord : nodes[node_index]) image.push_back(table[ord]);
                std::sort(image.begin(), image.end());
                image.erase(std::unique(image.begin(), image.end()), image.end());
                if (seen.contains(image)) continue;

                const std::size_t new_index = nodes.size();
                seen.emplace(image, new_index);
                nodes.push_back(std::move(image));
                links.push_back({node_index, gi});
                if (subset_of_goal(nodes[new_index])) {
                    std::vector<std::size_t> gens;
                    for (std::size_t i = new_index; i != 0; i = links[i].parent)
                        gens.push_back(links[i].gen);
                    std::reverse(gens.begin(), gens.end());
                    return make_plan(gens);
                }
                next_frontier.push_back(new_index);
            }
        }
        frontier = std::move(next_frontier);
    }
    return unsolvable{depth, false};
}

inline solve_result solve(const problem& p) {
    return solve(p, default_max_depth(p.over()));
}

/// Poses and solves the problem on the quotient induced by e: transfers
/// every available generator (failures are reported with their conflicts),
/// then searches the quotient. The returned plan holds the original
/// source-level generators, so it executes on the source system.
inline quotient_solve_result solve_on_quotient(const evaluator& e, const state& quotient_outset,
                                               const state& quotient_goal,
                                               const generator_set& available,
                                               std::size_t max_depth) {
    if (quotient_outset.owner() != e.quotient() || quotient_goal.owner() != e.quotient())
        throw error("solve_on_quotient: outset/goal must be states of the quotient of the "
                    "evaluator");
    if (available.over() != e.source())
        throw error("solve_on_quotient: generator set is over '" + available.over().name() +
                    "', not over '" + e.source().name() + "'");

    generator_set transferred(e.quotient());
    std::vector<std::size_t> source_of; // transferred member -> available member index
    transfer_failure failure;
    for (std::size_t gi = 0; gi < available.size(); ++gi) {
        auto result = transfer_generator(e, available.members()[gi]);
        if (auto* conflict = std::get_if<transfer_conflict>(&result)) {
            failure.conflicts.push_back({available.members()[gi].name(), *conflict});
            continue;
        }
        if (transferred.add(std::get<generator>(std::move(result))))
            source_of.push_back(gi);
    }
    if (!failure.conflicts.empty()) return failure;

    problem quotient_problem(e.quotient(), std::vector<state>{quotient_outset},
                             std::vector<state>{quotient_goal}, transferred);
    auto result = solve(quotient_problem, max_depth);
    if (auto* verdict = std::get_if<unsolvable>(&result)) return *verdict;

    // Rebuild the plan from the original source generators.
    const plan& quotient_plan = std::get<plan>(result);
    plan out{{}, identity_generator(e.source())};
    for (const auto& step : quotient_plan.steps) {
        std::size_t member = 0;
        for (; member < transferred.size(); ++member)
            if (transferred.members()[member].table() == step.table()) break;
        const generator& original = available.members()[source_of[member]];
        out.steps.push_back(original);
        out.induced = compose_generators(original, out.induced);
    }
    return out;
}

inline quotient_solve_result solve_on_quotient(const evaluator& e, const state& quotient_outset,
                                               const state& quotient_goal,
                                               const generator_set& available) {
    return solve_on_quotient(e, quotient_outset, quotient_goal, available,
                             default_max_depth(e.quotient()));
}

/// The length-1 plan calling the constant generator of the first goal
/// state (ordinal order); valid whenever the canonical set is available.
inline plan solved_by_canonical(const problem& p) {
    const state target = p.over().at(p.goal().front());
    generator g = constant_generator(p.over(), target);
    plan out{{g}, g};
    return out;
}

} // namespace cogcat
