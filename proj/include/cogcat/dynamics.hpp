#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cogcat/category.hpp"
#include "cogcat/evaluator.hpp"
#include "cogcat/generator.hpp"

namespace cogcat {

/// A dynamic law over a base category: deterministic (one successor per
/// state) or indeterministic (a non-empty successor set per state).
class transition_system {
public:
    static transition_system deterministic(category base, std::vector<std::size_t> table) {
        std::vector<std::vector<std::size_t>> succ;
        succ.reserve(table.size());
        for (std::size_t t : table) succ.push_back({t});
        return transition_system(std::move(base), true, std::move(succ));
    }

    static transition_system deterministic(const generator& law) {
        return deterministic(law.over(), law.table());
    }

    static transition_system indeterministic(category base,
                                             std::vector<std::vector<std::size_t>> successors) {
        return transition_system(std::move(base), false, std::move(successors));
    }

    bool is_deterministic() const noexcept { return deterministic_; }
    const category& base() const noexcept { return base_; }

    const std::vector<std::size_t>& successors(std::size_t ordinal) const {
        if (ordinal >= succ_.size())
            throw error("transition system over '" + base_.name() + "': ordinal out of range");
        return succ_[ordinal];
    }

    std::size_t next(std::size_t ordinal) const {
        if (!deterministic_)
            throw error("transition system over '" + base_.name() + "' is indeterministic");
        return successors(ordinal).front();
    }

private:
    transition_system(category base, bool deterministic,
                      std::vector<std::vector<std::size_t>> succ)
        : base_(std::move(base)), deterministic_(deterministic), succ_(std::move(succ)) {
        if (succ_.size() != base_.size())
            throw error("transition system over '" + base_.name() + "': " +
                        std::to_string(succ_.size()) + " rows for " +
                        std::to_string(base_.size()) + " states");
        for (std::size_t i = 0; i < succ_.size(); ++i) {
            auto& row = succ_[i];
            if (row.empty())
                throw error("transition system over '" + base_.name() + "': state '" +
                            base_.label(i) + "' has no successor");
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
            for (std::size_t t : row)
                if (t >= base_.size())
                    throw error("transition system over '" + base_.name() + "': successor of '" +
                                base_.label(i) + "' is not a state");
            if (deterministic_ && row.size() != 1)
                throw error("transition system over '" + base_.name() +
                            "': deterministic law needs exactly one successor for '" +
                            base_.label(i) + "'");
        }
    }

    category base_;
    bool deterministic_;
    std::vector<std::vector<std::size_t>> succ_;
};

/// A bounded-horizon trajectory: H consecutive base states, each entry a
/// successor of the previous one.
struct timeline {
    std::vector<state> entries;
};

/// entries[0] = s0, entries[t+1] = f(entries[t]).
inline timeline unroll_deterministic(const transition_system& ts, const state& s0,
                                     std::size_t horizon) {
    if (!ts.is_deterministic())
        throw error("unroll_deterministic: transition system is indeterministic");
    if (s0.owner() != ts.base())
        throw error("unroll_deterministic: state '" + s0.label() + "' is not in '" +
                    ts.base().name() + "'");
    if (horizon < 1)
        throw error("unroll_deterministic: horizon must be at least 1");
    timeline out;
    out.entries.reserve(horizon);
    out.entries.push_back(s0);
    for (std::size_t t = 1; t < horizon; ++t)
        out.entries.push_back(ts.base().at(ts.next(out.entries.back().ordinal())));
    return out;
}

struct timeline_category_result {
    category timelines;           // one state per valid length-H timeline
    evaluator origin_projection;  // blocks timelines by their first entry
    std::vector<std::vector<std::size_t>> entries; // per timeline: base ordinals
};

/// The cognitive category whose states are all valid length-H timelines,
/// in lexicographic order of entry ordinals, together with the projection
/// evaluator onto the state at the first instant. Guarded at 10^6
/// timelines.
inline timeline_category_result timeline_category(const transition_system& ts,
                                                  std::size_t horizon) {
    if (horizon < 1)
        throw error("timeline_category: horizon must be at least 1");
    constexpr std::size_t guard = 1'000'000;
    const category& base = ts.base();

    // Count the timelines first (saturating) so the guard fires before
    // anything is materialized.
    {
        std::vector<std::size_t> paths(base.size(), 1); // suffixes of length 1
        for (std::size_t t = 1; t < horizon; ++t) {
            std::vector<std::size_t> next(base.size(), 0);
            for (std::size_t s = 0; s < base.size(); ++s)
                for (std::size_t succ : ts.successors(s))
                    next[s] = std::min(next[s] + paths[succ], guard + 1);
            paths = std::move(next);
        }
        std::size_t total = 0;
        for (std::size_t s = 0; s < base.size(); ++s)
            total = std::min(total + paths[s], guard + 1);
        if (total > guard)
            throw error("timeline_category: more than 1000000 timelines");
    }

    std::vector<std::vector<std::size_t>> all;
    std::vector<std::size_t> current;
    auto extend = [&](auto&& self, std::size_t depth) -> void {
        if (depth == horizon) {
            all.push_back(current);
            return;
        }
        if (depth == 0) {
            for (std::size_t s = 0; s < base.size(); ++s) {
                current.push_back(s);
                self(self, depth + 1);
                current.pop_back();
            }
        } else {
            for (std::size_t s : ts.successors(current.back())) {
                current.push_back(s);
                self(self, depth + 1);
                current.pop_back();
            }
        }
    };
    extend(extend, 0);

    std::vector<std::string> labels;
    labels.reserve(all.size());
    for (const auto& line : all) {
        std::string label = base.label(line.front());
        for (std::size_t t = 1; t < line.size(); ++t) label += "-" + base.label(line[t]);
        labels.push_back(std::move(label));
    }
    category timelines(base.name() + "_T" + std::to_string(horizon), std::move(labels));

    std::vector<std::vector<std::size_t>> blocks(base.size());
    for (std::size_t i = 0; i < all.size(); ++i) blocks[all[i].front()].push_back(i);
    evaluator projection(partition(timelines, std::move(blocks), base.labels()), base.name());

    return timeline_category_result{std::move(timelines), std::move(projection), std::move(all)};
}

/// States are agent×environment pairs labeled "A⊗E", agent index outer.
inline category product_category(const category& agent, const category& environment) {
    constexpr std::size_t guard = 1'000'000;
    if (agent.size() > guard / environment.size())
        throw error("product_category: more than 1000000 pair states");
    std::vector<std::string> labels;
    labels.reserve(agent.size() * environment.size());
    for (std::size_t a = 0; a < agent.size(); ++a)
        for (std::size_t e = 0; e < environment.size(); ++e)
            labels.push_back(agent.label(a) + "⊗" + environment.label(e));
    return category(agent.name() + "⊗" + environment.name(), std::move(labels));
}

/// The two marginal evaluators of a product category built by
/// product_category(agent, environment).
inline std::pair<evaluator, evaluator> product_marginals(const category& product,
                                                         const category& agent,
                                                         const category& environment) {
    if (product.size() != agent.size() * environment.size())
        throw error("product_marginals: size mismatch with the factor categories");
    std::vector<std::vector<std::size_t>> agent_blocks(agent.size());
    std::vector<std::vector<std::size_t>> env_blocks(environment.size());
    for (std::size_t a = 0; a < agent.size(); ++a) {
        for (std::size_t e = 0; e < environment.size(); ++e) {
            const std::size_t ord = a * environment.size() + e;
            agent_blocks[a].push_back(ord);
            env_blocks[e].push_back(ord);
        }
    }
    evaluator to_agent(partition(product, std::move(agent_blocks), agent.labels()),
                       agent.name());
    evaluator to_environment(partition(product, std::move(env_blocks), environment.labels()),
                             environment.name());
    return {std::move(to_agent), std::move(to_environment)};
}

} // namespace cogcat
