#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cogcat/category.hpp"
#include "cogcat/dsl.hpp"
#include "cogcat/evaluator.hpp"
#include "cogcat/generator.hpp"
#include "cogcat/solver.hpp"

namespace cogcat {

/// A toy genetic algorithm with the pseudo-random seed made explicit:
/// states are (population, counter) pairs, so the mutation operator is a
/// proper generator instead of a random relation. The fitness evaluator
/// partitions states into V_opt (max ones-count >= threshold) and V_not.
struct ga_toy_spec {
    std::size_t bits = 3;             // chromosome length
    std::size_t individuals = 1;      // population size m
    std::size_t counter_range = 3;    // seed counter C
    std::size_t threshold = 3;        // pass iff max ones-count >= threshold
    std::string start_population;     // bits of all individuals, concatenated
};

struct ga_fixture_result {
    category states;        // (population, counter) pairs
    generator mutate;       // flip bit (counter mod bits) of individual (counter mod m)
    evaluator fitness;      // blocks V_not / V_opt
    problem opt_problem;    // outset: start population with every hidden counter
};

namespace detail {

inline std::string ga_label(const std::string& population, std::size_t counter) {
    return "p" + population + "_c" + std::to_string(counter);
}

} // namespace detail

inline ga_fixture_result ga_fixture(const ga_toy_spec& spec) {
    const std::size_t genome = spec.bits * spec.individuals;
    if (spec.bits == 0 || spec.individuals == 0 || spec.counter_range == 0)
        throw error("ga_fixture: bits, individuals and counter range must be positive");
    if (spec.threshold > spec.bits)
        throw error("ga_fixture: threshold exceeds the chromosome length");
    if (genome > 20 || (std::size_t{1} << genome) * spec.counter_range > 1'000'000)
        throw error("ga_fixture: state space exceeds 1000000 states");
    if (spec.start_population.size() != genome ||
        spec.start_population.find_first_not_of("01") != std::string::npos)
        throw error("ga_fixture: start population must be " + std::to_string(genome) +
                    " bits");

    const std::size_t population_count = std::size_t{1} << genome;
    auto population_string = [&](std::size_t code) {
        std::string bits(genome, '0');
        for (std::size_t i = 0; i < genome; ++i)
            if (code & (std::size_t{1} << (genome - 1 - i))) bits[i] = '1';
        return bits;
    };

    std::vector<std::string> labels;
    labels.reserve(population_count * spec.counter_range);
    for (std::size_t p = 0; p < population_count; ++p)
        for (std::size_t c = 0; c < spec.counter_range; ++c)
            labels.push_back(detail::ga_label(population_string(p), c));
    category states("P", std::move(labels));

    auto ordinal_of = [&](std::size_t p, std::size_t c) { return p * spec.counter_range + c; };

    std::vector<std::size_t> table(states.size());
    for (std::size_t p = 0; p < population_count; ++p) {
        for (std::size_t c = 0; c < spec.counter_range; ++c) {
            const std::size_t individual = c % spec.individuals;
            const std::size_t bit = c % spec.bits;
            const std::size_t offset = individual * spec.bits + bit; // bit index within genome
            const std::size_t flipped = p ^ (std::size_t{1} << (genome - 1 - offset));
            table[ordinal_of(p, c)] = ordinal_of(flipped, (c + 1) % spec.counter_range);
        }
    }
    generator mutate("mutate", states, std::move(table));

    auto max_ones = [&](std::size_t p) {
        const std::string bits = population_string(p);
        std::size_t best = 0;
        for (std::size_t i = 0; i < spec.individuals; ++i) {
            const auto chunk = bits.substr(i * spec.bits, spec.bits);
            best = std::max(best,
                            static_cast<std::size_t>(std::count(chunk.begin(), chunk.end(), '1')));
        }
        return best;
    };

    std::vector<std::size_t> v_not;
    std::vector<std::size_t> v_opt;
    for (std::size_t p = 0; p < population_count; ++p) {
        auto& side = max_ones(p) >= spec.threshold ? v_opt : v_not;
        for (std::size_t c = 0; c < spec.counter_range; ++c)
            side.push_back(ordinal_of(p, c));
    }
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::string> block_labels;
    if (!v_not.empty()) {
        blocks.push_back(v_not);
        block_labels.emplace_back("V_not");
    }
    blocks.push_back(v_opt); // never empty: the all-ones population passes
    block_labels.emplace_back("V_opt");
    evaluator fitness(partition(states, blocks, block_labels), "V");

    // Outset: the known start population with every possible hidden seed.
    std::size_t start_code = 0;
    for (char bit : spec.start_population) start_code = start_code * 2 + (bit == '1');
    std::vector<std::size_t> outset;
    for (std::size_t c = 0; c < spec.counter_range; ++c)
        outset.push_back(ordinal_of(start_code, c));

    generator_set available(states);
    available.add(mutate);
    problem opt_problem(states, std::move(outset), v_opt, std::move(available));

    return ga_fixture_result{std::move(states), std::move(mutate), std::move(fitness),
                             std::move(opt_problem)};
}

/// The population-only view of the same mutation rule: each population maps
/// to the set of outcomes the hidden counter could produce. This is not a
/// function, so it must go through hidden-state refinement.
inline outcome_relation ga_population_relation(const ga_toy_spec& spec) {
    const std::size_t genome = spec.bits * spec.individuals;
    if (genome > 20)
        throw error("ga_population_relation: genome exceeds 20 bits");
    const std::size_t population_count = std::size_t{1} << genome;

    auto population_string = [&](std::size_t code) {
        std::string bits(genome, '0');
        for (std::size_t i = 0; i < genome; ++i)
            if (code & (std::size_t{1} << (genome - 1 - i))) bits[i] = '1';
        return bits;
    };

    std::vector<std::string> labels;
    labels.reserve(population_count);
    for (std::size_t p = 0; p < population_count; ++p)
        labels.push_back("p" + population_string(p));
    category populations("P_obs", std::move(labels));

    std::vector<std::vector<outcome>> rows(population_count);
    for (std::size_t p = 0; p < population_count; ++p) {
        for (std::size_t c = 0; c < spec.counter_range; ++c) {
            const std::size_t individual = c % spec.individuals;
            const std::size_t bit = c % spec.bits;
            const std::size_t offset = individual * spec.bits + bit;
            const std::size_t flipped = p ^ (std::size_t{1} << (genome - 1 - offset));
            const std::string label = "c" + std::to_string(c);
            auto& row = rows[p];
            const bool duplicate =
                std::any_of(row.begin(), row.end(),
                            [&](const outcome& o) { return o.target == flipped; });
            if (!duplicate) row.push_back(outcome{label, flipped, {}});
        }
    }
    return outcome_relation("mutate_obs", populations, std::move(rows));
}

/// DSL export of the whole fixture: category, mutation generator, fitness
/// evaluator and the optimization problem.
inline dsl::model ga_to_model(const ga_fixture_result& fixture) {
    dsl::model m;

    dsl::category_decl cd;
    cd.name = dsl::name_ref(fixture.states.name());
    for (std::size_t i = 0; i < fixture.states.size(); ++i)
        cd.states.emplace_back(fixture.states.label(i));
    m.decls.push_back(std::move(cd));

    dsl::generator_decl gd;
    gd.name = dsl::name_ref(fixture.mutate.name());
    gd.over = dsl::name_ref(fixture.states.name());
    for (std::size_t i = 0; i < fixture.states.size(); ++i)
        gd.mappings.emplace_back(dsl::name_ref(fixture.states.label(i)),
                                 dsl::name_ref(fixture.states.label(fixture.mutate.table()[i])));
    m.decls.push_back(std::move(gd));

    dsl::evaluator_decl ed;
    ed.name = dsl::name_ref("fitness");
    ed.over = dsl::name_ref(fixture.states.name());
    const partition& groups = fixture.fitness.groups();
    for (std::size_t b = 0; b < groups.block_count(); ++b) {
        dsl::evaluator_block block;
        block.label = dsl::name_ref(groups.label(b));
        for (std::size_t ord : groups.block(b))
            block.members.emplace_back(fixture.states.label(ord));
        ed.blocks.push_back(std::move(block));
    }
    m.decls.push_back(std::move(ed));

    dsl::problem_decl pd;
    pd.name = dsl::name_ref("B_opt");
    pd.over = dsl::name_ref(fixture.states.name());
    for (std::size_t ord : fixture.opt_problem.outset())
        pd.outset.emplace_back(fixture.states.label(ord));
    for (std::size_t ord : fixture.opt_problem.goal())
        pd.goal.emplace_back(fixture.states.label(ord));
    pd.using_.emplace_back(fixture.mutate.name());
    m.decls.push_back(std::move(pd));

    return m;
}

} // namespace cogcat
