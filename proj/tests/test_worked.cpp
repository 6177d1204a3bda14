#include <catch2/catch_amalgamated.hpp>

#include "cogcat/ga.hpp"
#include "cogcat/turing.hpp"
#include "support/oracles.hpp"

using namespace cogcat;

namespace {

turing_machine_spec bit_flip(std::size_t length) {
    // Flip every bit while sweeping right; halts off the right edge.
    turing_machine_spec spec;
    spec.control_states = 1;
    spec.tape_alphabet = "01";
    spec.blank = '0';
    spec.input_alphabet = "01";
    spec.delta[{0, '0'}] = {0, '1', true};
    spec.delta[{0, '1'}] = {0, '0', true};
    spec.tape_length = length;
    return spec;
}

turing_machine_spec empty_delta(std::size_t length) {
    turing_machine_spec spec;
    spec.control_states = 1;
    spec.tape_alphabet = "01";
    spec.blank = '0';
    spec.input_alphabet = "01";
    spec.tape_length = length;
    return spec;
}

turing_machine_spec constant_writer(std::size_t length) {
    // Overwrites the whole tape with the 2-periodic pattern 10...
    turing_machine_spec spec;
    spec.control_states = 2;
    spec.tape_alphabet = "01";
    spec.blank = '0';
    spec.input_alphabet = "01";
    for (char c : {'0', '1'}) {
        spec.delta[{0, c}] = {1, '1', true};
        spec.delta[{1, c}] = {0, '0', true};
    }
    spec.tape_length = length;
    return spec;
}

} // namespace

TEST_CASE("the bit-flip machine complements the tape") {
    auto [tapes, gen] = tm_generator(bit_flip(4), "flip");
    CHECK(tapes.size() == 16);
    CHECK(gen.apply(tapes.at("0000")) == tapes.at("1111"));
    CHECK(gen.apply(tapes.at("1010")) == tapes.at("0101"));
    // Deterministic: running twice from the same tape gives the same result.
    CHECK(tm_run(bit_flip(4), "0110") == tm_run(bit_flip(4), "0110"));
    // Total by construction: the table maps every tape somewhere.
    CHECK(gen.table().size() == tapes.size());
}

TEST_CASE("the empty-delta machine is the identity generator") {
    auto [tapes, gen] = tm_generator(empty_delta(3), "halt");
    CHECK(tapes.size() == 8);
    CHECK(gen == identity_generator(tapes));
}

TEST_CASE("the constant writer is purposeful on the bounded category") {
    auto [tapes, gen] = tm_generator(constant_writer(4), "write10");
    auto target = is_purposeful(gen);
    REQUIRE(target.has_value());
    CHECK(target->label() == "1010");
}

TEST_CASE("a machine that never halts exhausts its step budget") {
    turing_machine_spec spec;
    spec.control_states = 2;
    spec.tape_alphabet = "01";
    spec.blank = '0';
    spec.tape_length = 3;
    spec.step_budget = 100;
    // Bounce forever between the first two cells.
    for (char c : {'0', '1'}) {
        spec.delta[{0, c}] = {1, c, true};
        spec.delta[{1, c}] = {0, c, false};
    }
    CHECK_THROWS_AS(tm_generator(spec), error);
}

TEST_CASE("tm specs are validated") {
    auto spec = bit_flip(4);
    spec.blank = 'x';
    CHECK_THROWS_AS(tm_generator(spec), error);

    auto big = bit_flip(21); // 2^21 tapes exceed the guard
    CHECK_THROWS_AS(tm_generator(big), error);
}

TEST_CASE("tm export round-trips through the DSL") {
    auto [tapes, gen] = tm_generator(bit_flip(2), "flip");
    auto m = tm_to_model(tapes, gen);
    CHECK(dsl::validate(m).empty());
    const std::string text = dsl::print(m);
    auto reparsed = dsl::parse(text);
    REQUIRE(reparsed.ok());
    CHECK(*reparsed.parsed == m);
    auto cm = dsl::compile(*reparsed.parsed);
    CHECK(cm.generators.at("flip").table() == gen.table());
}

TEST_CASE("the ga fixture realizes the seed as a hidden state") {
    ga_toy_spec spec;
    spec.bits = 3;
    spec.individuals = 1;
    spec.counter_range = 3;
    spec.threshold = 3;
    spec.start_population = "000";
    auto fixture = ga_fixture(spec);

    CHECK(fixture.states.size() == 24); // 8 populations x 3 counters
    CHECK(fixture.states.find("p000_c0").has_value());
    CHECK(fixture.mutate.table().size() == 24);

    // Fitness blocks: only population 111 passes the threshold.
    REQUIRE(fixture.fitness.groups().block_count() == 2);
    CHECK(fixture.fitness.groups().label(0) == "V_not");
    CHECK(fixture.fitness.groups().label(1) == "V_opt");
    CHECK(fixture.fitness.groups().block(0).size() == 21);
    CHECK(fixture.fitness.groups().block(1).size() == 3);

    // Mutation from (000, 0): flip bit 0, bump the counter.
    CHECK(fixture.mutate.apply(fixture.states.at("p000_c0")) == fixture.states.at("p100_c1"));

    // The problem starts from the known population with every hidden seed.
    CHECK(fixture.opt_problem.outset().size() == 3);

    auto result = solve(fixture.opt_problem);
    auto* pl = std::get_if<plan>(&result);
    REQUIRE(pl != nullptr);
    CHECK(pl->step_names() ==
          std::vector<std::string>{"mutate", "mutate", "mutate"});
    for (std::size_t ord : fixture.opt_problem.outset()) {
        const state landed = execute_plan(*pl, fixture.states.at(ord));
        CHECK(fixture.fitness.evaluate(landed).label() == "V_opt");
    }

    // Matches the plain sequence-enumeration oracle.
    auto reference = oracle::brute_force_plan(fixture.opt_problem, 5);
    REQUIRE(reference.has_value());
    CHECK(reference->size() == 3);
}

TEST_CASE("threshold zero puts every state in V_opt and solves immediately") {
    ga_toy_spec spec;
    spec.bits = 2;
    spec.individuals = 1;
    spec.counter_range = 2;
    spec.threshold = 0;
    spec.start_population = "00";
    auto fixture = ga_fixture(spec);
    REQUIRE(fixture.fitness.groups().block_count() == 1);
    CHECK(fixture.fitness.groups().label(0) == "V_opt");
    auto result = solve(fixture.opt_problem);
    auto* pl = std::get_if<plan>(&result);
    REQUIRE(pl != nullptr);
    CHECK(pl->steps.empty());
}

TEST_CASE("the counter-blind mutation is a relation, not a generator") {
    ga_toy_spec spec;
    spec.bits = 3;
    spec.individuals = 1;
    spec.counter_range = 3;
    spec.threshold = 3;
    spec.start_population = "000";
    auto rel = ga_population_relation(spec);
    CHECK(rel.over().size() == 8);
    CHECK_FALSE(rel.is_deterministic());
    CHECK(rel.outcomes(0).size() == 3); // three counters flip three distinct bits

    // Refining recovers a total generator over populations-with-outcome.
    auto r = refine(rel);
    CHECK(r.refined.size() == 24);
    CHECK(verify_roundtrip(rel, r).ok);
}

TEST_CASE("transfer of the mutation to the fitness quotient matches a block scan") {
    ga_toy_spec spec;
    spec.bits = 3;
    spec.individuals = 1;
    spec.counter_range = 3;
    spec.threshold = 3;
    spec.start_population = "000";
    auto fixture = ga_fixture(spec);
    auto result = transfer_generator(fixture.fitness, fixture.mutate);
    const std::size_t scan = oracle::block_scan_conflicts(fixture.fitness.groups(),
                                                          fixture.mutate);
    if (auto* conflict = std::get_if<transfer_conflict>(&result)) {
        CHECK(conflict->conflicting_blocks == scan);
    } else {
        CHECK(scan == 0);
    }
}

TEST_CASE("ga export validates and compiles") {
    ga_toy_spec spec;
    spec.bits = 2;
    spec.individuals = 1;
    spec.counter_range = 2;
    spec.threshold = 2;
    spec.start_population = "00";
    auto fixture = ga_fixture(spec);
    auto m = ga_to_model(fixture);
    CHECK(dsl::validate(m).empty());
    auto text = dsl::print(m);
    auto reparsed = dsl::parse(text);
    REQUIRE(reparsed.ok());
    auto cm = dsl::compile(*reparsed.parsed);
    CHECK(cm.problems.count("B_opt") == 1);
    CHECK(cm.generators.at("mutate").table() == fixture.mutate.table());
}
