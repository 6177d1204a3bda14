#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cogcat/category.hpp"
#include "cogcat/dsl.hpp"
#include "cogcat/generator.hpp"

namespace cogcat {

/// A bounded-tape Turing machine. The tape has a fixed length; the head
/// starts at cell 0 and the machine halts on an undefined (state, symbol)
/// pair or when the head moves off either edge. Control states are not
/// part of the tape category.
struct turing_machine_spec {
    struct rule {
        std::size_t next_state;
        char write;
        bool move_right;
    };

    std::size_t control_states = 1;                // Q = {0 .. control_states-1}
    std::string tape_alphabet;                     // Γ, enumeration order
    char blank = ' ';                              // b ∈ Γ
    std::string input_alphabet;                    // Σ ⊆ Γ
    std::map<std::pair<std::size_t, char>, rule> delta; // partial
    std::size_t initial_state = 0;                 // q0
    std::set<std::size_t> accepting;               // F
    std::size_t tape_length = 1;                   // L
    std::size_t step_budget = 10'000;
};

namespace detail {

inline void check_tm_spec(const turing_machine_spec& spec) {
    if (spec.control_states == 0) throw error("turing machine: no control states");
    if (spec.tape_alphabet.empty()) throw error("turing machine: empty tape alphabet");
    if (spec.tape_length < 1) throw error("turing machine: tape length must be at least 1");
    auto in_alphabet = [&](char c) {
        return spec.tape_alphabet.find(c) != std::string::npos;
    };
    if (!in_alphabet(spec.blank)) throw error("turing machine: blank symbol not in alphabet");
    for (char c : spec.input_alphabet)
        if (!in_alphabet(c)) throw error("turing machine: input symbol not in alphabet");
    if (spec.initial_state >= spec.control_states)
        throw error("turing machine: initial state out of range");
    for (std::size_t q : spec.accepting)
        if (q >= spec.control_states) throw error("turing machine: accepting state out of range");
    for (const auto& [key, rule] : spec.delta) {
        if (key.first >= spec.control_states || rule.next_state >= spec.control_states)
            throw error("turing machine: transition references an unknown control state");
        if (!in_alphabet(key.second) || !in_alphabet(rule.write))
            throw error("turing machine: transition references an unknown symbol");
    }
    double tapes = 1;
    for (std::size_t i = 0; i < spec.tape_length; ++i) {
        tapes *= static_cast<double>(spec.tape_alphabet.size());
        if (tapes > 1'000'000)
            throw error("turing machine: more than 1000000 tapes");
    }
}

} // namespace detail

/// Runs the machine on one tape until it halts; throws if the step budget
/// is exhausted.
inline std::string tm_run(const turing_machine_spec& spec, std::string tape) {
    if (tape.size() != spec.tape_length)
        throw error("turing machine: tape has wrong length");
    std::size_t q = spec.initial_state;
    std::size_t head = 0;
    for (std::size_t step = 0; step < spec.step_budget; ++step) {
        auto it = spec.delta.find({q, tape[head]});
        if (it == spec.delta.end()) return tape; // undefined pair: halt
        tape[head] = it->second.write;
        q = it->second.next_state;
        if (it->second.move_right) {
            if (++head == tape.size()) return tape; // off the right edge: halt
        } else {
            if (head-- == 0) return tape; // off the left edge: halt
        }
    }
    throw error("turing machine: no halt within " + std::to_string(spec.step_budget) +
                " steps on tape '" + tape + "'");
}

/// The cognitive category of all length-L tapes (labels are the tape
/// strings, lexicographic in alphabet order) together with the generator
/// sending each tape to its halting tape.
inline std::pair<category, generator> tm_generator(const turing_machine_spec& spec,
                                                   const std::string& name = "tm") {
    detail::check_tm_spec(spec);

    std::vector<std::string> tapes;
    std::string current(spec.tape_length, spec.tape_alphabet[0]);
    std::vector<std::size_t> digits(spec.tape_length, 0);
    while (true) {
        tapes.push_back(current);
        std::size_t pos = spec.tape_length;
        bool carry = true;
        while (pos > 0 && carry) {
            --pos;
            if (++digits[pos] < spec.tape_alphabet.size()) {
                carry = false;
            } else {
                digits[pos] = 0;
            }
            current[pos] = spec.tape_alphabet[digits[pos]];
        }
        if (carry) break;
    }

    category cat("tapes_" + name, std::move(tapes));
    std::vector<std::size_t> table(cat.size());
    for (std::size_t i = 0; i < cat.size(); ++i) {
        const std::string halted = tm_run(spec, cat.label(i));
        auto target = cat.find(halted);
        if (!target) throw error("turing machine: halting tape escaped the category");
        table[i] = *target;
    }
    return {cat, generator(name, cat, std::move(table))};
}

/// DSL export. Tape strings may start with a digit, which .ccs names must
/// not, so every state label is prefixed with 't'.
inline dsl::model tm_to_model(const category& tapes, const generator& gen) {
    dsl::model m;
    dsl::category_decl cd;
    cd.name = dsl::name_ref(tapes.name());
    for (std::size_t i = 0; i < tapes.size(); ++i)
        cd.states.emplace_back("t" + tapes.label(i));
    m.decls.push_back(std::move(cd));

    dsl::generator_decl gd;
    gd.name = dsl::name_ref(gen.name());
    gd.over = dsl::name_ref(tapes.name());
    for (std::size_t i = 0; i < tapes.size(); ++i)
        gd.mappings.emplace_back(dsl::name_ref("t" + tapes.label(i)),
                                 dsl::name_ref("t" + tapes.label(gen.table()[i])));
    m.decls.push_back(std::move(gd));
    return m;
}

} // namespace cogcat
