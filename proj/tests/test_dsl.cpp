#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "cogcat/dsl.hpp"
#include "support/random_values.hpp"

using namespace cogcat;
using namespace cogcat::dsl;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(CCS_FIXTURES_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

model parse_ok(const std::string& text) {
    auto result = parse(text);
    INFO(text);
    for (const auto& d : result.diagnostics)
        UNSCOPED_INFO(d.line << ":" << d.column << " " << d.message);
    REQUIRE(result.ok());
    REQUIRE(result.diagnostics.empty());
    return std::move(*result.parsed);
}

std::vector<diagnostic> parse_errors(const std::string& text) {
    auto result = parse(text);
    REQUIRE_FALSE(result.ok());
    REQUIRE_FALSE(result.diagnostics.empty());
    return result.diagnostics;
}

} // namespace

TEST_CASE("the s4 fixture parses to a four-declaration model") {
    model m = parse_ok(fixture("s4.ccs"));
    REQUIRE(m.decls.size() == 4);
    CHECK(std::holds_alternative<category_decl>(m.decls[0]));
    CHECK(std::holds_alternative<generator_decl>(m.decls[1]));
    CHECK(std::holds_alternative<evaluator_decl>(m.decls[2]));
    CHECK(std::holds_alternative<problem_decl>(m.decls[3]));
    CHECK(decl_name(m.decls[1]).value == "cycle");
}

TEST_CASE("an empty file is an empty model") {
    auto result = parse("");
    REQUIRE(result.ok());
    CHECK(result.parsed->decls.empty());
    CHECK(result.diagnostics.empty());
    CHECK(print(*result.parsed).empty());

    auto comments = parse("# nothing here\n# at all\n");
    REQUIRE(comments.ok());
    CHECK(comments.parsed->decls.empty());
}

TEST_CASE("a non-total generator is a semantic error") {
    auto diags = parse_errors("category S { states: a, b; }\n"
                              "generator g over S { a -> b; }\n");
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message == "generator 'g' is not total: state 'b' has no mapping");
    CHECK(diags[0].declaration == "g");
    CHECK(diags[0].line == 2);
}

TEST_CASE("lexer accepts the full NAME alphabet") {
    model m = parse_ok("category C⊗1 { states: a_b, c#d, e-f, _g9; }\n");
    const auto& cd = std::get<category_decl>(m.decls[0]);
    CHECK(cd.name.value == "C⊗1");
    REQUIRE(cd.states.size() == 4);
    CHECK(cd.states[0].value == "a_b");
    CHECK(cd.states[1].value == "c#d");
    CHECK(cd.states[2].value == "e-f");
    CHECK(cd.states[3].value == "_g9");
}

TEST_CASE("dashes bind to names except before '>'") {
    model m = parse_ok("category S { states: a-b, c; }\n"
                       "generator g over S { a-b -> c; c -> a-b; }\n");
    const auto& gd = std::get<generator_decl>(m.decls[1]);
    CHECK(gd.mappings[0].first.value == "a-b");
    CHECK(gd.mappings[0].second.value == "c");
}

TEST_CASE("comments run to the end of the line, CRLF accepted") {
    model m = parse_ok("# heading\r\n"
                       "category S { # trailing\r\n"
                       "  states: a, b; # more\r\n"
                       "}\r\n");
    CHECK(std::get<category_decl>(m.decls[0]).states.size() == 2);
}

TEST_CASE("syntax errors carry positions") {
    auto diags = parse_errors("category S { states a, b; }\n");
    REQUIRE_FALSE(diags.empty());
    CHECK(diags[0].line == 1);
    CHECK(diags[0].column == 21);
    CHECK(diags[0].message.find("expected ':'") != std::string::npos);

    auto lexical = parse_errors("category S { states: a, b; } %\n");
    CHECK(lexical[0].message == "unexpected character '%'");
}

TEST_CASE("the parser recovers and reports multiple declarations") {
    auto diags = parse_errors("generator g over S { a -> ; }\n"
                              "category 4bad { states: x; }\n"
                              "category S { states: a; }\n");
    CHECK(diags.size() >= 2);
}

TEST_CASE("diagnostics are ordered by line and column and capped at fifty") {
    std::string text = "category S { states: a; }\n";
    for (int i = 0; i < 80; ++i)
        text += "generator g" + std::to_string(i) + " over S { a -> zz; }\n";
    auto diags = parse_errors(text);
    CHECK(diags.size() == 50);
    for (std::size_t i = 1; i < diags.size(); ++i) {
        CHECK(diags[i - 1].line <= diags[i].line);
        if (diags[i - 1].line == diags[i].line)
            CHECK(diags[i - 1].column <= diags[i].column);
    }
}

TEST_CASE("validation rules") {
    SECTION("duplicate names per kind") {
        auto diags = parse_errors("category S { states: a; }\ncategory S { states: b; }\n");
        CHECK(diags[0].message == "duplicate category 'S'");
    }
    SECTION("duplicate states") {
        auto diags = parse_errors("category S { states: a, a; }\n");
        CHECK(diags[0].message == "duplicate state 'a'");
    }
    SECTION("unknown category") {
        auto diags = parse_errors("generator g over X { a -> a; }\n");
        CHECK(diags[0].message == "unknown category 'X'");
    }
    SECTION("evaluator overlap and coverage") {
        auto overlap = parse_errors(fixture("bad_overlap.ccs"));
        REQUIRE(overlap.size() == 1);
        CHECK(overlap[0].message == "state 's2' appears in blocks 'VA' and 'VB'");

        auto missing = parse_errors("category S { states: a, b; }\n"
                                    "evaluator E over S { V = {a}; }\n");
        CHECK(missing[0].message == "evaluator 'E' does not cover state 'b'");
    }
    SECTION("relation rules") {
        auto dup = parse_errors("category S { states: a; }\n"
                                "relation r over S { a -> {x: a, x: a}; }\n");
        CHECK(dup[0].message == "duplicate outcome label 'x' on state 'a'");

        auto partial = parse_errors("category S { states: a, b; }\n"
                                    "relation r over S { a -> {x: b}; }\n");
        CHECK(partial[0].message == "relation 'r' is not total: state 'b' has no outcomes");
    }
    SECTION("transition rules") {
        auto multi = parse_errors("category S { states: a, b; }\n"
                                  "transition t over S deterministic { a -> {a, b}; b -> {a}; }\n");
        CHECK(multi[0].message == "deterministic transition needs exactly one successor for 'a'");

        parse_ok("category S { states: a, b; }\n"
                 "transition t over S indeterministic { a -> {a, b}; b -> {a}; }\n");
    }
    SECTION("problem references") {
        auto unknown = parse_errors("category S { states: a; }\n"
                                    "problem p over S { outset: {a}; goal: {a}; using: gg; }\n");
        CHECK(unknown[0].message == "unknown generator 'gg'");

        auto wrong_cat = parse_errors(
            "category S { states: a; }\ncategory T { states: b; }\n"
            "generator g over T { b -> b; }\n"
            "problem p over S { outset: {a}; goal: {a}; using: g; }\n");
        CHECK(wrong_cat[0].message ==
              "generator 'g' is over 'T', but problem 'p' is over 'S'");
    }
}

TEST_CASE("forward references resolve across the whole file") {
    model m = parse_ok("problem p over S { outset: {a}; goal: {b}; using: g; }\n"
                       "generator g over S { a -> b; b -> b; }\n"
                       "category S { states: a, b; }\n");
    CHECK(m.decls.size() == 3);
    auto compiled = compile(m);
    CHECK(compiled.problems.count("p") == 1);
}

TEST_CASE("print golden output") {
    model m = parse_ok("category    X   {states:x;}");
    CHECK(print(m) == "category X {\n  states: x;\n}\n");

    model full = parse_ok(fixture("s4.ccs"));
    CHECK(print(full) ==
          "category S4 {\n"
          "  states: s1, s2, s3, s4;\n"
          "}\n"
          "\n"
          "generator cycle over S4 {\n"
          "  s1 -> s2;\n"
          "  s2 -> s3;\n"
          "  s3 -> s4;\n"
          "  s4 -> s1;\n"
          "}\n"
          "\n"
          "evaluator E over S4 {\n"
          "  VA = {s1, s2};\n"
          "  VB = {s3, s4};\n"
          "}\n"
          "\n"
          "problem P over S4 {\n"
          "  outset: {s1};\n"
          "  goal: {s3};\n"
          "  using: cycle;\n"
          "}\n");
}

TEST_CASE("print then parse is the identity on all fixtures") {
    for (const char* name : {"s4.ccs", "s4_powers.ccs", "john.ccs", "fig3.ccs", "fig4.ccs",
                             "quotient_ok.ccs"}) {
        model m = parse_ok(fixture(name));
        const std::string text = print(m);
        model again = parse_ok(text);
        REQUIRE(again == m);
        CHECK(print(again) == text); // byte-deterministic
    }
}

TEST_CASE("print then parse is the identity on random models") {
    rnd::engine rng(1234);
    for (int round = 0; round < 100; ++round) {
        model m = rnd::model(rng);
        const std::string text = print(m);
        auto reparsed = parse(text);
        INFO(text);
        for (const auto& d : reparsed.diagnostics)
            UNSCOPED_INFO(d.line << ":" << d.column << " " << d.message);
        REQUIRE(reparsed.ok());
        REQUIRE(*reparsed.parsed == m);
        CHECK(print(*reparsed.parsed) == text);
    }
}

TEST_CASE("compile builds engine values") {
    auto cm = compile(parse_ok(fixture("s4.ccs")));
    REQUIRE(cm.categories.count("S4") == 1);
    CHECK(cm.categories.at("S4").size() == 4);
    CHECK(cm.generators.at("cycle").table() == std::vector<std::size_t>{1, 2, 3, 0});
    CHECK(cm.evaluators.at("E").quotient().size() == 2);
    CHECK(cm.problems.at("P").outset() == std::vector<std::size_t>{0});

    auto fig4 = compile(parse_ok(fixture("fig4.ccs")));
    CHECK(fig4.relations.at("r").outcomes(0).size() == 2);

    model broken;
    category_decl cd;
    cd.name = name_ref("S");
    cd.states = {name_ref("a"), name_ref("a")};
    broken.decls.push_back(cd);
    CHECK_THROWS_AS(compile(broken), error);
}

TEST_CASE("validate is also callable on hand-built models") {
    model m;
    category_decl cd;
    cd.name = name_ref("S");
    cd.states = {name_ref("a"), name_ref("b")};
    m.decls.push_back(cd);
    generator_decl gd;
    gd.name = name_ref("g");
    gd.over = name_ref("S");
    gd.mappings = {{name_ref("a"), name_ref("b")}, {name_ref("b"), name_ref("a")}};
    m.decls.push_back(gd);
    CHECK(validate(m).empty());

    gd.mappings.pop_back();
    m.decls[1] = gd;
    auto diags = validate(m);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message == "generator 'g' is not total: state 'b' has no mapping");
}
