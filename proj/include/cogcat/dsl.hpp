#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "cogcat/category.hpp"
#include "cogcat/dynamics.hpp"
#include "cogcat/evaluator.hpp"
#include "cogcat/generator.hpp"
#include "cogcat/refinement.hpp"
#include "cogcat/solver.hpp"

// The .ccs declarative text format: categories, generators, evaluators,
// outcome relations, transition systems and problems. Hand-written
// recursive-descent parser with positioned diagnostics, a canonical
// printer (parse∘print is the identity), and a compiler onto the engine
// types.

namespace cogcat::dsl {

enum class severity { error, warning };

struct diagnostic {
    severity sev = severity::error;
    std::size_t line = 0;   // 1-based
    std::size_t column = 0; // 1-based, bytes
    std::string message;
    std::string declaration; // enclosing declaration name, may be empty

    friend bool operator==(const diagnostic&, const diagnostic&) = default;
};

/// A name plus where it was written. Equality ignores the position, so
/// structural model comparison is position-independent.
struct name_ref {
    std::string value;
    std::size_t line = 0;
    std::size_t column = 0;

    name_ref() = default;
    name_ref(std::string v) : value(std::move(v)) {} // NOLINT(google-explicit-constructor)
    name_ref(std::string v, std::size_t l, std::size_t c)
        : value(std::move(v)), line(l), column(c) {}

    friend bool operator==(const name_ref& a, const name_ref& b) noexcept {
        return a.value == b.value;
    }
};

struct category_decl {
    name_ref name;
    std::vector<name_ref> states;
    friend bool operator==(const category_decl&, const category_decl&) = default;
};

struct generator_decl {
    name_ref name;
    name_ref over;
    std::vector<std::pair<name_ref, name_ref>> mappings;
    friend bool operator==(const generator_decl&, const generator_decl&) = default;
};

struct evaluator_block {
    name_ref label;
    std::vector<name_ref> members;
    friend bool operator==(const evaluator_block&, const evaluator_block&) = default;
};

struct evaluator_decl {
    name_ref name;
    name_ref over;
    std::vector<evaluator_block> blocks;
    friend bool operator==(const evaluator_decl&, const evaluator_decl&) = default;
};

struct relation_outcome {
    name_ref label;
    name_ref target;
    friend bool operator==(const relation_outcome&, const relation_outcome&) = default;
};

struct relation_row {
    name_ref source;
    std::vector<relation_outcome> outcomes;
    friend bool operator==(const relation_row&, const relation_row&) = default;
};

struct relation_decl {
    name_ref name;
    name_ref over;
    std::vector<relation_row> rows;
    friend bool operator==(const relation_decl&, const relation_decl&) = default;
};

struct transition_row {
    name_ref source;
    std::vector<name_ref> successors;
    friend bool operator==(const transition_row&, const transition_row&) = default;
};

struct transition_decl {
    name_ref name;
    name_ref over;
    bool deterministic = true;
    std::vector<transition_row> rows;
    friend bool operator==(const transition_decl&, const transition_decl&) = default;
};

struct problem_decl {
    name_ref name;
    name_ref over;
    std::vector<name_ref> outset;
    std::vector<name_ref> goal;
    std::vector<name_ref> using_;
    friend bool operator==(const problem_decl&, const problem_decl&) = default;
};

using declaration = std::variant<category_decl, generator_decl, evaluator_decl, relation_decl,
                                 transition_decl, problem_decl>;

struct model {
    std::vector<declaration> decls;
    friend bool operator==(const model&, const model&) = default;
};

inline const name_ref& decl_name(const declaration& d) {
    return std::visit([](const auto& decl) -> const name_ref& { return decl.name; }, d);
}

inline std::string_view decl_kind(const declaration& d) {
    struct visitor {
        std::string_view operator()(const category_decl&) const { return "category"; }
        std::string_view operator()(const generator_decl&) const { return "generator"; }
        std::string_view operator()(const evaluator_decl&) const { return "evaluator"; }
        std::string_view operator()(const relation_decl&) const { return "relation"; }
        std::string_view operator()(const transition_decl&) const { return "transition"; }
        std::string_view operator()(const problem_decl&) const { return "problem"; }
    };
    return std::visit(visitor{}, d);
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace detail {

enum class token_kind { ident, lbrace, rbrace, semicolon, comma, colon, equals, arrow, end };

struct token {
    token_kind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

inline bool name_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

inline bool name_ascii_continue(char c) {
    return name_start(c) || (c >= '0' && c <= '9') || c == '#';
}

// NAME = [A-Za-z_][A-Za-z0-9_#⊗-]*  A '-' continues a name only when not
// followed by '>', so "a->b" always lexes as an arrow. A '#' starts a
// comment only at token start, never inside a name.
struct lexer {
    std::string_view src;
    std::size_t pos = 0;
    std::size_t line = 1;
    std::size_t column = 1;
    std::vector<diagnostic>& diags;

    explicit lexer(std::string_view text, std::vector<diagnostic>& sink)
        : src(text), diags(sink) {}

    char peek(std::size_t off = 0) const {
        return pos + off < src.size() ? src[pos + off] : '\0';
    }

    void bump(std::size_t count = 1) {
        for (std::size_t i = 0; i < count && pos < src.size(); ++i) {
            if (src[pos] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
            ++pos;
        }
    }

    bool at_tensor() const {
        return pos + 2 < src.size() && src[pos] == '\xE2' && src[pos + 1] == '\x8A' &&
               src[pos + 2] == '\x97';
    }

    std::vector<token> run() {
        std::vector<token> out;
        while (pos < src.size()) {
            const char c = src[pos];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
                continue;
            }
            if (c == '#') { // comment to end of line
                while (pos < src.size() && src[pos] != '\n') bump();
                continue;
            }
            const std::size_t tline = line;
            const std::size_t tcol = column;
            if (name_start(c)) {
                std::string text;
                while (pos < src.size()) {
                    if (at_tensor()) {
                        text.append(src.substr(pos, 3));
                        bump(3);
                        continue;
                    }
                    const char cc = src[pos];
                    if (name_ascii_continue(cc) || (cc == '-' && peek(1) != '>')) {
                        text.push_back(cc);
                        bump();
                        continue;
                    }
                    break;
                }
                out.push_back({token_kind::ident, std::move(text), tline, tcol});
                continue;
            }
            switch (c) {
            case '{': out.push_back({token_kind::lbrace, "{", tline, tcol}); bump(); continue;
            case '}': out.push_back({token_kind::rbrace, "}", tline, tcol}); bump(); continue;
            case ';': out.push_back({token_kind::semicolon, ";", tline, tcol}); bump(); continue;
            case ',': out.push_back({token_kind::comma, ",", tline, tcol}); bump(); continue;
            case ':': out.push_back({token_kind::colon, ":", tline, tcol}); bump(); continue;
            case '=': out.push_back({token_kind::equals, "=", tline, tcol}); bump(); continue;
            case '-':
                if (peek(1) == '>') {
                    out.push_back({token_kind::arrow, "->", tline, tcol});
                    bump(2);
                    continue;
                }
                break;
            default: break;
            }
            std::string shown;
            if (c >= 0x20 && c < 0x7F) {
                shown = std::string("'") + c + "'";
            } else {
                static const char hex[] = "0123456789abcdef";
                const auto byte = static_cast<unsigned char>(c);
                shown = std::string("byte 0x") + hex[byte >> 4] + hex[byte & 0xF];
            }
            diags.push_back(
                {severity::error, tline, tcol, "unexpected character " + shown, ""});
            // Skip the whole UTF-8 sequence, not each of its bytes.
            bump();
            while (pos < src.size() && (static_cast<unsigned char>(src[pos]) & 0xC0) == 0x80)
                bump();
        }
        out.push_back({token_kind::end, "", line, column});
        return out;
    }
};

inline const char* token_name(token_kind k) {
    switch (k) {
    case token_kind::ident: return "name";
    case token_kind::lbrace: return "'{'";
    case token_kind::rbrace: return "'}'";
    case token_kind::semicolon: return "';'";
    case token_kind::comma: return "','";
    case token_kind::colon: return "':'";
    case token_kind::equals: return "'='";
    case token_kind::arrow: return "'->'";
    case token_kind::end: return "end of file";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct parse_abort {}; // thrown to unwind to the declaration loop

struct parser {
    const std::vector<token>& tokens;
    std::size_t pos = 0;
    std::vector<diagnostic>& diags;
    std::string current_decl;

    parser(const std::vector<token>& ts, std::vector<diagnostic>& sink)
        : tokens(ts), diags(sink) {}

    const token& peek(std::size_t off = 0) const {
        return tokens[std::min(pos + off, tokens.size() - 1)];
    }

    const token& advance() {
        const token& t = tokens[pos];
        if (pos + 1 < tokens.size()) ++pos;
        return t;
    }

    bool check(token_kind k) const { return peek().kind == k; }

    [[noreturn]] void fail(const token& at, const std::string& message) {
        diags.push_back({severity::error, at.line, at.column, message, current_decl});
        throw parse_abort{};
    }

    const token& expect(token_kind k) {
        if (!check(k))
            fail(peek(), std::string("expected ") + token_name(k) + ", found " +
                             token_name(peek().kind));
        return advance();
    }

    const token& expect_keyword(std::string_view word) {
        if (!check(token_kind::ident) || peek().text != word)
            fail(peek(), "expected '" + std::string(word) + "', found " +
                             (check(token_kind::ident) ? "'" + peek().text + "'"
                                                       : token_name(peek().kind)));
        return advance();
    }

    name_ref expect_name() {
        const token& t = expect(token_kind::ident);
        return name_ref(t.text, t.line, t.column);
    }

    std::vector<name_ref> name_list() {
        std::vector<name_ref> out{expect_name()};
        while (check(token_kind::comma)) {
            advance();
            out.push_back(expect_name());
        }
        return out;
    }

    static bool is_decl_keyword(const token& t) {
        return t.kind == token_kind::ident &&
               (t.text == "category" || t.text == "generator" || t.text == "evaluator" ||
                t.text == "relation" || t.text == "transition" || t.text == "problem");
    }

    /// After an error: skip to the next declaration at brace depth zero.
    void synchronize() {
        std::size_t depth = 0;
        while (!check(token_kind::end)) {
            if (check(token_kind::lbrace)) {
                ++depth;
                advance();
            } else if (check(token_kind::rbrace)) {
                advance();
                if (depth <= 1) return;
                --depth;
            } else if (depth == 0 && is_decl_keyword(peek())) {
                return;
            } else {
                advance();
            }
        }
    }

    model run() {
        model out;
        while (!check(token_kind::end)) {
            try {
                out.decls.push_back(parse_decl());
            } catch (const parse_abort&) {
                synchronize();
            }
            current_decl.clear();
        }
        return out;
    }

    declaration parse_decl() {
        if (!is_decl_keyword(peek()))
            fail(peek(), "expected a declaration (category, generator, evaluator, relation, "
                         "transition or problem)");
        const std::string kind = peek().text;
        advance();
        if (kind == "category") return parse_category();
        if (kind == "generator") return parse_generator();
        if (kind == "evaluator") return parse_evaluator();
        if (kind == "relation") return parse_relation();
        if (kind == "transition") return parse_transition();
        return parse_problem();
    }

    category_decl parse_category() {
        category_decl d;
        d.name = expect_name();
        current_decl = d.name.value;
        expect(token_kind::lbrace);
        expect_keyword("states");
        expect(token_kind::colon);
        d.states = name_list();
        expect(token_kind::semicolon);
        expect(token_kind::rbrace);
        return d;
    }

    generator_decl parse_generator() {
        generator_decl d;
        d.name = expect_name();
        current_decl = d.name.value;
        expect_keyword("over");
        d.over = expect_name();
        expect(token_kind::lbrace);
        while (check(token_kind::ident)) {
            name_ref lhs = expect_name();
            expect(token_kind::arrow);
            name_ref rhs = expect_name();
            expect(token_kind::semicolon);
            d.mappings.emplace_back(std::move(lhs), std::move(rhs));
        }
        if (d.mappings.empty())
            fail(peek(), "generator '" + d.name.value + "' has no mappings");
        expect(token_kind::rbrace);
        return d;
    }

    evaluator_decl parse_evaluator() {
        evaluator_decl d;
        d.name = expect_name();
        current_decl = d.name.value;
        expect_keyword("over");
        d.over = expect_name();
        expect(token_kind::lbrace);
        while (check(token_kind::ident)) {
            evaluator_block block;
            block.label = expect_name();
            expect(token_kind::equals);
            expect(token_kind::lbrace);
            block.members = name_list();
            expect(token_kind::rbrace);
            expect(token_kind::semicolon);
            d.blocks.push_back(std::move(block));
        }
        if (d.blocks.empty())
            fail(peek(), "evaluator '" + d.name.value + "' has no blocks");
        expect(token_kind::rbrace);
        return d;
    }

    relation_decl parse_relation() {
        relation_decl d;
        d.name = expect_name();
        current_decl = d.name.value;
        expect_keyword("over");
        d.over = expect_name();
        expect(token_kind::lbrace);
        while (check(token_kind::ident)) {
            relation_row row;
            row.source = expect_name();
            expect(token_kind::arrow);
            expect(token_kind::lbrace);
            while (true) {
                relation_outcome out;
                out.label = expect_name();
                expect(token_kind::colon);
                out.target = expect_name();
                row.outcomes.push_back(std::move(out));
                if (!check(token_kind::comma)) break;
                advance();
            }
            expect(token_kind::rbrace);
            expect(token_kind::semicolon);
            d.rows.push_back(std::move(row));
        }
        if (d.rows.empty())
            fail(peek(), "relation '" + d.name.value + "' has no rows");
        expect(token_kind::rbrace);
        return d;
    }

    transition_decl parse_transition() {
        transition_decl d;
        d.name = expect_name();
        current_decl = d.name.value;
        expect_keyword("over");
        d.over = expect_name();
        if (check(token_kind::ident) && peek().text == "deterministic") {
            d.deterministic = true;
            advance();
        } else if (check(token_kind::ident) && peek().text == "indeterministic") {
            d.deterministic = false;
            advance();
        } else {
            fail(peek(), "expected 'deterministic' or 'indeterministic'");
        }
        expect(token_kind::lbrace);
        while (check(token_kind::ident)) {
            transition_row row;
            row.source = expect_name();
            expect(token_kind::arrow);
            expect(token_kind::lbrace);
            row.successors = name_list();
            expect(token_kind::rbrace);
            expect(token_kind::semicolon);
            d.rows.push_back(std::move(row));
        }
        if (d.rows.empty())
            fail(peek(), "transition '" + d.name.value + "' has no rows");
        expect(token_kind::rbrace);
        return d;
    }

    problem_decl parse_problem() {
        problem_decl d;
        d.name = expect_name();
        current_decl = d.name.value;
        expect_keyword("over");
        d.over = expect_name();
        expect(token_kind::lbrace);
        expect_keyword("outset");
        expect(token_kind::colon);
        expect(token_kind::lbrace);
        d.outset = name_list();
        expect(token_kind::rbrace);
        expect(token_kind::semicolon);
        expect_keyword("goal");
        expect(token_kind::colon);
        expect(token_kind::lbrace);
        d.goal = name_list();
        expect(token_kind::rbrace);
        expect(token_kind::semicolon);
        expect_keyword("using");
        expect(token_kind::colon);
        d.using_ = name_list();
        expect(token_kind::semicolon);
        expect(token_kind::rbrace);
        return d;
    }
};

inline void sort_and_cap(std::vector<diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(), [](const diagnostic& a, const diagnostic& b) {
        return a.line != b.line ? a.line < b.line : a.column < b.column;
    });
    if (diags.size() > 50) diags.resize(50);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline std::vector<diagnostic> validate(const model& m) {
    std::vector<diagnostic> diags;
    auto report = [&](const name_ref& at, std::string message, const std::string& decl) {
        diags.push_back({severity::error, at.line, at.column, std::move(message), decl});
    };

    // Name uniqueness per declaration kind.
    std::map<std::string_view, std::unordered_map<std::string_view, std::size_t>> by_kind;
    for (std::size_t i = 0; i < m.decls.size(); ++i) {
        const auto& name = decl_name(m.decls[i]);
        auto kind = decl_kind(m.decls[i]);
        auto [it, fresh] = by_kind[kind].emplace(name.value, i);
        if (!fresh)
            report(name, "duplicate " + std::string(kind) + " '" + name.value + "'", name.value);
    }

    const auto& categories = by_kind["category"];
    const auto& generators = by_kind["generator"];

    auto category_of = [&](const name_ref& over,
                           const std::string& decl) -> const category_decl* {
        auto it = categories.find(over.value);
        if (it == categories.end()) {
            report(over, "unknown category '" + over.value + "'", decl);
            return nullptr;
        }
        return &std::get<category_decl>(m.decls[it->second]);
    };

    auto state_index = [](const category_decl& cat) {
        std::unordered_map<std::string_view, std::size_t> index;
        for (std::size_t i = 0; i < cat.states.size(); ++i)
            index.emplace(cat.states[i].value, i);
        return index;
    };

    struct checker {
        const model& m;
        decltype(report)& emit;
        decltype(category_of)& find_category;
        decltype(state_index)& index_of;
        const std::unordered_map<std::string_view, std::size_t>& generators;

        void operator()(const category_decl& d) const {
            std::unordered_set<std::string_view> seen;
            for (const auto& s : d.states)
                if (!seen.insert(s.value).second)
                    emit(s, "duplicate state '" + s.value + "'", d.name.value);
        }

        void operator()(const generator_decl& d) const {
            const category_decl* cat = find_category(d.over, d.name.value);
            if (!cat) return;
            auto index = index_of(*cat);
            std::unordered_set<std::string_view> mapped;
            for (const auto& [lhs, rhs] : d.mappings) {
                if (!index.contains(lhs.value))
                    emit(lhs, "unknown state '" + lhs.value + "'", d.name.value);
                else if (!mapped.insert(lhs.value).second)
                    emit(lhs, "state '" + lhs.value + "' is mapped twice", d.name.value);
                if (!index.contains(rhs.value))
                    emit(rhs, "unknown state '" + rhs.value + "'", d.name.value);
            }
            for (const auto& s : cat->states)
                if (!mapped.contains(s.value))
                    emit(d.name,
                           "generator '" + d.name.value + "' is not total: state '" + s.value +
                               "' has no mapping",
                           d.name.value);
        }

        void operator()(const evaluator_decl& d) const {
            const category_decl* cat = find_category(d.over, d.name.value);
            if (!cat) return;
            auto index = index_of(*cat);
            std::unordered_set<std::string_view> labels;
            std::unordered_map<std::string_view, std::string_view> holder; // state -> block
            for (const auto& block : d.blocks) {
                if (!labels.insert(block.label.value).second)
                    emit(block.label, "duplicate block label '" + block.label.value + "'",
                           d.name.value);
                for (const auto& member : block.members) {
                    if (!index.contains(member.value)) {
                        emit(member, "unknown state '" + member.value + "'", d.name.value);
                        continue;
                    }
                    auto [it, fresh] = holder.emplace(member.value, block.label.value);
                    if (!fresh)
                        emit(member,
                               "state '" + member.value + "' appears in blocks '" +
                                   std::string(it->second) + "' and '" + block.label.value + "'",
                               d.name.value);
                }
            }
            for (const auto& s : cat->states)
                if (!holder.contains(s.value))
                    emit(d.name,
                           "evaluator '" + d.name.value + "' does not cover state '" + s.value +
                               "'",
                           d.name.value);
        }

        void operator()(const relation_decl& d) const {
            const category_decl* cat = find_category(d.over, d.name.value);
            if (!cat) return;
            auto index = index_of(*cat);
            std::unordered_set<std::string_view> sources;
            for (const auto& row : d.rows) {
                if (!index.contains(row.source.value))
                    emit(row.source, "unknown state '" + row.source.value + "'", d.name.value);
                else if (!sources.insert(row.source.value).second)
                    emit(row.source, "state '" + row.source.value + "' has two outcome rows",
                           d.name.value);
                std::unordered_set<std::string_view> labels;
                for (const auto& out : row.outcomes) {
                    if (!labels.insert(out.label.value).second)
                        emit(out.label,
                               "duplicate outcome label '" + out.label.value + "' on state '" +
                                   row.source.value + "'",
                               d.name.value);
                    if (!index.contains(out.target.value))
                        emit(out.target, "unknown state '" + out.target.value + "'",
                               d.name.value);
                }
            }
            for (const auto& s : cat->states)
                if (!sources.contains(s.value))
                    emit(d.name,
                           "relation '" + d.name.value + "' is not total: state '" + s.value +
                               "' has no outcomes",
                           d.name.value);
        }

        void operator()(const transition_decl& d) const {
            const category_decl* cat = find_category(d.over, d.name.value);
            if (!cat) return;
            auto index = index_of(*cat);
            std::unordered_set<std::string_view> sources;
            for (const auto& row : d.rows) {
                if (!index.contains(row.source.value))
                    emit(row.source, "unknown state '" + row.source.value + "'", d.name.value);
                else if (!sources.insert(row.source.value).second)
                    emit(row.source, "state '" + row.source.value + "' has two rows",
                           d.name.value);
                std::unordered_set<std::string_view> succ;
                for (const auto& s : row.successors) {
                    if (!index.contains(s.value))
                        emit(s, "unknown state '" + s.value + "'", d.name.value);
                    if (!succ.insert(s.value).second)
                        emit(s, "duplicate successor '" + s.value + "'", d.name.value);
                }
                if (d.deterministic && row.successors.size() != 1)
                    emit(row.source,
                           "deterministic transition needs exactly one successor for '" +
                               row.source.value + "'",
                           d.name.value);
            }
            for (const auto& s : cat->states)
                if (!sources.contains(s.value))
                    emit(d.name,
                           "transition '" + d.name.value + "' is not total: state '" + s.value +
                               "' has no successors",
                           d.name.value);
        }

        void operator()(const problem_decl& d) const {
            const category_decl* cat = find_category(d.over, d.name.value);
            auto check_states = [&](const std::vector<name_ref>& names, const char* what) {
                std::unordered_set<std::string_view> seen;
                for (const auto& s : names) {
                    if (cat) {
                        bool known = false;
                        for (const auto& label : cat->states)
                            if (label.value == s.value) known = true;
                        if (!known)
                            emit(s, "unknown state '" + s.value + "'", d.name.value);
                    }
                    if (!seen.insert(s.value).second)
                        emit(s, std::string("duplicate ") + what + " state '" + s.value + "'",
                               d.name.value);
                }
            };
            check_states(d.outset, "outset");
            check_states(d.goal, "goal");
            std::unordered_set<std::string_view> used;
            for (const auto& g : d.using_) {
                if (!used.insert(g.value).second)
                    emit(g, "duplicate generator '" + g.value + "' in using",
                           d.name.value);
                auto it = generators.find(g.value);
                if (it == generators.end()) {
                    emit(g, "unknown generator '" + g.value + "'", d.name.value);
                    continue;
                }
                const auto& gd = std::get<generator_decl>(m.decls[it->second]);
                if (gd.over.value != d.over.value)
                    emit(g,
                           "generator '" + g.value + "' is over '" + gd.over.value +
                               "', but problem '" + d.name.value + "' is over '" + d.over.value +
                               "'",
                           d.name.value);
            }
        }
    };

    checker v{m, report, category_of, state_index, generators};
    for (const auto& decl : m.decls) std::visit(v, decl);

    detail::sort_and_cap(diags);
    return diags;
}

// ---------------------------------------------------------------------------
// Parsing entry point
// ---------------------------------------------------------------------------

struct parse_result {
    std::optional<model> parsed; // present iff there were no errors
    std::vector<diagnostic> diagnostics;

    bool ok() const noexcept { return parsed.has_value(); }
};

inline parse_result parse(std::string_view text) {
    parse_result result;
    detail::lexer lex(text, result.diagnostics);
    const auto tokens = lex.run();
    detail::parser p(tokens, result.diagnostics);
    model m = p.run();
    if (result.diagnostics.empty()) {
        auto semantic = validate(m);
        result.diagnostics.insert(result.diagnostics.end(), semantic.begin(), semantic.end());
    }
    detail::sort_and_cap(result.diagnostics);
    const bool has_error =
        std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                    [](const diagnostic& d) { return d.sev == severity::error; });
    if (!has_error) result.parsed = std::move(m);
    return result;
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace detail {

inline void print_list(std::string& out, const std::vector<name_ref>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i].value;
    }
}

struct printer {
    std::string& out;

    void operator()(const category_decl& d) const {
        out += "category " + d.name.value + " {\n  states: ";
        print_list(out, d.states);
        out += ";\n}\n";
    }

    void operator()(const generator_decl& d) const {
        out += "generator " + d.name.value + " over " + d.over.value + " {\n";
        for (const auto& [lhs, rhs] : d.mappings)
            out += "  " + lhs.value + " -> " + rhs.value + ";\n";
        out += "}\n";
    }

    void operator()(const evaluator_decl& d) const {
        out += "evaluator " + d.name.value + " over " + d.over.value + " {\n";
        for (const auto& block : d.blocks) {
            out += "  " + block.label.value + " = {";
            print_list(out, block.members);
            out += "};\n";
        }
        out += "}\n";
    }

    void operator()(const relation_decl& d) const {
        out += "relation " + d.name.value + " over " + d.over.value + " {\n";
        for (const auto& row : d.rows) {
            out += "  " + row.source.value + " -> {";
            for (std::size_t i = 0; i < row.outcomes.size(); ++i) {
                if (i) out += ", ";
                out += row.outcomes[i].label.value + ": " + row.outcomes[i].target.value;
            }
            out += "};\n";
        }
        out += "}\n";
    }

    void operator()(const transition_decl& d) const {
        out += "transition " + d.name.value + " over " + d.over.value +
               (d.deterministic ? " deterministic" : " indeterministic") + " {\n";
        for (const auto& row : d.rows) {
            out += "  " + row.source.value + " -> {";
            print_list(out, row.successors);
            out += "};\n";
        }
        out += "}\n";
    }

    void operator()(const problem_decl& d) const {
        out += "problem " + d.name.value + " over " + d.over.value + " {\n  outset: {";
        print_list(out, d.outset);
        out += "};\n  goal: {";
        print_list(out, d.goal);
        out += "};\n  using: ";
        print_list(out, d.using_);
        out += ";\n}\n";
    }
};

} // namespace detail

/// Canonical text: declarations in original order, one mapping per line,
/// two-space indent, LF endings, one blank line between declarations.
inline std::string print(const model& m) {
    std::string out;
    for (std::size_t i = 0; i < m.decls.size(); ++i) {
        if (i) out += "\n";
        std::visit(detail::printer{out}, m.decls[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Compilation onto the engine types
// ---------------------------------------------------------------------------

struct compiled_model {
    std::map<std::string, category> categories;
    std::map<std::string, generator> generators;
    std::map<std::string, evaluator> evaluators;
    std::map<std::string, outcome_relation> relations;
    std::map<std::string, transition_system> transitions;
    std::map<std::string, problem> problems;
};

/// Instantiates every declaration. The model must validate cleanly;
/// the first validation error is thrown otherwise.
inline compiled_model compile(const model& m) {
    {
        auto diags = validate(m);
        for (const auto& d : diags)
            if (d.sev == severity::error)
                throw error("invalid model: " + d.message + " (line " + std::to_string(d.line) +
                            ")");
    }

    compiled_model out;
    for (const auto& decl : m.decls) {
        if (const auto* d = std::get_if<category_decl>(&decl)) {
            std::vector<std::string> labels;
            labels.reserve(d->states.size());
            for (const auto& s : d->states) labels.push_back(s.value);
            out.categories.emplace(d->name.value, category(d->name.value, std::move(labels)));
        }
    }

    struct visitor {
        compiled_model& out;

        void operator()(const category_decl&) const {}

        void operator()(const generator_decl& d) const {
            const category& cat = out.categories.at(d.over.value);
            std::vector<std::size_t> table(cat.size());
            for (const auto& [lhs, rhs] : d.mappings)
                table[*cat.find(lhs.value)] = *cat.find(rhs.value);
            out.generators.emplace(d.name.value, generator(d.name.value, cat, std::move(table)));
        }

        void operator()(const evaluator_decl& d) const {
            const category& cat = out.categories.at(d.over.value);
            std::vector<std::vector<std::size_t>> blocks;
            std::vector<std::string> labels;
            for (const auto& block : d.blocks) {
                std::vector<std::size_t> members;
                members.reserve(block.members.size());
                for (const auto& member : block.members)
                    members.push_back(*cat.find(member.value));
                blocks.push_back(std::move(members));
                labels.push_back(block.label.value);
            }
            out.evaluators.emplace(
                d.name.value,
                evaluator(partition(cat, std::move(blocks), std::move(labels)),
                          d.name.value + "_V"));
        }

        void operator()(const relation_decl& d) const {
            const category& cat = out.categories.at(d.over.value);
            std::vector<std::vector<outcome>> rows(cat.size());
            for (const auto& row : d.rows) {
                auto& slot = rows[*cat.find(row.source.value)];
                for (const auto& o : row.outcomes)
                    slot.push_back(outcome{o.label.value, *cat.find(o.target.value), {}});
            }
            out.relations.emplace(d.name.value,
                                  outcome_relation(d.name.value, cat, std::move(rows)));
        }

        void operator()(const transition_decl& d) const {
            const category& cat = out.categories.at(d.over.value);
            std::vector<std::vector<std::size_t>> rows(cat.size());
            for (const auto& row : d.rows) {
                auto& slot = rows[*cat.find(row.source.value)];
                for (const auto& s : row.successors) slot.push_back(*cat.find(s.value));
            }
            if (d.deterministic) {
                std::vector<std::size_t> table(cat.size());
                for (std::size_t i = 0; i < rows.size(); ++i) table[i] = rows[i].front();
                out.transitions.emplace(d.name.value,
                                        transition_system::deterministic(cat, std::move(table)));
            } else {
                out.transitions.emplace(
                    d.name.value, transition_system::indeterministic(cat, std::move(rows)));
            }
        }

        void operator()(const problem_decl& d) const {
            const category& cat = out.categories.at(d.over.value);
            auto ordinals = [&](const std::vector<name_ref>& names) {
                std::vector<std::size_t> ords;
                ords.reserve(names.size());
                for (const auto& s : names) ords.push_back(*cat.find(s.value));
                return ords;
            };
            generator_set available(cat);
            for (const auto& g : d.using_) available.add(out.generators.at(g.value));
            out.problems.emplace(d.name.value, problem(cat, ordinals(d.outset), ordinals(d.goal),
                                                       std::move(available)));
        }
    };

    visitor v{out};
    for (const auto& decl : m.decls)
        if (!std::holds_alternative<problem_decl>(decl)) std::visit(v, decl);
    for (const auto& decl : m.decls)
        if (std::holds_alternative<problem_decl>(decl)) std::visit(v, decl);

    return out;
}

} // namespace cogcat::dsl
