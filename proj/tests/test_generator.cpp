#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cogcat/generator.hpp"
#include "support/oracles.hpp"

using namespace cogcat;

namespace {
category make_s4() { return category("S4", {"s1", "s2", "s3", "s4"}); }

category sized(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
    return category("S" + std::to_string(n), labels);
}
} // namespace

TEST_CASE("apply and to_morphism agree (the gt/g pair)") {
    category s4 = make_s4();
    auto c = cycle_generator(s4);
    CHECK(c.apply(s4.at("s1")) == s4.at("s2"));
    CHECK(identity_generator(s4).apply(s4.at("s3")) == s4.at("s3"));
    CHECK(constant_generator(s4, s4.at("s4")).apply(s4.at("s2")) == s4.at("s4"));

    CHECK(c.to_morphism(s4.at("s1")) == hom(s4, s4.at("s1"), s4.at("s2")));
    CHECK(identity_generator(s4).to_morphism(s4.at("s1")).is_identity());
    CHECK(constant_generator(s4, s4.at("s4")).to_morphism(s4.at("s4")).is_identity());

    for (std::size_t i = 0; i < s4.size(); ++i)
        CHECK(c.apply(s4.at(i)) == c.to_morphism(s4.at(i)).cod());

    category other("other", {"a", "b"});
    CHECK_THROWS_AS(c.apply(other.at(0)), error);
}

TEST_CASE("generator construction validates its table") {
    category s4 = make_s4();
    CHECK_THROWS_AS(generator("bad", s4, {0, 1, 2}), error);
    CHECK_THROWS_AS(generator("bad", s4, {0, 1, 2, 7}), error);
}

TEST_CASE("generator equality ignores names") {
    category s4 = make_s4();
    CHECK(cycle_generator(s4) == cycle_generator(s4).renamed("other"));
    CHECK(cycle_generator(s4) != identity_generator(s4));
}

TEST_CASE("compose_generators") {
    category s4 = make_s4();
    auto c = cycle_generator(s4);
    auto cc = compose_generators(c, c);
    CHECK(cc.apply(s4.at("s1")) == s4.at("s3"));
    CHECK(compose_generators(c, identity_generator(s4)) == c);
    CHECK(compose_generators(identity_generator(s4), c) == c);

    auto c4 = compose_generators(c, compose_generators(c, cc));
    CHECK(c4 == identity_generator(s4));

    category other("other", {"a", "b"});
    CHECK_THROWS_AS(compose_generators(c, cycle_generator(other)), error);
}

TEST_CASE("compose_generators is associative with neutral identity, exhaustively to n=4") {
    for (std::size_t n = 1; n <= 4; ++n) {
        category cat = sized(n);
        // All tables, composed through a memo of pair compositions.
        std::vector<std::vector<std::size_t>> tables;
        detail::for_each_table(n, [&](const std::vector<std::size_t>& t) { tables.push_back(t); });
        REQUIRE(tables.size() == static_cast<std::size_t>(std::pow(double(n), double(n))));

        auto index_of = [&](const std::vector<std::size_t>& t) {
            std::size_t code = 0;
            for (std::size_t v : t) code = code * n + v;
            return code;
        };
        const std::size_t count = tables.size();
        std::vector<std::size_t> memo(count * count);
        for (std::size_t a = 0; a < count; ++a)
            for (std::size_t b = 0; b < count; ++b) {
                std::vector<std::size_t> composed(n);
                for (std::size_t i = 0; i < n; ++i) composed[i] = tables[a][tables[b][i]];
                memo[a * count + b] = index_of(composed);
            }
        for (std::size_t a = 0; a < count; ++a)
            for (std::size_t b = 0; b < count; ++b)
                for (std::size_t c = 0; c < count; ++c)
                    REQUIRE(memo[memo[a * count + b] * count + c] ==
                            memo[a * count + memo[b * count + c]]);

        const std::size_t id = index_of(identity_generator(cat).table());
        for (std::size_t a = 0; a < count; ++a) {
            REQUIRE(memo[a * count + id] == a);
            REQUIRE(memo[id * count + a] == a);
        }
    }
}

TEST_CASE("is_purposeful") {
    category s4 = make_s4();
    auto target = is_purposeful(constant_generator(s4, s4.at("s2")));
    REQUIRE(target.has_value());
    CHECK(*target == s4.at("s2"));
    CHECK_FALSE(is_purposeful(cycle_generator(s4)).has_value());

    category one("one", {"x"});
    CHECK(is_purposeful(generator("only", one, {0})).has_value());
}

TEST_CASE("cycle_generator") {
    category s4 = make_s4();
    CHECK(cycle_generator(s4).table() == std::vector<std::size_t>{1, 2, 3, 0});
    category one("one", {"x"});
    CHECK(cycle_generator(one) == identity_generator(one));
    category two("two", {"a", "b"});
    CHECK(cycle_generator(two).table() == std::vector<std::size_t>{1, 0});
}

TEST_CASE("powers_closure") {
    category s4 = make_s4();
    auto powers = powers_closure(cycle_generator(s4));
    CHECK(powers.size() == 4);
    CHECK(is_omnipotent(powers));

    auto only = powers_closure(identity_generator(s4));
    CHECK(only.size() == 1);

    generator swap_pairs("swap", s4, {1, 0, 3, 2});
    auto swap_powers = powers_closure(swap_pairs);
    CHECK(swap_powers.size() == 2);
    CHECK(swap_powers.contains_table(identity_generator(s4)));
    CHECK_FALSE(is_omnipotent(swap_powers));
}

TEST_CASE("powers of the cycle are omnipotent with exactly n members, n<=8") {
    for (std::size_t n = 1; n <= 8; ++n) {
        category cat = sized(n);
        auto powers = powers_closure(cycle_generator(cat));
        REQUIRE(powers.size() == n);
        REQUIRE(is_omnipotent(powers));
        REQUIRE(is_reduced(powers));
    }
}

TEST_CASE("is_omnipotent uses the members as given") {
    category s4 = make_s4();
    CHECK(is_omnipotent(canonical_set(s4)));
    generator_set only_identity(s4);
    only_identity.add(identity_generator(s4));
    CHECK_FALSE(is_omnipotent(only_identity));

    // The cycle generates everything by composition, but the set {cycle}
    // itself is not omnipotent.
    generator_set only_cycle(s4);
    only_cycle.add(cycle_generator(s4));
    CHECK_FALSE(is_omnipotent(only_cycle));
}

TEST_CASE("is_reduced") {
    category s4 = make_s4();
    CHECK(is_reduced(powers_closure(cycle_generator(s4))));
    CHECK(is_reduced(canonical_set(s4)));

    generator_set five(s4);
    for (const auto& g : canonical_set(s4)) five.add(g);
    five.add(cycle_generator(s4));
    CHECK(five.size() == 5);
    CHECK(is_omnipotent(five));
    CHECK_FALSE(is_reduced(five));
}

TEST_CASE("reduced set properties") {
    for (const auto& set : {powers_closure(cycle_generator(sized(5))), canonical_set(sized(4))}) {
        REQUIRE(is_reduced(set));
        const std::size_t n = set.over().size();
        // Property 1: every pair (A, B) is realized by exactly one member.
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                std::size_t hits = 0;
                for (const auto& g : set)
                    if (g.table()[a] == b) ++hits;
                REQUIRE(hits == 1);
            }
        // Property 2: distinct members never agree anywhere.
        const auto& members = set.members();
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                for (std::size_t a = 0; a < n; ++a)
                    REQUIRE(members[i].table()[a] != members[j].table()[a]);
    }
}

TEST_CASE("canonical_set") {
    category u2("U2", {"love", "nolove"});
    auto canon = canonical_set(u2);
    REQUIRE(canon.size() == 2);
    CHECK(canon.members()[0] == constant_generator(u2, u2.at("love")));
    CHECK(canon.members()[1] == constant_generator(u2, u2.at("nolove")));

    category one("one", {"x"});
    auto only = canonical_set(one);
    REQUIRE(only.size() == 1);
    CHECK(only.members()[0] == identity_generator(one));

    category s4 = make_s4();
    auto four = canonical_set(s4);
    REQUIRE(four.size() == 4);
    for (const auto& g : four) CHECK(is_purposeful(g).has_value());
    CHECK(is_omnipotent(four));
}

TEST_CASE("canonical_from_omnipotent rebuilds exactly the canonical set") {
    category s4 = make_s4();
    auto from_powers = canonical_from_omnipotent(powers_closure(cycle_generator(s4)));
    auto canon = canonical_set(s4);
    REQUIRE(from_powers.size() == canon.size());
    for (std::size_t i = 0; i < canon.size(); ++i)
        CHECK(from_powers.members()[i] == canon.members()[i]);

    auto from_canonical = canonical_from_omnipotent(canon);
    for (std::size_t i = 0; i < canon.size(); ++i)
        CHECK(from_canonical.members()[i] == canon.members()[i]);

    generator_set only_identity(s4);
    only_identity.add(identity_generator(s4));
    CHECK_THROWS_AS(canonical_from_omnipotent(only_identity), error);
}

TEST_CASE("enumerate_generators") {
    CHECK(enumerate_generators(sized(2)).size() == 4);
    CHECK(enumerate_generators(sized(1)).size() == 1);
    CHECK(enumerate_generators(sized(3)).size() == 27);

    // Count against an independent odometer loop, n <= 5.
    for (std::size_t n = 1; n <= 5; ++n) {
        std::size_t expected = 1;
        for (std::size_t i = 0; i < n; ++i) expected *= n;
        CHECK(enumerate_generators(sized(n)).size() == expected);
    }

    CHECK_THROWS_AS(enumerate_generators(sized(9)), error);
}

TEST_CASE("no generator set smaller than n is omnipotent") {
    CHECK(min_omnipotent_size_check(sized(3), 2));
    CHECK(min_omnipotent_size_check(sized(1), 0));
    CHECK(min_omnipotent_size_check(sized(2), 1));
    CHECK(min_omnipotent_size_check(sized(4), 3));
    CHECK_THROWS_AS(min_omnipotent_size_check(sized(5), 2), error);
    CHECK_THROWS_AS(min_omnipotent_size_check(sized(3), 3), error);
}
