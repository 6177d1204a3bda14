#include <catch2/catch_amalgamated.hpp>

#include "cogcat/category.hpp"

using namespace cogcat;

namespace {
category make_s4() { return category("S4", {"s1", "s2", "s3", "s4"}); }
} // namespace

TEST_CASE("category construction") {
    category s4 = make_s4();
    CHECK(s4.size() == 4);
    CHECK(s4.name() == "S4");
    CHECK(s4.label(0) == "s1");
    CHECK(s4.at("s3").ordinal() == 2);

    category single("X", {"x"});
    CHECK(single.size() == 1);
    CHECK(morphism_count(single) == 1);

    CHECK_THROWS_AS(category("bad", {"a", "a"}), error);
    CHECK_THROWS_AS(category("bad", std::vector<std::string>{}), error);
    CHECK_THROWS_AS(category("bad", {"a", ""}), error);
}

TEST_CASE("hom is the unique morphism for each ordered pair") {
    category s4 = make_s4();
    morphism t = hom(s4, s4.at("s1"), s4.at("s2"));
    CHECK(t.dom().label() == "s1");
    CHECK(t.cod().label() == "s2");
    CHECK(t == hom(s4, s4.at(0), s4.at(1)));

    morphism id = hom(s4, s4.at("s1"), s4.at("s1"));
    CHECK(id.is_identity());
    CHECK(id == identity(s4, s4.at("s1")));

    CHECK_THROWS_AS(s4.at("s9"), error);
    category other("other", {"s1", "s2", "s3", "s4", "s5"});
    CHECK_THROWS_AS(hom(s4, other.at(0), s4.at(0)), error);
}

TEST_CASE("compose follows the diagram and rejects mismatches") {
    category s4 = make_s4();
    auto t12 = hom(s4, s4.at(0), s4.at(1));
    auto t23 = hom(s4, s4.at(1), s4.at(2));
    CHECK(compose(t12, t23) == hom(s4, s4.at(0), s4.at(2)));

    auto id2 = identity(s4, s4.at(1));
    CHECK(compose(t12, id2) == t12);
    CHECK(compose(identity(s4, s4.at(0)), t12) == t12);

    auto t34 = hom(s4, s4.at(2), s4.at(3));
    CHECK_THROWS_AS(compose(t12, t34), error);

    category twin("twin", {"s1", "s2", "s3", "s4"});
    CHECK_THROWS_AS(compose(t12, hom(twin, twin.at(1), twin.at(2))), error);
}

TEST_CASE("morphism count is n squared") {
    CHECK(morphism_count(make_s4()) == 16);
    CHECK(morphism_count(category("X", {"x"})) == 1);

    // n = 8, counted against an explicit pair enumeration.
    std::vector<std::string> labels;
    for (int i = 0; i < 8; ++i) labels.push_back("e" + std::to_string(i));
    category big("E8", labels);
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < big.size(); ++a)
        for (std::size_t b = 0; b < big.size(); ++b) {
            (void)hom(big, big.at(a), big.at(b));
            ++pairs;
        }
    CHECK(morphism_count(big) == pairs);
    CHECK(pairs == 64);
}

TEST_CASE("hom enumeration yields exactly n^2 distinct morphisms") {
    category s4 = make_s4();
    std::vector<morphism> all;
    for (std::size_t a = 0; a < s4.size(); ++a)
        for (std::size_t b = 0; b < s4.size(); ++b) all.push_back(hom(s4, s4.at(a), s4.at(b)));
    CHECK(all.size() == morphism_count(s4));
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) CHECK(all[i] != all[j]);
}

TEST_CASE("composition is associative and identities are neutral, exhaustively to n=5") {
    for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
        category cat("S" + std::to_string(n), labels);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t d = 0; d < n; ++d) {
                        auto f = hom(cat, cat.at(a), cat.at(b));
                        auto g = hom(cat, cat.at(b), cat.at(c));
                        auto h = hom(cat, cat.at(c), cat.at(d));
                        REQUIRE(compose(compose(f, g), h) == compose(f, compose(g, h)));
                    }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                auto f = hom(cat, cat.at(a), cat.at(b));
                REQUIRE(compose(identity(cat, cat.at(a)), f) == f);
                REQUIRE(compose(f, identity(cat, cat.at(b))) == f);
            }
    }
}

TEST_CASE("every morphism is invertible") {
    category s4 = make_s4();
    for (std::size_t a = 0; a < s4.size(); ++a)
        for (std::size_t b = 0; b < s4.size(); ++b) {
            auto there = hom(s4, s4.at(a), s4.at(b));
            auto back = hom(s4, s4.at(b), s4.at(a));
            CHECK(compose(there, back) == identity(s4, s4.at(a)));
            CHECK(compose(back, there) == identity(s4, s4.at(b)));
        }
}

TEST_CASE("categories compare structurally") {
    CHECK(make_s4() == make_s4());
    CHECK(make_s4() != category("S4", {"s1", "s2", "s4", "s3"}));
    CHECK(make_s4() != category("other", {"s1", "s2", "s3", "s4"}));
}
