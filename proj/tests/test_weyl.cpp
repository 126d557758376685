#include "doctest.h"

#include <algorithm>
#include <set>

#include "dp1/weyl.hpp"

using namespace dp1;
using namespace dp1::weyl;
using picard::cls;
using picard::parse_class;
using picard::root;

namespace {

std::vector<cls> canonical_six_pairs() {
    std::vector<cls> out;
    for (const char* s : {"1;1,1,0,0,0,0,0,0", "1;0,0,1,1,0,0,0,0",
                          "1;0,0,0,0,1,1,0,0", "1;0,0,0,0,0,0,1,1",
                          "3;1,1,1,1,1,1,0,2", "3;1,1,1,1,2,0,1,1"}) {
        cls c = parse_class(s);
        out.push_back(c);
        out.push_back(picard::partner(c));
    }
    return out;
}

std::vector<cls> canonical_twelve() {
    std::vector<cls> out;
    for (const char* s : {"1;1,1,0,0,0,0,0,0", "1;0,0,1,1,0,0,0,0",
                          "2;1,0,1,0,1,1,1,0", "2;1,0,0,1,1,1,0,1",
                          "2;0,1,1,0,1,0,1,1", "2;0,1,0,1,0,1,1,1",
                          "4;2,1,1,1,1,1,2,2", "4;1,2,1,1,2,2,1,1",
                          "4;1,1,2,1,1,2,1,2", "4;1,1,1,2,2,1,2,1",
                          "5;2,2,2,2,2,1,1,2", "5;2,2,2,2,1,2,2,1"})
        out.push_back(parse_class(s));
    return out;
}

}  // namespace

TEST_CASE("simple roots form the expected diagram") {
    const auto& rs = simple_roots();
    for (const auto& r : rs) {
        CHECK(picard::is_root(r));
        CHECK(picard::root_pairing(r, r) == 2);
    }
    // chain 0-1-...-6 with node 7 attached to node 2
    for (int i = 0; i < 8; ++i) {
        for (int j = i + 1; j < 8; ++j) {
            int expected = 0;
            if (j == i + 1 && j <= 6) expected = -1;
            if (i == 2 && j == 7) expected = -1;
            CHECK(picard::root_pairing(rs[i], rs[j]) == expected);
        }
    }
}

TEST_CASE("reflections act correctly") {
    const auto& rs = simple_roots();
    cls e1 = parse_class("0;-1,0,0,0,0,0,0,0");
    cls e2 = parse_class("0;0,-1,0,0,0,0,0,0");
    CHECK(reflect(e1, rs[0]) == e2);
    CHECK(reflect(e2, rs[0]) == e1);
    CHECK(reflect(parse_class("0;0,0,-1,0,0,0,0,0"), rs[0]) ==
          parse_class("0;0,0,-1,0,0,0,0,0"));
    // the extra node swaps E_1 with the line through points 2 and 3
    CHECK(reflect(e1, rs[7]) == parse_class("1;0,1,1,0,0,0,0,0"));
    CHECK(reflect(picard::canonical_K(), rs[3]) == picard::canonical_K());

    for (const auto& r : rs) {
        isometry w = reflection(r);
        CHECK(is_isometry(w));
        CHECK(compose(w, w) == identity());
    }
    root not_a_root{0, {-1, 0, 0, 0, 0, 0, 0, 0}};
    CHECK_THROWS_AS(reflect(e1, not_a_root), type_mismatch);
    CHECK_THROWS_AS(reflection(not_a_root), type_mismatch);
}

TEST_CASE("group structure: compose, inverse, pairing preservation") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 17ull}) {
        isometry w = random_element(seed);
        CHECK(is_isometry(w));
        CHECK(compose(w, inverse(w)) == identity());
        CHECK(compose(inverse(w), w) == identity());
        CHECK(apply(w, picard::canonical_K()) == picard::canonical_K());
        CHECK(random_element(seed) == w);

        const auto& all = picard::exceptional_classes();
        for (int i = 0; i < 240; i += 31) {
            CHECK(picard::is_exceptional(apply(w, all[i])));
            for (int j = 0; j < 240; j += 41)
                CHECK(picard::pairing(apply(w, all[i]), apply(w, all[j])) ==
                      picard::pairing(all[i], all[j]));
        }
    }
    CHECK_FALSE(random_element(1) == random_element(2));
    isometry a = random_element(5), b = random_element(6);
    // composition is an action: (a b)(x) = a(b(x))
    cls x = parse_class("2;1,0,1,0,1,1,1,0");
    CHECK(apply(compose(a, b), x) == apply(a, apply(b, x)));
}

TEST_CASE("orbits under the reflection group") {
    auto o = orbit(parse_class("0;-1,0,0,0,0,0,0,0"));
    CHECK(o.size() == 240);
    const auto& all = picard::exceptional_classes();
    CHECK(std::set<cls>(o.begin(), o.end()) ==
          std::set<cls>(all.begin(), all.end()));

    CHECK(orbit(picard::canonical_K()).size() == 1);

    // roots form a single orbit of size 240 as well
    CHECK(orbit(cls{0, {-1, 1, 0, 0, 0, 0, 0, 0}}).size() == 240);

    CHECK_THROWS_AS(orbit(parse_class("0;-1,0,0,0,0,0,0,0"), 100), dp1_error);
}

TEST_CASE("isometry search maps configurations onto each other") {
    auto six = canonical_six_pairs();
    auto twelve = canonical_twelve();

    // identity case
    auto w0 = find_isometry(six, six);
    REQUIRE(w0.has_value());
    for (const auto& c : six) CHECK(apply(*w0, c) == c);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        isometry w = random_element(seed);
        for (const auto& config : {six, twelve}) {
            std::vector<cls> moved;
            for (const auto& c : config) moved.push_back(apply(w, c));
            auto found = find_isometry(config, moved);
            REQUIRE(found.has_value());
            CHECK(is_isometry(*found));
            for (std::size_t i = 0; i < config.size(); ++i)
                CHECK(apply(*found, config[i]) == moved[i]);
            auto back = find_isometry(moved, config);
            REQUIRE(back.has_value());
            for (std::size_t i = 0; i < config.size(); ++i)
                CHECK(apply(*back, moved[i]) == config[i]);
        }
    }

    // single exceptional classes always map onto each other
    auto ws = find_isometry({parse_class("0;-1,0,0,0,0,0,0,0")},
                            {parse_class("6;3,2,2,2,2,2,2,2")});
    REQUIRE(ws.has_value());
    CHECK(apply(*ws, parse_class("0;-1,0,0,0,0,0,0,0")) ==
          parse_class("6;3,2,2,2,2,2,2,2"));

    // pairing data rules this out immediately
    CHECK_FALSE(find_isometry({parse_class("0;-1,0,0,0,0,0,0,0"),
                               parse_class("0;0,-1,0,0,0,0,0,0")},
                              {parse_class("0;-1,0,0,0,0,0,0,0"),
                               parse_class("1;1,1,0,0,0,0,0,0")})
                    .has_value());

    // same length but incompatible pairing data: no isometry, not an error
    CHECK_FALSE(find_isometry(six, twelve).has_value());
    CHECK_THROWS_AS(find_isometry(six, {six[0]}), type_mismatch);
}
