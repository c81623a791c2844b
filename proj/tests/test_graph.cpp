#include "doctest.h"
#include "mleap/errors.hpp"
#include "mleap/graph.hpp"

#include <algorithm>

using namespace mleap;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }
Graph k4() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

// Unoptimized reference: every assignment, explicit bit vectors.
int max_cut_enumerate(const Graph& g) {
    int best = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << g.n()); ++x) {
        CutAssignment a(g.n());
        for (int u = 0; u < g.n(); ++u) a[u] = (x >> u) & 1U;
        int cut = 0;
        for (const auto& [u, v] : g.edges()) cut += a[u] + a[v] - 2 * a[u] * a[v];
        best = std::max(best, cut);
    }
    return best;
}

}  // namespace

TEST_CASE("graph construction canonicalizes and validates") {
    Graph g(3, {{2, 1}, {0, 2}, {1, 0}});
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), ParameterError);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), ParameterError);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), ParameterError);
    CHECK_THROWS_AS(Graph(1, {}), ParameterError);
}

TEST_CASE("generate_regular") {
    SUBCASE("n=4 degree 3 is K4 for any seed") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Rng rng(seed);
            CHECK(generate_regular(4, 3, rng) == k4());
        }
    }
    SUBCASE("infeasible requests") {
        Rng rng(1);
        CHECK_THROWS_AS(generate_regular(5, 3, rng), ParameterError);
        CHECK_THROWS_AS(generate_regular(4, 4, rng), ParameterError);
        CHECK_THROWS_AS(generate_regular(4, 0, rng), ParameterError);
    }
    SUBCASE("degree sequence over 100 seeds") {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            Rng rng(seed);
            const auto g = generate_regular(8, 3, rng);
            const auto deg = g.degrees();
            CHECK(std::all_of(deg.begin(), deg.end(), [](int d) { return d == 3; }));
            CHECK(g.edge_count() == 12);
        }
    }
    SUBCASE("deterministic given the seed") {
        Rng a(42), b(42);
        CHECK(generate_regular(10, 3, a) == generate_regular(10, 3, b));
    }
    SUBCASE("attempt limit") {
        // Dense pairings are almost never simple on the first try.
        Rng rng(3);
        CHECK_THROWS_AS(generate_regular(12, 10, rng, {.max_attempts = 1}), RetryExhaustedError);
    }
}

TEST_CASE("cut_value") {
    CHECK(cut_value(triangle(), CutAssignment{1, 1, 0}) == 2);
    CHECK(cut_value(triangle(), CutAssignment{0, 0, 0}) == 0);
    CHECK(cut_value(k4(), CutAssignment{1, 1, 0, 0}) == 4);
    CHECK_THROWS_AS(cut_value(triangle(), CutAssignment{1, 0}), ParameterError);

    SUBCASE("complement symmetry and bounds") {
        Rng rng(7);
        const auto g = generate_regular(10, 3, rng);
        for (std::uint64_t x = 0; x < 1024; ++x) {
            const auto c = cut_value(g, x);
            CHECK(c == cut_value(g, x ^ 1023U));
            CHECK(c >= 0);
            CHECK(c <= static_cast<int>(g.edge_count()));
        }
    }
}

TEST_CASE("max_cut_brute_force") {
    CHECK(max_cut_brute_force(triangle()).f_max == 2);
    CHECK(max_cut_brute_force(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})).f_max == 4);
    CHECK(max_cut_brute_force(k4()).f_max == 4);

    SUBCASE("witness attains f_max, vertex 0 pinned") {
        const auto best = max_cut_brute_force(k4());
        CHECK(cut_value(k4(), best.witness) == best.f_max);
        CHECK(best.witness[0] == 0);
    }
    SUBCASE("agrees with exhaustive enumeration") {
        for (int n = 4; n <= 10; n += 2)
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                Rng rng(seed);
                const auto g = generate_regular(n, 3, rng);
                CHECK(max_cut_brute_force(g).f_max == max_cut_enumerate(g));
            }
    }
    SUBCASE("capacity guard") {
        CHECK_THROWS_AS(max_cut_brute_force(k4(), {.max_vertices = 3}), CapacityError);
    }
}

TEST_CASE("edge-list text format") {
    CHECK(read_edge_list("3\n0 1\n0 2\n1 2\n") == triangle());
    CHECK(read_edge_list("# header\n3\n\n2 1 \n# mid\n0 2\n0 1") == triangle());
    CHECK(write_edge_list(read_edge_list("3\n1 2\n2 0\n0 1\n")) == "3\n0 1\n0 2\n1 2\n");

    SUBCASE("round trip of generated graphs") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng rng(seed);
            const auto g = generate_regular(10, 3, rng);
            CHECK(read_edge_list(write_edge_list(g)) == g);
        }
    }
    SUBCASE("errors carry line numbers") {
        auto line_of = [](const char* text) {
            try {
                read_edge_list(text);
            } catch (const ParseError& e) {
                return e.line();
            }
            return std::size_t{0};
        };
        CHECK(line_of("2\n0 0\n") == 2);
        CHECK(line_of("3\n0 1\n# c\n1 0\n") == 4);
        CHECK(line_of("3\n0 5\n") == 2);
        CHECK(line_of("3\n0 x\n") == 2);
        CHECK(line_of("3\n0 1 2\n") == 2);
        CHECK(line_of("# nothing\n") == 1);
    }
}

TEST_CASE("fingerprint depends only on the canonical edge list") {
    CHECK(fingerprint(read_edge_list("3\n2 1\n0 2\n0 1\n")) == fingerprint(triangle()));
    CHECK(fingerprint(triangle()) != fingerprint(k4()));
    CHECK(fingerprint(triangle()).size() == 16);
}
