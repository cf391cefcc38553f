#include <doctest.h>

#include <algorithm>
#include <set>

#include "cologic/covers.hpp"
#include "support/fixtures.hpp"

using namespace cologic;
using test::arr;
using test::path;
using test::tuple;

namespace {

std::uint64_t stirling2(int n, int k)
{
    if (n == 0 && k == 0) return 1;
    if (n == 0 || k == 0) return 0;
    return static_cast<std::uint64_t>(k) * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

std::uint64_t factorial(int n)
{
    return n <= 1 ? 1 : static_cast<std::uint64_t>(n) * factorial(n - 1);
}

// Ordered partitions via block-index assignments: each atom picks one of n
// labels, and surjective assignments are kept.
std::set<std::vector<std::uint64_t>> assignment_partitions(int atoms, int n)
{
    std::set<std::vector<std::uint64_t>> out;
    std::vector<int> label(static_cast<std::size_t>(atoms), 0);
    while (true) {
        std::vector<std::uint64_t> blocks(static_cast<std::size_t>(n), 0);
        for (int a = 0; a < atoms; ++a) {
            blocks[static_cast<std::size_t>(label[static_cast<std::size_t>(a)])] |= std::uint64_t{1} << a;
        }
        if (std::none_of(blocks.begin(), blocks.end(), [](std::uint64_t b) { return b == 0; })) {
            out.insert(blocks);
        }
        int pos = 0;
        while (pos < atoms && ++label[static_cast<std::size_t>(pos)] == n) {
            label[static_cast<std::size_t>(pos++)] = 0;
        }
        if (pos == atoms) break;
    }
    return out;
}

std::vector<std::uint64_t> bits(const GoodTuple& t)
{
    std::vector<std::uint64_t> out;
    for (Element e : t) out.push_back(e.bits());
    return out;
}

} // namespace

TEST_CASE("good tuples")
{
    const auto p3 = path(3);
    CHECK(is_good_tuple(p3, tuple({{0}, {1}, {2}})));
    CHECK_FALSE(is_good_tuple(p3, tuple({{0, 1}, {1, 2}})));
    CHECK_FALSE(is_good_tuple(p3, tuple({{0}, {1}})));
    CHECK_THROWS_AS(require_good_tuple(p3, tuple({{0}, {1}})), std::invalid_argument);
}

TEST_CASE("enumerate_good_tuples agrees with ordered set partitions")
{
    const auto p3 = path(3);
    CHECK(enumerate_good_tuples(p3, 2).size() == 6);
    CHECK(enumerate_good_tuples(p3, 2).size() == factorial(2) * stirling2(3, 2));
    CHECK(enumerate_good_tuples(p3, 4).empty());
    for (int atoms = 1; atoms <= 5; ++atoms) {
        const auto b = path(atoms);
        const auto one = enumerate_good_tuples(b, 1);
        REQUIRE(one.size() == 1);
        CHECK(one.front() == unit_tuple(b));
        for (int n = 1; n <= atoms + 1; ++n) {
            const auto listed = enumerate_good_tuples(b, n);
            CHECK(listed.size() == factorial(n) * stirling2(atoms, n));
            std::set<std::vector<std::uint64_t>> seen;
            for (const auto& t : listed) {
                CHECK(is_good_tuple(b, t));
                seen.insert(bits(t));
            }
            CHECK(seen == assignment_partitions(atoms, n));
            CHECK(std::is_sorted(listed.begin(), listed.end(),
                                 [](const GoodTuple& x, const GoodTuple& y) { return lex_less(x, y); }));
        }
    }
}

TEST_CASE("nerve and chains")
{
    const auto p3 = path(3);
    CHECK(nerve(p3, tuple({{0}, {1}, {2}})) == FiniteGraph::linear(3));
    CHECK(nerve(p3, tuple({{0, 2}, {1}})) == FiniteGraph::linear(2));
    CHECK(nerve(test::discrete(2), tuple({{0}, {1}})).edges().empty());

    CHECK(is_chain(p3, tuple({{0}, {1}, {2}})));
    CHECK_FALSE(is_chain(p3, tuple({{0}, {2}, {1}})));
    CHECK_FALSE(is_chain(path(5), tuple({{0, 1}, {3, 4}})));
}

TEST_CASE("follows and arrangement_of")
{
    const auto fine = tuple({{0}, {1}, {2}});
    const auto coarse = tuple({{0, 1}, {2}});
    CHECK(follows(fine, arr({0, 0, 1}), coarse));
    CHECK(follows(coarse, Arrangement::identity(2), coarse));
    CHECK_FALSE(follows(fine, arr({0, 1, 1}), coarse));
    CHECK_THROWS_AS(follows(coarse, arr({0, 0, 1}), coarse), std::invalid_argument);

    CHECK(arrangement_of(fine, coarse) == arr({0, 0, 1}));
    CHECK(arrangement_of(coarse, coarse) == Arrangement::identity(2));
    CHECK_FALSE(arrangement_of(coarse, tuple({{0}, {1, 2}})).has_value());
}

TEST_CASE("consolidate joins fibres")
{
    const auto fine = tuple({{0}, {1}, {2}});
    CHECK(consolidate(arr({0, 0, 1}), fine) == tuple({{0, 1}, {2}}));
    CHECK(consolidate(Arrangement::identity(3), fine) == fine);
    CHECK(consolidate(arr({0, 1, 0}), fine) == tuple({{0, 2}, {1}}));
}

TEST_CASE("common refinement examples")
{
    const auto a = tuple({{0, 1}, {2}});
    const auto b = tuple({{0}, {1, 2}});
    const auto c = common_refinement(a, b);
    CHECK(c.tuple == tuple({{0}, {1}, {2}}));
    CHECK(c.in_first == arr({0, 0, 1}));
    CHECK(c.in_second == arr({0, 1, 1}));

    const auto same = common_refinement(a, a);
    CHECK(same.tuple == a);
    CHECK(same.in_first.is_identity());
    CHECK(same.in_second.is_identity());

    const auto atoms = tuple({{0}, {1}, {2}});
    CHECK(common_refinement(atoms, tuple({{0, 1, 2}})).tuple == atoms);
}

TEST_CASE("common refinement refines both inputs, exhaustive up to five atoms")
{
    for (int atoms = 1; atoms <= 5; ++atoms) {
        const auto b = path(atoms);
        std::vector<GoodTuple> all;
        for (int n = 1; n <= atoms; ++n) {
            for (auto& t : enumerate_good_tuples(b, n)) all.push_back(std::move(t));
        }
        std::uint64_t failures = 0;
        for (const auto& x : all) {
            for (const auto& y : all) {
                const auto c = common_refinement(x, y);
                failures += is_good_tuple(b, c.tuple) && follows(c.tuple, c.in_first, x) &&
                                    follows(c.tuple, c.in_second, y)
                                ? 0
                                : 1;
            }
        }
        CHECK(failures == 0);
    }
}

TEST_CASE("refinements following an arrangement are exactly the good tuples that follow it")
{
    for (int atoms = 1; atoms <= 4; ++atoms) {
        const auto b = path(atoms);
        for (int n = 1; n <= atoms; ++n) {
            for (const auto& coarse : enumerate_good_tuples(b, n)) {
                for (int m = n; m <= atoms + 1; ++m) {
                    for (const auto& f : enumerate_surjections(m, n)) {
                        std::set<std::vector<std::uint64_t>> expected;
                        for (const auto& t : enumerate_good_tuples(b, m)) {
                            if (follows(t, f, coarse)) expected.insert(bits(t));
                        }
                        std::set<std::vector<std::uint64_t>> got;
                        for (const auto& t : refinements_following(coarse, f)) got.insert(bits(t));
                        CHECK(got == expected);
                    }
                }
            }
        }
    }
}

TEST_CASE("surjections are listed lexicographically")
{
    const auto s = enumerate_surjections(3, 2);
    REQUIRE(s.size() == 6);
    CHECK(s.front() == arr({0, 0, 1}));
    CHECK(s.back() == arr({1, 1, 0}));
    CHECK(compose(arr({0, 0, 1}), arr({0, 1, 1, 2})) == arr({0, 0, 0, 1}));
    CHECK_THROWS_AS(Arrangement({0, 2}, 3), InputError);
}

TEST_CASE("covering walks")
{
    const auto l3 = FiniteGraph::linear(3);
    CHECK(walk_induced_surjection(l3, {0, 1, 2}) == arr({0, 1, 2}));
    CHECK(walk_induced_surjection(l3, {0, 1, 0, 1, 2}) == arr({0, 1, 0, 1, 2}));
    try {
        walk_induced_surjection(l3, {0, 1});
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find('2') != std::string::npos);
    }
    CHECK_FALSE(covering_walk_defect(l3, {0, 2}).empty());

    const auto w2 = enumerate_covering_walks(FiniteGraph::linear(2), 2);
    REQUIRE(w2.size() == 2);
    CHECK(w2[0] == Walk{0, 1});
    CHECK(w2[1] == Walk{1, 0});
    CHECK(enumerate_covering_walks(FiniteGraph::linear(1), 1) == std::vector<Walk>{Walk{0}});
    CHECK(enumerate_covering_walks(l3, 2).empty());
}

TEST_CASE("refinement lemma (i) and (ii) on small algebras")
{
    for (int atoms = 1; atoms <= 4; ++atoms) {
        for (const FiniteGraph& g : graphs_up_to_isomorphism(atoms)) {
            const auto b = contact_from_graph(g);
            for (int n = 1; n <= atoms; ++n) {
                for (const auto& a : enumerate_good_tuples(b, n)) {
                    for (int m = n; m <= atoms; ++m) {
                        for (const auto& f : enumerate_surjections(m, n)) {
                            for_each_refinement(a, f, [&](const GoodTuple& r) {
                                for (int j = 0; j < m; ++j) {
                                    for (int i = 0; i < n; ++i) {
                                        if (r[static_cast<std::size_t>(j)].meets(a[static_cast<std::size_t>(i)])) {
                                            CHECK(i == f(j));
                                            CHECK(r[static_cast<std::size_t>(j)].subset_of(a[static_cast<std::size_t>(i)]));
                                        }
                                    }
                                }
                                CHECK(consolidate(f, r) == a);
                                return true;
                            });
                        }
                    }
                }
            }
        }
    }
}
