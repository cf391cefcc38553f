#include <doctest.h>

#include <set>

#include "cologic/fraisse.hpp"
#include "support/fixtures.hpp"

using namespace cologic;
using test::arr;
using test::path;
using test::tuple;

namespace {

// Linear-graph epi conditions checked directly on index arithmetic.
bool linear_epi(const std::vector<int>& f, int n)
{
    std::vector<bool> hit(static_cast<std::size_t>(n), false);
    for (int x : f) hit[static_cast<std::size_t>(x)] = true;
    for (bool h : hit) {
        if (!h) return false;
    }
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        if (std::abs(f[i] - f[i + 1]) > 1) return false;
    }
    for (int k = 0; k + 1 < n; ++k) {
        bool lifted = false;
        for (std::size_t i = 0; i + 1 < f.size(); ++i) {
            lifted = lifted || (std::min(f[i], f[i + 1]) == k && std::max(f[i], f[i + 1]) == k + 1);
        }
        if (!lifted) return false;
    }
    return true;
}

std::set<std::vector<int>> brute_patterns(int m, int n)
{
    std::set<std::vector<int>> out;
    std::vector<int> f(static_cast<std::size_t>(m), 0);
    while (true) {
        if (linear_epi(f, n)) out.insert(f);
        int pos = m - 1;
        while (pos >= 0 && ++f[static_cast<std::size_t>(pos)] == n) f[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
    return out;
}

std::vector<int> images(const Arrangement& f)
{
    return {f.images().begin(), f.images().end()};
}

} // namespace

TEST_CASE("IS-epi examples")
{
    const std::vector<int> id{0, 1};
    CHECK(is_is_epi(id, FiniteGraph::linear(2), FiniteGraph::linear(2)));
    const std::vector<int> fold{0, 1, 0};
    CHECK(is_is_epi(fold, FiniteGraph::linear(3), FiniteGraph::linear(2)));
    CHECK_FALSE(is_is_epi(id, FiniteGraph::linear(2), FiniteGraph::discrete(2)));
    CHECK_THROWS_AS(is_is_epi(fold, FiniteGraph::linear(2), FiniteGraph::linear(2)), std::invalid_argument);
}

TEST_CASE("pattern examples")
{
    const std::vector<int> a{0, 0, 1}, b{0, 1, 0}, c{0, 2, 1};
    CHECK(is_pattern_epi(a, 3, 2));
    CHECK(is_pattern_epi(b, 3, 2));
    CHECK_FALSE(is_pattern_epi(c, 3, 3));
    CHECK(enumerate_patterns(3, 2).size() == 6);
    CHECK(enumerate_patterns(1, 1) == std::vector<Arrangement>{arr({0})});
    for (int n = 2; n <= 6; ++n) {
        const auto p = enumerate_patterns(n, n);
        REQUIRE(p.size() == 2);
        CHECK(p[0] == Arrangement::identity(n));
        std::vector<int> rev;
        for (int i = n - 1; i >= 0; --i) rev.push_back(i);
        CHECK(images(p[1]) == rev);
    }
}

TEST_CASE("patterns coincide with brute-force IS-epis between linear graphs")
{
    for (int m = 1; m <= 6; ++m) {
        for (int n = 1; n <= m; ++n) {
            std::set<std::vector<int>> got;
            for (const auto& p : enumerate_patterns(m, n)) {
                CHECK(is_is_epi(p.images(), FiniteGraph::linear(m), FiniteGraph::linear(n)));
                got.insert(images(p));
            }
            CHECK(got == brute_patterns(m, n));
        }
    }
    CHECK(brute_patterns(3, 2).size() == 6);
}

TEST_CASE("joint projection")
{
    for (int n = 1; n <= 5; ++n) {
        const LinearSpan s = common_refinement_linear(1, n);
        CHECK(s.size == n);
        CHECK(s.first == Arrangement::constant(n));
        CHECK(s.second == Arrangement::identity(n));
        const LinearSpan t = common_refinement_linear(n, n);
        CHECK(t.size == n);
        CHECK(t.first.is_identity());
        CHECK(t.second.is_identity());
    }
    const LinearSpan s = common_refinement_linear(2, 3);
    CHECK(s.size == 3);
    CHECK(s.first == arr({0, 1, 1}));
    CHECK(s.second.is_identity());
}

TEST_CASE("amalgamation examples")
{
    const auto one = amalgamate(arr({0}), arr({0}), 4);
    REQUIRE(one.has_value());
    CHECK(one->size == 1);
    CHECK(one->first == arr({0}));
    CHECK(one->second == arr({0}));

    const Arrangement f = arr({0, 0, 1});
    const Arrangement g = arr({0, 1, 1});
    const auto sq = amalgamate(f, g, 30);
    REQUIRE(sq.has_value());
    CHECK(compose(f, sq->first) == compose(g, sq->second));
    CHECK(sq->first.is_pattern());
    CHECK(sq->second.is_pattern());

    for (const auto& p : enumerate_patterns(4, 2)) {
        const auto self = amalgamate(p, p, 30);
        REQUIRE(self.has_value());
        CHECK(compose(p, self->first) == compose(p, self->second));
    }
    CHECK_THROWS_AS(amalgamate(arr({0, 1}), arr({0, 0, 1, 2}), 30), std::invalid_argument);
    CHECK_THROWS_AS(amalgamate(arr({0, 2, 1}), arr({0, 1, 2}), 30), std::invalid_argument);
}

TEST_CASE("factoring through a pattern")
{
    const auto g = factor_through(arr({0, 0, 1, 1}), arr({0, 1}));
    REQUIRE(g.has_value());
    CHECK(*g == arr({0, 0, 1, 1}));
    const auto h = factor_through(arr({0, 0, 0, 1}), arr({0, 0, 1}));
    REQUIRE(h.has_value());
    CHECK(*h == arr({0, 0, 1, 2}));
    CHECK_FALSE(factor_through(arr({0, 1, 1}), arr({0, 0, 1})).has_value());
    CHECK_FALSE(factor_through(arr({0, 1}), arr({0, 0, 1})).has_value());
}

TEST_CASE("Fraisse sequences")
{
    const auto single = build_fraisse_sequence(1, 3);
    CHECK(single.stages == std::vector<int>{1});
    CHECK(single.ledger.empty());
    CHECK(single.bonding.empty());

    const auto seq = build_fraisse_sequence(3, 3);
    CHECK(sequence_defect(seq).empty());
    for (const Obligation& ob : seq.ledger) {
        if (ob.stage == 0) {
            REQUIRE(ob.discharged_at.has_value());
            CHECK(*ob.discharged_at <= 2);
            CHECK(compose(ob.map, *ob.witness) == seq.composite(*ob.discharged_at, 0));
        }
    }
    for (int t = 0; t < seq.stage_count(); ++t) {
        for (int s = 0; s <= t; ++s) {
            CHECK(seq.composite(t, s).is_pattern());
        }
    }
    CHECK_THROWS_AS(build_fraisse_sequence(3, 3, 1), FraisseError);
}

TEST_CASE("extension property audit")
{
    const auto seq = build_fraisse_sequence(5, 3);
    const AuditReport zero = extension_property_audit(seq, 0, 3);
    CHECK(zero.undischarged() == 0);
    for (const AuditEntry& e : zero.entries) {
        if (e.map.is_identity()) {
            CHECK(*e.discharged_at == 0);
            CHECK(*e.witness == seq.composite(0, 0));
        }
        CHECK(compose(e.map, *e.witness) == seq.composite(*e.discharged_at, 0));
    }
    const int last = seq.stage_count() - 1;
    const AuditReport wide = extension_property_audit(seq, last, seq.stages.back() + 3);
    CHECK(wide.undischarged() > 0);
}

TEST_CASE("chain refinement")
{
    const auto l3 = path(3);
    const auto r = chain_refinement(l3, tuple({{0, 2}, {1}}));
    CHECK(r.chain == tuple({{0}, {1}, {2}}));
    CHECK(r.arrangement == arr({0, 1, 0}));

    const auto chain = tuple({{0, 1}, {2}});
    const auto same = chain_refinement(l3, chain);
    CHECK(same.chain == chain);
    CHECK(same.arrangement.is_identity());

    const auto l1 = path(1);
    const auto unit = chain_refinement(l1, unit_tuple(l1));
    CHECK(unit.chain == tuple({{0}}));
    CHECK(unit.arrangement == Arrangement::constant(1));
    CHECK_THROWS_AS(chain_refinement(test::discrete(2), tuple({{0}, {1}})), std::invalid_argument);

    for (int m = 1; m <= 5; ++m) {
        const auto b = path(m);
        for (int n = 1; n <= m; ++n) {
            for (const auto& t : enumerate_good_tuples(b, n)) {
                const auto c = chain_refinement(b, t);
                CHECK(is_chain(b, c.chain));
                CHECK(follows(c.chain, c.arrangement, t));
                CHECK(consolidate(c.arrangement, c.chain) == t);
            }
        }
    }
}

TEST_CASE("chains following a pattern")
{
    const auto l4 = path(4);
    const auto a = tuple({{0, 1}, {2, 3}});
    CHECK(chain_following_pattern(l4, a, Arrangement::identity(2)) == a);
    CHECK(chain_following_pattern(l4, a, arr({0, 0, 1})) == tuple({{0}, {1}, {2, 3}}));
    CHECK_FALSE(chain_following_pattern(path(1), tuple({{0}}), arr({0, 0})).has_value());
}

TEST_CASE("graphs G_n")
{
    const FiniteGraph g0 = example_gn(0);
    CHECK(g0.vertex_count() == 2);
    CHECK(g0.edges() == std::vector<Edge>{{0, 1}});
    const FiniteGraph g1 = example_gn(1);
    CHECK(g1.vertex_count() == 3);
    CHECK(g1.edges() == std::vector<Edge>{{1, 2}});
    CHECK(is_is_epi(example_gn_epi(0, 1), g1, g0));
    for (int n = 0; n <= kMaxGnLevel; ++n) {
        const FiniteGraph gn = example_gn(n);
        CHECK(gn.vertex_count() == (1 << n) + 1);
        CHECK(gn.edge_count() == 1);
        CHECK(gn.adjacent((1 << n) - 1, 1 << n));
        for (int m = 0; m <= n; ++m) {
            CHECK(is_is_epi(example_gn_epi(m, n), gn, example_gn(m)));
        }
    }
    CHECK(example_gn_epi(1, 2) == std::vector<int>{0, 0, 1, 1, 2});
    CHECK_THROWS_AS(example_gn_epi(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(example_gn(kMaxGnLevel + 1), std::invalid_argument);
}
