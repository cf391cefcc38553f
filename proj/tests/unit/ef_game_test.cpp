#include <doctest.h>

#include "cologic/ef_game.hpp"
#include "cologic/satisfaction.hpp"
#include "support/fixtures.hpp"
#include "support/formula_basis.hpp"

using namespace cologic;
using test::path;
using test::tuple;

TEST_CASE("game examples")
{
    const auto p3 = path(3);
    const auto t = tuple({{0, 1}, {2}});
    for (int d = 0; d <= 3; ++d) {
        CHECK(ef_equivalent(p3, t, p3, t, d).equivalent);
    }
    CHECK(ef_equivalent(p3, tuple({{0, 1}, {2}}), p3, tuple({{0}, {1, 2}}), 0).equivalent);

    const EfResult r = ef_equivalent(path(1), unit_tuple(path(1)), path(2), unit_tuple(path(2)), 1);
    CHECK_FALSE(r.equivalent);
    REQUIRE_FALSE(r.trace.empty());
    const EfStep& step = r.trace.front();
    CHECK(step.side == 1);
    CHECK(step.arrangement.source() == 2);
    CHECK(step.challenge.size() == 2);
    CHECK_FALSE(step.response.has_value());
    CHECK(ef_equivalent(path(1), unit_tuple(path(1)), path(2), unit_tuple(path(2)), 0).equivalent);
}

TEST_CASE("isomorphism shortcut does not change answers")
{
    EfOptions plain;
    plain.use_isomorphisms = false;
    for (int n = 1; n <= 3; ++n) {
        for (const FiniteGraph& g : all_graphs(n)) {
            const auto b = contact_from_graph(g);
            EfGame with(b, b);
            EfGame without(b, b, plain);
            for (int len = 1; len <= n; ++len) {
                const auto tuples = enumerate_good_tuples(b, len);
                for (const auto& x : tuples) {
                    for (const auto& y : tuples) {
                        for (int d = 0; d <= 2; ++d) {
                            CHECK(with.equivalent(x, y, d) == without.equivalent(x, y, d));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("game agrees with the formula oracle on models up to two atoms")
{
    std::vector<ContactAlgebra> models;
    for (int n = 1; n <= 2; ++n) {
        for (const FiniteGraph& g : all_graphs(n)) models.push_back(contact_from_graph(g));
    }
    const test::FormulaBasis basis(models, 2, 3);
    const auto& pos = basis.positions();
    for (std::size_t p = 0; p < pos.size(); ++p) {
        for (std::size_t q = 0; q < pos.size(); ++q) {
            if (pos[p].tuple.size() != pos[q].tuple.size()) continue;
            for (int d = 0; d <= 3; ++d) {
                const bool game = ef_equivalent(models[static_cast<std::size_t>(pos[p].model)], pos[p].tuple,
                                                 models[static_cast<std::size_t>(pos[q].model)], pos[q].tuple, d)
                                      .equivalent;
                CHECK(game == basis.agree(p, q, d));
            }
        }
    }
}

TEST_CASE("oracle formulas have the extensions the oracle claims")
{
    std::vector<ContactAlgebra> models;
    for (int n = 1; n <= 3; ++n) {
        for (const FiniteGraph& g : graphs_up_to_isomorphism(n)) models.push_back(contact_from_graph(g));
    }
    const test::FormulaBasis basis(models, 3, 1, true);
    REQUIRE(basis.generators().size() == basis.generator_count(1));
    std::vector<Evaluator> evaluators;
    for (const auto& m : models) evaluators.emplace_back(m);
    for (const auto& g : basis.generators()) {
        for (std::size_t p = 0; p < basis.positions().size(); ++p) {
            const auto& pos = basis.positions()[p];
            if (static_cast<int>(pos.tuple.size()) != g.formula.context()) {
                CHECK_FALSE(g.extension[p]);
                continue;
            }
            CHECK(evaluators[static_cast<std::size_t>(pos.model)].satisfies(pos.tuple, g.formula) == g.extension[p]);
        }
    }
}

TEST_CASE("type fingerprints and nerve generation")
{
    const auto p4 = path(4);
    for (int n = 1; n <= 4; ++n) {
        for (const auto& t : enumerate_good_tuples(p4, n)) {
            CHECK(nerve_generates_type(p4, t, 0));
        }
    }
    for (int d = 0; d <= 3; ++d) {
        CHECK(nerve_generates_type(p4, unit_tuple(p4), d));
    }
    // A cut after the first atom is not 1-equivalent to a cut in the middle.
    const bool generated = nerve_generates_type(p4, tuple({{0}, {1, 2, 3}}), 1);
    CHECK_FALSE(generated);
    CHECK(same_type({p4, tuple({{0}, {1, 2, 3}}), 1}, {p4, tuple({{3}, {0, 1, 2}}), 1}));
    CHECK_FALSE(same_type({p4, tuple({{0}, {1, 2, 3}}), 1}, {p4, tuple({{0, 1}, {2, 3}}), 1}));
    CHECK_FALSE(same_type({p4, unit_tuple(p4), 1}, {p4, unit_tuple(p4), 2}));
}

TEST_CASE("back and forth")
{
    const auto p3 = path(3);
    const auto t = tuple({{0, 1}, {2}});
    const auto same = back_and_forth(p3, t, p3, t, 2);
    REQUIRE(same.has_value());
    REQUIRE(same->atom_map.has_value());
    CHECK(*same->atom_map == std::vector<int>{0, 1, 2});
    for (const auto& [x, y] : same->positions) CHECK(x == y);

    const auto mirror = back_and_forth(p3, t, p3, tuple({{1, 2}, {0}}), 2);
    REQUIRE(mirror.has_value());
    REQUIRE(mirror->atom_map.has_value());
    CHECK(*mirror->atom_map == std::vector<int>{2, 1, 0});
    CHECK(mirror->positions.front().first == t);

    CHECK_FALSE(back_and_forth(path(1), unit_tuple(path(1)), path(2), unit_tuple(path(2)), 1).has_value());
}

TEST_CASE("respond gives an equivalent same-nerve answer")
{
    const auto p3 = path(3);
    EfGame game(p3, p3);
    const auto ans = game.respond(0, tuple({{0, 1}, {2}}), tuple({{1, 2}, {0}}), test::arr({0, 1}), 1);
    REQUIRE(ans.has_value());
    CHECK(*ans == tuple({{1, 2}, {0}}));
    const auto split = game.respond(0, tuple({{0}, {1}, {2}}), tuple({{1, 2}, {0}}), test::arr({0, 0, 1}), 0);
    REQUIRE(split.has_value());
    CHECK(*split == tuple({{2}, {1}, {0}}));
    CHECK(game.respond(0, tuple({{0}, {1}, {2}}), tuple({{1, 2}, {0}}), test::arr({0, 0, 1}), 1).has_value());
}
