#include "cologic/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "cologic/algebra.hpp"
#include "cologic/covers.hpp"
#include "cologic/formula.hpp"
#include "cologic/fraisse.hpp"
#include "cologic/graph.hpp"
#include "cologic/satisfaction.hpp"

namespace cologic {

namespace {

class Tally {
public:
    Tally(std::string name, std::string scope)
    {
        report_.name = std::move(name);
        report_.scope = std::move(scope);
    }

    void check(bool ok, const std::function<std::string()>& describe)
    {
        ++report_.cases_checked;
        if (!ok) {
            ++report_.violation_count;
            if (!report_.counterexample) {
                report_.counterexample = describe();
            }
        }
    }

    SuiteReport done() { return std::move(report_); }

private:
    SuiteReport report_;
};

std::vector<GoodTuple> all_tuples(const ContactAlgebra& b)
{
    std::vector<GoodTuple> out;
    for (int n = 1; n <= b.atom_count(); ++n) {
        const auto& part = enumerate_good_tuples(b, n);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<FiniteGraph> iso_classes_up_to(int max_vertices)
{
    std::vector<FiniteGraph> out;
    for (int n = 1; n <= max_vertices; ++n) {
        auto reps = graphs_up_to_isomorphism(n);
        out.insert(out.end(), reps.begin(), reps.end());
    }
    return out;
}

std::vector<FiniteGraph> labelled_up_to(int max_vertices)
{
    std::vector<FiniteGraph> out;
    for (int n = 1; n <= max_vertices; ++n) {
        auto all = all_graphs(n);
        out.insert(out.end(), all.begin(), all.end());
    }
    return out;
}

std::string in_graph(const FiniteGraph& g)
{
    return " in B(" + to_string(g) + ")";
}

// ---------------------------------------------------------------------------

SuiteReport contact_axioms()
{
    Tally t("contact-axioms", "every graph on 1-6 vertices up to isomorphism");
    for (const FiniteGraph& g : iso_classes_up_to(6)) {
        const AxiomReport r = verify_contact_axioms(contact_from_graph(g));
        t.check(r.ok(), [&] {
            const auto& v = r.violations.front();
            std::string w;
            for (Element e : v.witnesses) {
                w += (w.empty() ? "" : ", ") + to_string(e);
            }
            return to_string(g) + ": axiom '" + v.axiom + "' fails at " + w;
        });
    }
    return t.done();
}

SuiteReport duality()
{
    Tally t("duality", "every labelled graph on 1-5 vertices");
    for (const FiniteGraph& g : labelled_up_to(5)) {
        const FiniteGraph back = stone_prespace(contact_from_graph(g));
        t.check(back == g, [&] { return to_string(g) + " comes back as " + to_string(back); });
    }
    return t.done();
}

SuiteReport delta_symmetry()
{
    Tally t("delta-symmetry", "every element pair of every labelled graph on 1-4 vertices");
    for (const FiniteGraph& g : labelled_up_to(4)) {
        const ContactAlgebra b = contact_from_graph(g);
        const std::uint64_t count = std::uint64_t{1} << b.atom_count();
        for (std::uint64_t x = 0; x < count; ++x) {
            for (std::uint64_t y = 0; y < count; ++y) {
                const Element a(x);
                const Element c(y);
                t.check(delta(b, a, c) == delta(b, c, a),
                        [&] { return to_string(a) + " and " + to_string(c) + in_graph(g); });
            }
        }
    }
    return t.done();
}

SuiteReport delta_monotone()
{
    Tally t("delta-monotone", "every pair a <= a' and b of every labelled graph on 1-4 vertices");
    for (const FiniteGraph& g : labelled_up_to(4)) {
        const ContactAlgebra b = contact_from_graph(g);
        const std::uint64_t count = std::uint64_t{1} << b.atom_count();
        for (std::uint64_t x = 0; x < count; ++x) {
            for (std::uint64_t y = 0; y < count; ++y) {
                if (!delta(b, Element(x), Element(y))) {
                    continue;
                }
                for (std::uint64_t z = x;; z = (z + 1) | x) {
                    const Element a(x);
                    const Element bigger(z);
                    const Element c(y);
                    t.check(delta(b, bigger, c), [&] {
                        return to_string(a) + " touches " + to_string(c) + " but " + to_string(bigger) +
                               " does not" + in_graph(g);
                    });
                    if (z == count - 1) {
                        break;
                    }
                }
            }
        }
    }
    return t.done();
}

SuiteReport refinement()
{
    Tally t("refinement", "items (i)-(ii) and consolidation on graphs with 1-5 vertices up to isomorphism; "
                          "item (iii) across every labelled graph on 1-4 vertices");
    for (const FiniteGraph& g : iso_classes_up_to(5)) {
        const ContactAlgebra b = contact_from_graph(g);
        const auto tuples = all_tuples(b);
        for (const GoodTuple& fine : tuples) {
            for (const GoodTuple& coarse : tuples) {
                const auto f = arrangement_of(fine, coarse);
                if (!f) {
                    continue;
                }
                bool unique = true;
                for (std::size_t j = 0; j < fine.size(); ++j) {
                    for (std::size_t i = 0; i < coarse.size(); ++i) {
                        if (fine[j].meets(coarse[i]) &&
                            (static_cast<int>(i) != (*f)(static_cast<int>(j)) || !fine[j].subset_of(coarse[i]))) {
                            unique = false;
                        }
                    }
                }
                t.check(unique, [&] {
                    return "(i) fails for " + to_string(fine) + " following " + to_string(*f) + " in " +
                           to_string(coarse) + in_graph(g);
                });
                t.check(consolidate(*f, fine) == coarse, [&] {
                    return "(ii) fails: " + to_string(fine) + " consolidates along " + to_string(*f) + " to " +
                           to_string(consolidate(*f, fine)) + ", not " + to_string(coarse) + in_graph(g);
                });
            }
            for (int n = 1; n <= static_cast<int>(fine.size()); ++n) {
                for (const Arrangement& f : enumerate_surjections(static_cast<int>(fine.size()), n)) {
                    const GoodTuple c = consolidate(f, fine);
                    t.check(is_good_tuple(b, c) && follows(fine, f, c), [&] {
                        return "consolidation of " + to_string(fine) + " along " + to_string(f) + " gives " +
                               to_string(c) + in_graph(g);
                    });
                }
            }
        }
    }

    // (iii): the nerve of the coarse tuple is determined by f and the fine nerve.
    struct Seen {
        FiniteGraph coarse_nerve;
        std::string where;
    };
    std::map<std::pair<std::vector<int>, std::vector<std::uint64_t>>, Seen> witness;
    for (const FiniteGraph& g : labelled_up_to(4)) {
        const ContactAlgebra b = contact_from_graph(g);
        const auto tuples = all_tuples(b);
        for (const GoodTuple& fine : tuples) {
            const FiniteGraph fine_nerve = nerve(b, fine);
            for (int n = 1; n <= static_cast<int>(fine.size()); ++n) {
                for (const Arrangement& f : enumerate_surjections(static_cast<int>(fine.size()), n)) {
                    const GoodTuple coarse = consolidate(f, fine);
                    const FiniteGraph coarse_nerve = nerve(b, coarse);
                    std::pair key{std::vector<int>(f.images().begin(), f.images().end()),
                                  std::vector<std::uint64_t>(fine_nerve.rows().begin(), fine_nerve.rows().end())};
                    auto [it, inserted] = witness.try_emplace(
                        std::move(key), Seen{coarse_nerve, to_string(fine) + " in " + to_string(coarse) + in_graph(g)});
                    t.check(inserted || it->second.coarse_nerve == coarse_nerve, [&] {
                        return "(iii) fails along " + to_string(f) + ": " + it->second.where + " versus " +
                               to_string(fine) + " in " + to_string(coarse) + in_graph(g);
                    });
                }
            }
        }
    }
    return t.done();
}

SuiteReport undo()
{
    Tally t("undo", "every tuple pair and factorization h = f∘g on graphs with 1-5 vertices up to isomorphism");
    std::map<std::vector<int>, std::vector<std::pair<Arrangement, Arrangement>>> factorizations;
    auto factor = [&](const Arrangement& h) -> const std::vector<std::pair<Arrangement, Arrangement>>& {
        std::vector<int> key(h.images().begin(), h.images().end());
        auto [it, inserted] = factorizations.try_emplace(key);
        if (inserted) {
            for (int m = h.target(); m <= h.source(); ++m) {
                for (const Arrangement& g : enumerate_surjections(h.source(), m)) {
                    std::vector<int> f(static_cast<std::size_t>(m), -1);
                    bool ok = true;
                    for (int k = 0; ok && k < h.source(); ++k) {
                        int& slot = f[static_cast<std::size_t>(g(k))];
                        ok = slot < 0 || slot == h(k);
                        slot = h(k);
                    }
                    if (ok) {
                        it->second.emplace_back(Arrangement(std::move(f), h.target()), g);
                    }
                }
            }
        }
        return it->second;
    };
    for (const FiniteGraph& gr : iso_classes_up_to(5)) {
        const ContactAlgebra b = contact_from_graph(gr);
        const auto tuples = all_tuples(b);
        for (const GoodTuple& coarse : tuples) {
            for (const GoodTuple& fine : tuples) {
                const auto h = arrangement_of(fine, coarse);
                if (!h) {
                    continue;
                }
                for (const auto& [f, g] : factor(*h)) {
                    const GoodTuple mid = consolidate(g, fine);
                    t.check(follows(mid, f, coarse), [&] {
                        return to_string(fine) + " follows " + to_string(*h) + " = " + to_string(f) + "∘" +
                               to_string(g) + " in " + to_string(coarse) + " but " + to_string(mid) +
                               " does not follow " + to_string(f) + in_graph(gr);
                    });
                }
            }
        }
    }
    return t.done();
}

SuiteReport directed()
{
    Tally t("directed", "every pair of good tuples on graphs with 1-5 vertices up to isomorphism");
    for (const FiniteGraph& g : iso_classes_up_to(5)) {
        const ContactAlgebra b = contact_from_graph(g);
        const auto tuples = all_tuples(b);
        for (const GoodTuple& x : tuples) {
            for (const GoodTuple& y : tuples) {
                const CommonRefinement c = common_refinement(x, y);
                t.check(is_good_tuple(b, c.tuple) && follows(c.tuple, c.in_first, x) &&
                            follows(c.tuple, c.in_second, y),
                        [&] {
                            return "common refinement " + to_string(c.tuple) + " of " + to_string(x) + " and " +
                                   to_string(y) + in_graph(g);
                        });
            }
        }
    }
    return t.done();
}

struct ChainSample {
    ContactAlgebra algebra;
    GoodTuple chain;
};

SuiteReport covering_walk()
{
    Tally t("covering-walk", "nerves on 1-6 vertices (labelled up to 5, up to isomorphism at 6), covering walks "
                             "of length <= 10; chains: the atom chain of L_N, plus every chain in L_M (M <= 6) "
                             "when N <= 6");
    constexpr int kMaxWalk = 10;
    constexpr int kMaxChainAlgebra = 6;
    std::vector<std::vector<ChainSample>> chains(kMaxWalk + 1);
    for (int n = 1; n <= kMaxWalk; ++n) {
        const ContactAlgebra line = contact_from_graph(FiniteGraph::linear(n));
        chains[static_cast<std::size_t>(n)].push_back({line, atom_tuple(line)});
    }
    for (int m = 1; m <= kMaxChainAlgebra; ++m) {
        const ContactAlgebra line = contact_from_graph(FiniteGraph::linear(m));
        for (int n = 1; n <= m; ++n) {
            for (const GoodTuple& c : enumerate_good_tuples(line, n)) {
                if (nerve(line, c).is_linear() && !(n == m && c == atom_tuple(line))) {
                    chains[static_cast<std::size_t>(n)].push_back({line, c});
                }
            }
        }
    }

    std::vector<FiniteGraph> graphs = labelled_up_to(5);
    for (FiniteGraph& g : graphs_up_to_isomorphism(6)) {
        graphs.push_back(std::move(g));
    }
    for (const FiniteGraph& g : graphs) {
        for_each_covering_walk(g, kMaxWalk, [&](const Walk& w) {
            const Arrangement f = walk_induced_surjection(g, w);
            for (const ChainSample& s : chains[w.size()]) {
                const GoodTuple c = consolidate(f, s.chain);
                const FiniteGraph got = nerve(s.algebra, c);
                t.check(got == g, [&] {
                    std::string walk;
                    for (int v : w) {
                        walk += (walk.empty() ? "" : ",") + std::to_string(v);
                    }
                    return "walk (" + walk + ") of " + to_string(g) + " with chain " + to_string(s.chain) +
                           in_graph(s.algebra.atom_contact()) + " gives nerve " + to_string(got);
                });
            }
        });
    }
    return t.done();
}

SuiteReport pattern_epi()
{
    Tally t("pattern-epi", "every map L_m -> L_n with m, n in 1-6");
    for (int m = 1; m <= 6; ++m) {
        for (int n = 1; n <= 6; ++n) {
            const FiniteGraph lm = FiniteGraph::linear(m);
            const FiniteGraph ln = FiniteGraph::linear(n);
            std::vector<std::vector<int>> brute;
            std::vector<int> f(static_cast<std::size_t>(m), 0);
            while (true) {
                if (is_is_epi(f, lm, ln)) {
                    brute.push_back(f);
                }
                t.check(is_is_epi(f, lm, ln) == is_pattern_epi(f, m, n), [&] {
                    return "map " + to_string(Arrangement::from_images(f)) + " from L_" + std::to_string(m) +
                           " to L_" + std::to_string(n) + " splits the two notions";
                });
                int k = m - 1;
                while (k >= 0 && f[static_cast<std::size_t>(k)] == n - 1) {
                    f[static_cast<std::size_t>(k)] = 0;
                    --k;
                }
                if (k < 0) {
                    break;
                }
                ++f[static_cast<std::size_t>(k)];
            }
            std::vector<std::vector<int>> listed;
            if (n <= m) {
                for (const Arrangement& p : enumerate_patterns(m, n)) {
                    listed.emplace_back(p.images().begin(), p.images().end());
                }
            }
            t.check(listed == brute, [&] {
                return "enumerate_patterns(" + std::to_string(m) + ", " + std::to_string(n) + ") lists " +
                       std::to_string(listed.size()) + " maps, brute force finds " + std::to_string(brute.size());
            });
        }
    }
    return t.done();
}

SuiteReport amalgamation()
{
    Tally t("amalgamation", "every pattern pair into L_c, c <= 3, sources <= 4, bound 30");
    for (int c = 1; c <= 3; ++c) {
        for (int a = c; a <= 4; ++a) {
            for (int b = c; b <= 4; ++b) {
                for (const Arrangement& f : enumerate_patterns(a, c)) {
                    for (const Arrangement& g : enumerate_patterns(b, c)) {
                        const auto r = amalgamate(f, g, 30);
                        t.check(r && compose(f, r->first) == compose(g, r->second) &&
                                    is_pattern_epi(r->first.images(), r->size, a) &&
                                    is_pattern_epi(r->second.images(), r->size, b),
                                [&] {
                                    return "amalgamation of " + to_string(f) + " and " + to_string(g) +
                                           (r ? " gives a non-commuting square" : " not found");
                                });
                    }
                }
            }
        }
    }
    return t.done();
}

SuiteReport composition()
{
    Tally t("composition", "pattern pairs with sizes <= 5; IS-epi pairs among labelled graphs on <= 3 vertices");
    for (int n = 1; n <= 5; ++n) {
        for (int k = n; k <= 5; ++k) {
            for (int m = k; m <= 5; ++m) {
                for (const Arrangement& f : enumerate_patterns(k, n)) {
                    for (const Arrangement& g : enumerate_patterns(m, k)) {
                        const Arrangement h = compose(f, g);
                        t.check(is_pattern_epi(h.images(), m, n),
                                [&] { return to_string(f) + "∘" + to_string(g) + " is not a pattern"; });
                    }
                }
            }
        }
    }

    struct Epi {
        std::size_t from;
        std::size_t to;
        std::vector<int> map;
    };
    const auto graphs = labelled_up_to(3);
    std::vector<Epi> epis;
    for (std::size_t x = 0; x < graphs.size(); ++x) {
        for (std::size_t y = 0; y < graphs.size(); ++y) {
            const int m = graphs[x].vertex_count();
            const int n = graphs[y].vertex_count();
            std::vector<int> f(static_cast<std::size_t>(m), 0);
            while (true) {
                if (is_is_epi(f, graphs[x], graphs[y])) {
                    epis.push_back({x, y, f});
                }
                int k = m - 1;
                while (k >= 0 && f[static_cast<std::size_t>(k)] == n - 1) {
                    f[static_cast<std::size_t>(k)] = 0;
                    --k;
                }
                if (k < 0) {
                    break;
                }
                ++f[static_cast<std::size_t>(k)];
            }
        }
    }
    for (const Epi& g : epis) {
        for (const Epi& f : epis) {
            if (f.from != g.to) {
                continue;
            }
            std::vector<int> h(g.map.size());
            for (std::size_t k = 0; k < h.size(); ++k) {
                h[k] = f.map[static_cast<std::size_t>(g.map[k])];
            }
            t.check(is_is_epi(h, graphs[g.from], graphs[f.to]), [&] {
                return "IS-epis " + to_string(graphs[g.from]) + " -> " + to_string(graphs[g.to]) + " -> " +
                       to_string(graphs[f.to]) + " compose to a non-epi";
            });
        }
    }
    return t.done();
}

SuiteReport chain_refinement_suite()
{
    Tally t("chain-refinement", "every good tuple of B(L_m), m <= 5");
    for (int m = 1; m <= 5; ++m) {
        const ContactAlgebra b = contact_from_graph(FiniteGraph::linear(m));
        for (const GoodTuple& a : all_tuples(b)) {
            const ChainRefinement r = chain_refinement(b, a);
            t.check(is_chain(b, r.chain) && follows(r.chain, r.arrangement, a) &&
                        consolidate(r.arrangement, r.chain) == a,
                    [&] { return "chain " + to_string(r.chain) + " for " + to_string(a) + " in B(L_" + std::to_string(m) + ")"; });
        }
    }
    return t.done();
}

SuiteReport fraisse_sequence()
{
    Tally t("fraisse-sequence", "sequences with (stages, bound) in {(5, 3), (6, 4)}");
    for (auto [k, s] : {std::pair{5, 3}, std::pair{6, 4}}) {
        const FraisseSequence seq = build_fraisse_sequence(k, s);
        const std::string defect = sequence_defect(seq);
        t.check(defect.empty(), [&] { return "build(" + std::to_string(k) + ", " + std::to_string(s) + "): " + defect; });
        for (const Obligation& ob : seq.ledger) {
            if (ob.stage <= k - 3) {
                t.check(ob.discharged_at.has_value(), [&] {
                    return "build(" + std::to_string(k) + ", " + std::to_string(s) + ") leaves " + to_string(ob.map) +
                           " onto stage " + std::to_string(ob.stage) + " queued";
                });
            }
        }
    }
    return t.done();
}

SuiteReport exists_pigeonhole()
{
    Tally t("exists-pigeonhole",
            "every tuple of every graph on 1-4 vertices up to isomorphism, arrangements with 1-2 more points than atoms");
    for (const FiniteGraph& g : iso_classes_up_to(4)) {
        const ContactAlgebra b = contact_from_graph(g);
        Evaluator ev(b);
        for (const GoodTuple& a : all_tuples(b)) {
            const int n = static_cast<int>(a.size());
            for (int m = b.atom_count() + 1; m <= b.atom_count() + 2; ++m) {
                for (const Arrangement& f : enumerate_surjections(m, n)) {
                    const Formula phi = Formula::exists(f, Formula::top(m));
                    t.check(!ev.satisfies(a, phi),
                            [&] { return print(phi) + " holds at " + to_string(a) + in_graph(g); });
                }
            }
        }
    }
    return t.done();
}

// Core-syntax formulas over a small vocabulary, grouped by size and context.
std::vector<Formula> syntactic_formulas(int max_size)
{
    constexpr int kContexts = 3;
    std::vector<std::vector<std::vector<Formula>>> by(static_cast<std::size_t>(max_size) + 1,
                                                      std::vector<std::vector<Formula>>(kContexts + 1));
    by[1][1] = {Formula::bottom(1), Formula::graph(FiniteGraph(1))};
    by[1][2] = {Formula::bottom(2), Formula::graph(FiniteGraph(2)), Formula::graph(FiniteGraph::linear(2))};
    by[1][3] = {Formula::bottom(3), Formula::graph(FiniteGraph::linear(3))};
    const std::vector<Arrangement> maps = {Arrangement::from_images({0}), Arrangement::from_images({0, 0}),
                                           Arrangement::from_images({1, 0}), Arrangement::from_images({0, 0, 1})};
    for (int s = 2; s <= max_size; ++s) {
        for (int c = 1; c <= kContexts; ++c) {
            auto& out = by[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)];
            for (const Formula& x : by[static_cast<std::size_t>(s) - 1][static_cast<std::size_t>(c)]) {
                out.push_back(Formula::negation(x));
            }
            for (int left = 1; left + 1 < s; ++left) {
                for (const Formula& x : by[static_cast<std::size_t>(left)][static_cast<std::size_t>(c)]) {
                    for (const Formula& y : by[static_cast<std::size_t>(s - 1 - left)][static_cast<std::size_t>(c)]) {
                        out.push_back(Formula::disjunction(x, y));
                    }
                }
            }
            for (const Arrangement& f : maps) {
                if (f.target() != c) {
                    continue;
                }
                for (const Formula& x : by[static_cast<std::size_t>(s) - 1][static_cast<std::size_t>(f.source())]) {
                    out.push_back(Formula::exists(f, x));
                }
            }
        }
    }
    std::vector<Formula> all;
    for (const auto& row : by) {
        for (const auto& cell : row) {
            all.insert(all.end(), cell.begin(), cell.end());
        }
    }
    return all;
}

SuiteReport round_trip()
{
    Tally t("round-trip", "every core-syntax formula up to size 8 over a fixed small vocabulary");
    for (const Formula& phi : syntactic_formulas(8)) {
        const std::string text = print(phi);
        bool ok = false;
        try {
            ok = parse(text) == phi;
        } catch (const InputError&) {
        }
        t.check(ok, [&] { return "\"" + text + "\" does not reparse to itself"; });
    }
    return t.done();
}

struct Entry {
    SuiteInfo info;
    SuiteReport (*run)();
};

const std::vector<Entry>& registry()
{
    static const std::vector<Entry> entries = {
        {{"contact-axioms", "contact algebras of graphs satisfy the contact axioms"}, contact_axioms},
        {{"duality", "the dual pre-space of B(G) is G"}, duality},
        {{"delta-symmetry", "contact is symmetric"}, delta_symmetry},
        {{"delta-monotone", "contact is monotone in its first argument"}, delta_monotone},
        {{"refinement", "unique arrangement, consolidation, and nerve transfer along refinements"}, refinement},
        {{"undo", "consolidating along g undoes a factor of f∘g"}, undo},
        {{"covering-walk", "consolidating a chain along a covering walk recovers the nerve"}, covering_walk},
        {{"directed", "common refinements are good and refine both tuples"}, directed},
        {{"exists-pigeonhole", "refinement quantifiers with too many points fail"}, exists_pigeonhole},
        {{"round-trip", "printing then parsing a formula is the identity"}, round_trip},
        {{"pattern-epi", "between linear graphs the IS-epis are exactly the patterns"}, pattern_epi},
        {{"amalgamation", "amalgams of patterns exist and commute"}, amalgamation},
        {{"composition", "patterns and IS-epis are closed under composition"}, composition},
        {{"chain-refinement", "chain refinements are chains that consolidate back"}, chain_refinement_suite},
        {{"fraisse-sequence", "bonding maps are patterns, composites and ledger are consistent"}, fraisse_sequence},
    };
    return entries;
}

} // namespace

const std::vector<SuiteInfo>& suite_catalog()
{
    static const std::vector<SuiteInfo> catalog = [] {
        std::vector<SuiteInfo> out;
        for (const Entry& e : registry()) {
            out.push_back(e.info);
        }
        return out;
    }();
    return catalog;
}

SuiteReport run_suite(const std::string& name)
{
    for (const Entry& e : registry()) {
        if (e.info.name == name) {
            return e.run();
        }
    }
    throw InputError("unknown suite '" + name + "' (see verify --list)");
}

} // namespace cologic
