// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "cologic/algebra.hpp"
#include "cologic/covers.hpp"
#include "cologic/ef_game.hpp"
#include "cologic/fraisse.hpp"
#include "cologic/json_io.hpp"
#include "cologic/satisfaction.hpp"
#include "cologic/verify.hpp"
#include "support/formula_basis.hpp"

using namespace cologic;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
};

std::string suite_summary(const SuiteReport& r)
{
    std::ostringstream out;
    out << r.name << ": " << r.cases_checked << " cases, " << r.violation_count << " violations";
    if (r.counterexample) out << " (first: " << *r.counterexample << ")";
    return out.str();
}

Outcome suites(std::initializer_list<const char*> names)
{
    Outcome o{true, ""};
    for (const char* name : names) {
        const SuiteReport r = run_suite(name);
        o.pass = o.pass && r.ok();
        o.detail += (o.detail.empty() ? "" : "; ") + suite_summary(r);
    }
    return o;
}

Outcome contact_axioms()
{
    std::uint64_t graphs = 0, violations = 0, instances = 0;
    for (int n = 1; n <= 6; ++n) {
        for (const FiniteGraph& g : graphs_up_to_isomorphism(n)) {
            const AxiomReport r = verify_contact_axioms(contact_from_graph(g));
            ++graphs;
            violations += r.violation_count;
            instances += r.instances_checked;
        }
    }
    return {violations == 0, std::to_string(graphs) + " graphs, " + std::to_string(instances) + " instances, " +
                                 std::to_string(violations) + " violations"};
}

Outcome duality()
{
    std::uint64_t graphs = 0, failures = 0;
    for (int n = 1; n <= 5; ++n) {
        for (const FiniteGraph& g : all_graphs(n)) {
            ++graphs;
            failures += stone_prespace(contact_from_graph(g)) == g ? 0 : 1;
        }
    }
    Outcome o = suites({"duality"});
    o.pass = o.pass && failures == 0;
    o.detail = std::to_string(graphs) + " labelled graphs, " + std::to_string(failures) + " mismatches; " + o.detail;
    return o;
}

// Patterns against brute-force maps L_m -> L_n filtered by the IS-epi test.
Outcome pattern_identification()
{
    std::uint64_t mismatches = 0, compared = 0;
    for (int m = 1; m <= 6; ++m) {
        for (int n = 1; n <= 6; ++n) {
            std::set<std::vector<int>> brute;
            std::vector<int> f(static_cast<std::size_t>(m), 0);
            const FiniteGraph lm = FiniteGraph::linear(m), ln = FiniteGraph::linear(n);
            while (true) {
                if (is_is_epi(f, lm, ln)) brute.insert(f);
                int pos = m - 1;
                while (pos >= 0 && ++f[static_cast<std::size_t>(pos)] == n) f[static_cast<std::size_t>(pos--)] = 0;
                if (pos < 0) break;
            }
            std::set<std::vector<int>> listed;
            if (n <= m) {
                for (const auto& p : enumerate_patterns(m, n)) listed.insert({p.images().begin(), p.images().end()});
            }
            ++compared;
            mismatches += listed == brute ? 0 : 1;
        }
    }
    const std::size_t p32 = enumerate_patterns(3, 2).size();
    bool nn = true;
    for (int n = 2; n <= 6; ++n) nn = nn && enumerate_patterns(n, n).size() == 2;
    return {mismatches == 0 && p32 == 6 && nn, std::to_string(compared) + " (m,n) pairs, " +
                                                    std::to_string(mismatches) + " mismatches, |patterns(3,2)| = " +
                                                    std::to_string(p32)};
}

Outcome amalgamation()
{
    std::uint64_t pairs = 0, found = 0, commuting = 0;
    int largest = 0;
    for (int c = 1; c <= 3; ++c) {
        std::vector<Arrangement> into;
        for (int s = c; s <= 4; ++s) {
            for (auto& p : enumerate_patterns(s, c)) into.push_back(std::move(p));
        }
        for (const auto& f : into) {
            for (const auto& g : into) {
                ++pairs;
                const auto r = amalgamate(f, g, 30);
                if (!r) continue;
                ++found;
                largest = std::max(largest, r->size);
                bool ok = r->first.is_pattern() && r->second.is_pattern() && r->first.source() == r->size &&
                          r->second.source() == r->size && r->first.target() == f.source() &&
                          r->second.target() == g.source();
                for (int k = 0; ok && k < r->size; ++k) ok = f(r->first(k)) == g(r->second(k));
                commuting += ok ? 1 : 0;
            }
        }
    }
    return {found == pairs && commuting == pairs,
            std::to_string(pairs) + " pairs, " + std::to_string(found) + " amalgamated, " +
                std::to_string(commuting) + " commuting, largest N = " + std::to_string(largest)};
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string("\"") + COLOGIC_CLI_PATH + "\" " + args + " > /dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome fraisse_build()
{
    const std::string file = "acceptance_sequence.json";
    const int build = run_cli("fraisse build --stages 5 --bound 3 --out " + file);
    if (build != 0) return {false, "fraisse build exited with " + std::to_string(build)};
    const FraisseSequence seq = sequence_from_json(read_json_file(file), file);
    std::uint64_t checked = 0, open = 0;
    for (const Obligation& ob : seq.ledger) {
        if (ob.stage > 2 || ob.map.source() > 3) continue;
        ++checked;
        open += ob.discharged_at ? 0 : 1;
    }
    std::string audits;
    bool audits_ok = true;
    for (int s = 0; s <= 2; ++s) {
        const int code = run_cli("fraisse audit " + file + " --stage " + std::to_string(s) + " --bound 3");
        audits_ok = audits_ok && code == 0;
        audits += (audits.empty() ? "" : ",") + std::to_string(code);
    }
    std::remove(file.c_str());
    return {open == 0 && checked > 0 && audits_ok,
            std::to_string(seq.stage_count()) + " stages, " + std::to_string(checked) + " ledger obligations on stages 0-2, " +
                std::to_string(open) + " open; audit exit codes " + audits};
}

std::vector<ContactAlgebra> labelled_models(int max_atoms)
{
    std::vector<ContactAlgebra> models;
    for (int n = 1; n <= max_atoms; ++n) {
        for (const FiniteGraph& g : all_graphs(n)) models.push_back(contact_from_graph(g));
    }
    return models;
}

Outcome ef_oracle()
{
    const auto models = labelled_models(3);
    const test::FormulaBasis basis(models, 3, 2);
    const auto& pos = basis.positions();
    std::map<std::pair<int, int>, EfGame> games;
    std::uint64_t compared = 0, disagreements = 0, equivalent_pairs = 0;
    for (std::size_t p = 0; p < pos.size(); ++p) {
        for (std::size_t q = 0; q < pos.size(); ++q) {
            if (pos[p].tuple.size() != pos[q].tuple.size()) continue;
            auto it = games.find({pos[p].model, pos[q].model});
            if (it == games.end()) {
                it = games
                         .emplace(std::make_pair(pos[p].model, pos[q].model),
                                  EfGame(models[static_cast<std::size_t>(pos[p].model)],
                                         models[static_cast<std::size_t>(pos[q].model)]))
                         .first;
            }
            for (int d = 0; d <= 2; ++d) {
                const bool game = it->second.equivalent(pos[p].tuple, pos[q].tuple, d);
                ++compared;
                equivalent_pairs += game ? 1 : 0;
                disagreements += game == basis.agree(p, q, d) ? 0 : 1;
            }
        }
    }
    return {disagreements == 0,
            std::to_string(models.size()) + " models, " + std::to_string(pos.size()) + " positions, " +
                std::to_string(compared) + " comparisons (" + std::to_string(equivalent_pairs) + " equivalent), " +
                std::to_string(basis.generator_count(2)) + " distinct rank<=2 extensions, " +
                std::to_string(disagreements) + " disagreements"};
}

// Every partition of atoms 0..n-1 into nonempty blocks (restricted growth strings).
std::vector<std::vector<Element>> set_partitions(int n)
{
    std::vector<std::vector<Element>> out;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int blocks) {
        if (i == n) {
            std::vector<Element> parts(static_cast<std::size_t>(blocks));
            for (int a = 0; a < n; ++a) parts[static_cast<std::size_t>(rgs[static_cast<std::size_t>(a)])] |= Element::singleton(a);
            out.push_back(parts);
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            rgs[static_cast<std::size_t>(i)] = b;
            rec(i + 1, std::max(blocks, b + 1));
        }
    };
    rec(0, 0);
    return out;
}

Outcome tarski_vaught()
{
    std::uint64_t instances = 0, generated = 0, tuples = 0, disagreements = 0;
    for (int n = 1; n <= 4; ++n) {
        for (const FiniteGraph& g : graphs_up_to_isomorphism(n)) {
            const ContactAlgebra b = contact_from_graph(g);
            for (const auto& blocks : set_partitions(n)) {
                ++instances;
                if (!generated_substructure_check(b, blocks, 4).ok()) continue;
                ++generated;
                const Subalgebra a(b, blocks);
                const test::FormulaBasis basis({b, a.quotient()}, 4, 2);
                for (std::size_t p = 0; p < basis.positions().size(); ++p) {
                    const auto& pos = basis.positions()[p];
                    if (pos.model != 1) continue;
                    const auto q = basis.index_of(0, a.embed(pos.tuple));
                    ++tuples;
                    disagreements += q && basis.agree(p, *q, 2) ? 0 : 1;
                }
            }
        }
    }
    return {disagreements == 0 && generated > 0,
            std::to_string(instances) + " (B, partition) pairs, " + std::to_string(generated) +
                " generated substructures at bound 4, " + std::to_string(tuples) + " subalgebra tuples, " +
                std::to_string(disagreements) + " rank<=2 disagreements"};
}

GoodTuple relabel(const GoodTuple& t, const std::vector<int>& sigma)
{
    GoodTuple out;
    for (Element e : t) {
        Element image;
        for (int a : e.atoms()) image |= Element::singleton(sigma[static_cast<std::size_t>(a)]);
        out.push_back(image);
    }
    return out;
}

Outcome isomorphism_invariance()
{
    std::uint64_t checks = 0, failures = 0, formulas = 0;
    for (int n = 1; n <= 4; ++n) {
        for (const FiniteGraph& g : graphs_up_to_isomorphism(n)) {
            const ContactAlgebra b = contact_from_graph(g);
            const auto autos = isomorphisms(g, g);
            std::vector<Formula> phis;
            const test::FormulaBasis basis({b}, n, 1, true);
            for (const auto& gen : basis.generators()) phis.push_back(gen.formula);
            // Rank 2: nested existentials onto graph atoms of the realized nerves.
            for (int ctx = 1; ctx <= std::min(n, 2); ++ctx) {
                for (int m = ctx; m <= n; ++m) {
                    for (const auto& f : enumerate_surjections(m, ctx)) {
                        for (int k = m; k <= n; ++k) {
                            for (const auto& h : enumerate_surjections(k, m)) {
                                for (const auto& t : enumerate_good_tuples(b, k)) {
                                    const Formula atom = Formula::graph(nerve(b, t));
                                    phis.push_back(Formula::exists(f, Formula::exists(h, atom)));
                                    phis.push_back(Formula::forall(f, Formula::exists(h, atom)));
                                }
                            }
                        }
                    }
                }
            }
            formulas += phis.size();
            Evaluator ev(b);
            for (const Formula& phi : phis) {
                for (const auto& t : enumerate_good_tuples(b, phi.context())) {
                    const bool base = ev.satisfies(t, phi);
                    for (const auto& sigma : autos) {
                        ++checks;
                        failures += ev.satisfies(relabel(t, sigma), phi) == base ? 0 : 1;
                    }
                }
            }
        }
    }
    return {failures == 0, std::to_string(formulas) + " formulas, " + std::to_string(checks) +
                               " (tuple, automorphism) checks, " + std::to_string(failures) + " failures"};
}

std::string chain_type_table()
{
    std::ostringstream out;
    for (int m = 1; m <= 8; ++m) {
        const ContactAlgebra b = contact_from_graph(FiniteGraph::linear(m));
        for (int n = 1; n <= std::min(m, 4); ++n) {
            std::vector<GoodTuple> chains;
            for (auto& t : enumerate_good_tuples(b, n)) {
                if (is_chain(b, t)) chains.push_back(std::move(t));
            }
            EfGame game(b, b);
            out << "L_" << m << " n=" << n << " chains=" << chains.size();
            bool previous = true;
            for (int d = 0; d <= 2; ++d) {
                // d-equivalence implies (d-1)-equivalence, and it is transitive.
                bool all = previous;
                for (std::size_t k = 1; all && k < chains.size(); ++k) all = game.equivalent(chains[0], chains[k], d);
                previous = all;
                out << " d" << d << "=" << (all ? "same" : "differ");
            }
            out << '\n';
        }
    }
    return out.str();
}

Outcome chain_types()
{
    const std::string first = chain_type_table();
    const std::string second = chain_type_table();
    std::cout << first;
    return {first == second, "report printed above; repeated run identical: " + std::string(first == second ? "yes" : "no")};
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "contact axioms on graphs up to 6 vertices", 60, contact_axioms},
        {2, "duality round trip up to 5 vertices", 10, duality},
        {3, "refinement, consolidation, undo and directed lemmas", 300,
         [] { return suites({"refinement", "undo", "directed"}); }},
        {4, "covering-walk lemma", 120, [] { return suites({"covering-walk"}); }},
        {5, "patterns are the IS-epis between linear graphs", 10, pattern_identification},
        {6, "amalgamation of patterns into L_c, c <= 3", 120, amalgamation},
        {7, "Fraisse build and audit, 5 stages, bound 3", 300, fraisse_build},
        {8, "EF game agrees with rank-<=d formula oracle", 300, ef_oracle},
        {9, "generated substructures agree on rank-<=2 formulas", 300, tarski_vaught},
        {10, "satisfaction invariant under automorphisms", 60, isomorphism_invariance},
        {11, "chain-type report for L_m, m <= 8", 600, chain_types},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.limit_seconds;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s [%d] %s: %s; %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : " TIME LIMIT EXCEEDED");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
