#include "cologic/fraisse.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

namespace cologic {

bool is_is_epi(std::span<const int> f, const FiniteGraph& g, const FiniteGraph& h)
{
    if (static_cast<int>(f.size()) != g.vertex_count()) {
        throw std::invalid_argument("map has " + std::to_string(f.size()) + " images but the source graph has " +
                                    std::to_string(g.vertex_count()) + " vertices");
    }
    for (int v : f) {
        if (v < 0 || v >= h.vertex_count()) {
            throw std::invalid_argument("image " + std::to_string(v) + " outside the target graph");
        }
    }
    std::vector<Element> fibers(static_cast<std::size_t>(h.vertex_count()));
    for (std::size_t u = 0; u < f.size(); ++u) {
        fibers[static_cast<std::size_t>(f[u])] |= Element::singleton(static_cast<int>(u));
    }
    if (std::any_of(fibers.begin(), fibers.end(), [](Element e) { return e.empty(); })) {
        return false;
    }
    for (auto [u, v] : g.edges()) {
        if (!h.adjacent(f[static_cast<std::size_t>(u)], f[static_cast<std::size_t>(v)])) {
            return false;
        }
    }
    for (auto [x, y] : h.edges()) {
        bool lifted = false;
        for (int u : fibers[static_cast<std::size_t>(x)].atoms()) {
            if (g.neighbors(u).meets(fibers[static_cast<std::size_t>(y)])) {
                lifted = true;
                break;
            }
        }
        if (!lifted) {
            return false;
        }
    }
    return true;
}

bool is_pattern_epi(std::span<const int> f, int m, int n)
{
    if (static_cast<int>(f.size()) != m) {
        throw std::invalid_argument("map has " + std::to_string(f.size()) + " images, expected " + std::to_string(m));
    }
    std::vector<bool> hit(static_cast<std::size_t>(std::max(n, 0)), false);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < 0 || f[i] >= n) {
            return false;
        }
        if (i > 0 && std::abs(f[i] - f[i - 1]) > 1) {
            return false;
        }
        hit[static_cast<std::size_t>(f[i])] = true;
    }
    return n >= 1 && std::find(hit.begin(), hit.end(), false) == hit.end();
}

namespace {

// Fewest unit steps from v that reach both 0 and n - 1, given [lo, hi] is covered.
int steps_to_cover(int v, int lo, int hi, int n)
{
    const bool low = lo > 0;
    const bool high = hi < n - 1;
    if (low && high) {
        return std::min(v, n - 1 - v) + (n - 1);
    }
    return low ? v : high ? n - 1 - v : 0;
}

void extend_patterns(std::vector<int>& prefix, int m, int n, int lo, int hi, std::vector<Arrangement>& out)
{
    if (static_cast<int>(prefix.size()) == m) {
        if (lo == 0 && hi == n - 1) {
            out.emplace_back(prefix, n);
        }
        return;
    }
    const int remaining = m - static_cast<int>(prefix.size());
    const int last = prefix.back();
    for (int v = std::max(0, last - 1); v <= std::min(n - 1, last + 1); ++v) {
        const int nlo = std::min(lo, v);
        const int nhi = std::max(hi, v);
        if (steps_to_cover(v, nlo, nhi, n) > remaining - 1) {
            continue;
        }
        prefix.push_back(v);
        extend_patterns(prefix, m, n, nlo, nhi, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<Arrangement> enumerate_patterns(int m, int n)
{
    if (n < 1 || m < n) {
        throw std::invalid_argument("patterns " + std::to_string(m) + " ->> " + std::to_string(n) +
                                    " need 1 <= n <= m");
    }
    std::vector<Arrangement> out;
    std::vector<int> prefix;
    for (int v = 0; v < n; ++v) {
        prefix.assign(1, v);
        extend_patterns(prefix, m, n, v, v, out);
    }
    return out;
}

LinearSpan common_refinement_linear(int n0, int n1)
{
    if (n0 < 1 || n1 < 1) {
        throw std::invalid_argument("linear graphs need at least one vertex");
    }
    // No pattern onto L_n has fewer than n points, and stretch-then-hold
    // maps exist at N = max(n0, n1).
    const int size = std::max(n0, n1);
    auto stretch = [size](int n) {
        std::vector<int> images(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) {
            images[static_cast<std::size_t>(i)] = std::min(i, n - 1);
        }
        return Arrangement(std::move(images), n);
    };
    return {size, stretch(n0), stretch(n1)};
}

std::optional<LinearSpan> amalgamate(const Arrangement& f, const Arrangement& g, int bound)
{
    if (f.target() != g.target()) {
        throw std::invalid_argument("amalgamation needs a common target, got " + std::to_string(f.target()) +
                                    " and " + std::to_string(g.target()));
    }
    if (!f.is_pattern() || !g.is_pattern()) {
        throw std::invalid_argument("amalgamation needs patterns, got " + to_string(f) + " and " + to_string(g));
    }
    const int a = f.source();
    const int b = g.source();

    struct Node {
        int i, j, lo_a, hi_a, lo_b, hi_b;
        std::int64_t parent;
    };
    auto encode = [a, b](const Node& s) {
        std::uint64_t k = static_cast<std::uint64_t>(s.i);
        k = k * static_cast<std::uint64_t>(b) + static_cast<std::uint64_t>(s.j);
        k = k * static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(s.lo_a);
        k = k * static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(s.hi_a);
        k = k * static_cast<std::uint64_t>(b) + static_cast<std::uint64_t>(s.lo_b);
        k = k * static_cast<std::uint64_t>(b) + static_cast<std::uint64_t>(s.hi_b);
        return k;
    };
    auto done = [a, b](const Node& s) { return s.lo_a == 0 && s.hi_a == a - 1 && s.lo_b == 0 && s.hi_b == b - 1; };

    std::vector<Node> nodes;
    std::unordered_map<std::uint64_t, bool> seen;
    std::vector<std::size_t> frontier;
    for (int i = 0; i < a; ++i) {
        for (int j = 0; j < b; ++j) {
            if (f(i) == g(j)) {
                Node s{i, j, i, i, j, j, -1};
                seen.emplace(encode(s), true);
                frontier.push_back(nodes.size());
                nodes.push_back(s);
            }
        }
    }

    auto unwind = [&](std::size_t at) {
        std::vector<int> u;
        std::vector<int> v;
        for (std::int64_t k = static_cast<std::int64_t>(at); k >= 0; k = nodes[static_cast<std::size_t>(k)].parent) {
            u.push_back(nodes[static_cast<std::size_t>(k)].i);
            v.push_back(nodes[static_cast<std::size_t>(k)].j);
        }
        std::reverse(u.begin(), u.end());
        std::reverse(v.begin(), v.end());
        const int size = static_cast<int>(u.size());
        return LinearSpan{size, Arrangement(std::move(u), a), Arrangement(std::move(v), b)};
    };

    for (int length = 1; length <= bound && !frontier.empty(); ++length) {
        for (std::size_t at : frontier) {
            if (done(nodes[at])) {
                return unwind(at);
            }
        }
        if (length == bound) {
            break;
        }
        std::vector<std::size_t> next;
        for (std::size_t at : frontier) {
            const Node cur = nodes[at];
            for (int di = -1; di <= 1; ++di) {
                const int i = cur.i + di;
                if (i < 0 || i >= a) {
                    continue;
                }
                for (int dj = -1; dj <= 1; ++dj) {
                    const int j = cur.j + dj;
                    if (j < 0 || j >= b || f(i) != g(j)) {
                        continue;
                    }
                    Node s{i,
                           j,
                           std::min(cur.lo_a, i),
                           std::max(cur.hi_a, i),
                           std::min(cur.lo_b, j),
                           std::max(cur.hi_b, j),
                           static_cast<std::int64_t>(at)};
                    if (seen.emplace(encode(s), true).second) {
                        next.push_back(nodes.size());
                        nodes.push_back(s);
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

std::optional<Arrangement> factor_through(const Arrangement& pi, const Arrangement& f)
{
    if (pi.target() != f.target()) {
        throw std::invalid_argument("factorization needs a common target, got " + std::to_string(pi.target()) +
                                    " and " + std::to_string(f.target()));
    }
    const int m = pi.source();
    const int a = f.source();
    if (m < a) {
        return std::nullopt;
    }
    // feasible(k, v, lo, hi): with g(k) = v and range [lo, hi] covered so far,
    // the remaining positions can be filled.
    std::unordered_map<std::uint64_t, bool> memo;
    auto key = [a](int k, int v, int lo, int hi) {
        return ((static_cast<std::uint64_t>(k) * a + v) * a + lo) * a + static_cast<std::uint64_t>(hi);
    };
    auto feasible = [&](auto&& self, int k, int v, int lo, int hi) -> bool {
        if (k == m - 1) {
            return lo == 0 && hi == a - 1;
        }
        if (steps_to_cover(v, lo, hi, a) > m - 1 - k) {
            return false;
        }
        const std::uint64_t id = key(k, v, lo, hi);
        if (auto it = memo.find(id); it != memo.end()) {
            return it->second;
        }
        bool ok = false;
        for (int w = std::max(0, v - 1); !ok && w <= std::min(a - 1, v + 1); ++w) {
            if (f(w) == pi(k + 1)) {
                ok = self(self, k + 1, w, std::min(lo, w), std::max(hi, w));
            }
        }
        memo.emplace(id, ok);
        return ok;
    };

    std::vector<int> images;
    images.reserve(static_cast<std::size_t>(m));
    int lo = 0;
    int hi = -1;
    for (int k = 0; k < m; ++k) {
        int chosen = -1;
        const int from = k == 0 ? 0 : std::max(0, images.back() - 1);
        const int to = k == 0 ? a - 1 : std::min(a - 1, images.back() + 1);
        for (int w = from; w <= to; ++w) {
            if (f(w) != pi(k)) {
                continue;
            }
            const int nlo = k == 0 ? w : std::min(lo, w);
            const int nhi = k == 0 ? w : std::max(hi, w);
            if (feasible(feasible, k, w, nlo, nhi)) {
                chosen = w;
                lo = nlo;
                hi = nhi;
                break;
            }
        }
        if (chosen < 0) {
            return std::nullopt;
        }
        images.push_back(chosen);
    }
    return Arrangement(std::move(images), a);
}

// ---------------------------------------------------------------------------
// Fraisse sequences

const Arrangement& FraisseSequence::composite(int t, int s) const
{
    if (t < 0 || t >= stage_count() || s < 0 || s > t) {
        throw std::out_of_range("no composite from stage " + std::to_string(t) + " to stage " + std::to_string(s));
    }
    return composites[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)];
}

namespace {

void add_obligations(FraisseSequence& seq, int stage, int bound)
{
    const int n = seq.stages[static_cast<std::size_t>(stage)];
    for (int m = n; m <= bound; ++m) {
        for (Arrangement& f : enumerate_patterns(m, n)) {
            Obligation ob{stage, std::move(f), std::nullopt, std::nullopt};
            if (auto g = factor_through(seq.composite(stage, stage), ob.map)) {
                ob.discharged_at = stage;
                ob.witness = std::move(*g);
            }
            seq.ledger.push_back(std::move(ob));
        }
    }
}

std::string describe(const Obligation& ob)
{
    return to_string(ob.map) + " onto stage " + std::to_string(ob.stage);
}

} // namespace

FraisseSequence build_fraisse_sequence(int stage_count, int bound, int amalgamation_bound)
{
    if (stage_count < 1) {
        throw std::invalid_argument("a sequence needs at least one stage");
    }
    if (bound < 1) {
        throw std::invalid_argument("obligation bound must be at least 1");
    }
    FraisseSequence seq;
    seq.bound = bound;
    seq.stages.push_back(1);
    seq.composites.push_back({Arrangement::identity(1)});
    if (stage_count > 1) {
        add_obligations(seq, 0, bound);
    }

    for (int t = 1; t < stage_count; ++t) {
        const int prev = t - 1;
        Arrangement rho = Arrangement::identity(seq.stages.back());
        for (const Obligation& ob : seq.ledger) {
            if (ob.discharged_at) {
                continue;
            }
            const Arrangement pi = compose(seq.composite(prev, ob.stage), rho);
            if (factor_through(pi, ob.map)) {
                continue;
            }
            auto amalgam = amalgamate(ob.map, pi, amalgamation_bound);
            if (!amalgam) {
                throw FraisseError("no amalgam of size at most " + std::to_string(amalgamation_bound) +
                                   " discharges obligation " + describe(ob) + " at stage " + std::to_string(t));
            }
            rho = compose(rho, amalgam->second);
        }

        seq.stages.push_back(rho.source());
        std::vector<Arrangement> row;
        for (int s = 0; s < t; ++s) {
            row.push_back(compose(seq.composite(prev, s), rho));
        }
        row.push_back(Arrangement::identity(rho.source()));
        seq.composites.push_back(std::move(row));
        seq.bonding.push_back(std::move(rho));

        for (Obligation& ob : seq.ledger) {
            if (ob.discharged_at) {
                continue;
            }
            auto g = factor_through(seq.composite(t, ob.stage), ob.map);
            if (!g) {
                throw FraisseError("internal: amalgam failed to discharge " + describe(ob));
            }
            ob.discharged_at = t;
            ob.witness = std::move(*g);
        }
        if (t + 1 < stage_count) {
            add_obligations(seq, t, bound);
        }
    }
    return seq;
}

std::string sequence_defect(const FraisseSequence& seq)
{
    const int k = seq.stage_count();
    if (k < 1 || seq.stages[0] < 1) {
        return "sequence has no stages";
    }
    if (static_cast<int>(seq.bonding.size()) != k - 1) {
        return "expected " + std::to_string(k - 1) + " bonding maps, found " + std::to_string(seq.bonding.size());
    }
    for (int t = 0; t + 1 < k; ++t) {
        const Arrangement& b = seq.bonding[static_cast<std::size_t>(t)];
        if (b.source() != seq.stages[static_cast<std::size_t>(t) + 1] ||
            b.target() != seq.stages[static_cast<std::size_t>(t)]) {
            return "bonding map " + std::to_string(t) + " has the wrong shape";
        }
        if (!b.is_pattern()) {
            return "bonding map " + std::to_string(t) + " " + to_string(b) + " is not a pattern";
        }
    }
    if (static_cast<int>(seq.composites.size()) != k) {
        return "composite cache has " + std::to_string(seq.composites.size()) + " rows for " + std::to_string(k) +
               " stages";
    }
    for (int t = 0; t < k; ++t) {
        const auto& row = seq.composites[static_cast<std::size_t>(t)];
        if (static_cast<int>(row.size()) != t + 1) {
            return "composite row " + std::to_string(t) + " has the wrong length";
        }
        if (!row.back().is_identity() || row.back().source() != seq.stages[static_cast<std::size_t>(t)]) {
            return "composite " + std::to_string(t) + "->" + std::to_string(t) + " is not the identity";
        }
        for (int s = 0; s < t; ++s) {
            const Arrangement expected =
                compose(seq.composite(t - 1, s), seq.bonding[static_cast<std::size_t>(t - 1)]);
            if (row[static_cast<std::size_t>(s)] != expected) {
                return "composite " + std::to_string(t) + "->" + std::to_string(s) + " disagrees with the bonding maps";
            }
        }
    }
    for (const Obligation& ob : seq.ledger) {
        if (ob.stage < 0 || ob.stage >= k || ob.map.target() != seq.stages[static_cast<std::size_t>(ob.stage)]) {
            return "ledger entry " + to_string(ob.map) + " names a bad stage";
        }
        if (ob.discharged_at.has_value() != ob.witness.has_value()) {
            return "ledger entry " + describe(ob) + " is half discharged";
        }
        if (ob.discharged_at) {
            const int t = *ob.discharged_at;
            if (t < ob.stage || t >= k) {
                return "ledger entry " + describe(ob) + " discharged at a bad stage";
            }
            if (ob.witness->source() != seq.stages[static_cast<std::size_t>(t)] ||
                ob.witness->target() != ob.map.source() || !ob.witness->is_pattern() ||
                compose(ob.map, *ob.witness) != seq.composite(t, ob.stage)) {
                return "ledger witness for " + describe(ob) + " does not factor the composite";
            }
        }
    }
    return {};
}

std::size_t AuditReport::undischarged() const
{
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const AuditEntry& e) { return !e.discharged_at; }));
}

AuditReport extension_property_audit(const FraisseSequence& seq, int stage, int bound)
{
    if (stage < 0 || stage >= seq.stage_count()) {
        throw std::invalid_argument("stage " + std::to_string(stage) + " is not in a sequence of " +
                                    std::to_string(seq.stage_count()) + " stages");
    }
    AuditReport report;
    report.stage = stage;
    report.bound = bound;
    const int n = seq.stages[static_cast<std::size_t>(stage)];
    for (int m = n; m <= bound; ++m) {
        for (Arrangement& f : enumerate_patterns(m, n)) {
            AuditEntry entry{std::move(f), std::nullopt, std::nullopt};
            for (int t = stage; t < seq.stage_count(); ++t) {
                if (auto g = factor_through(seq.composite(t, stage), entry.map)) {
                    entry.discharged_at = t;
                    entry.witness = std::move(*g);
                    break;
                }
            }
            report.entries.push_back(std::move(entry));
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Chains in linear-graph algebras

namespace {

void require_linear(const ContactAlgebra& algebra)
{
    if (!algebra.atom_contact().is_linear()) {
        throw std::invalid_argument("contact graph " + to_string(algebra.atom_contact()) + " is not linear");
    }
}

bool is_interval(Element e)
{
    const std::uint64_t shifted = e.bits() >> e.lowest();
    return (shifted & (shifted + 1)) == 0;
}

} // namespace

ChainRefinement chain_refinement(const ContactAlgebra& algebra, const GoodTuple& tuple)
{
    require_linear(algebra);
    require_good_tuple(algebra, tuple);
    if (is_chain(algebra, tuple) && std::all_of(tuple.begin(), tuple.end(), is_interval)) {
        return {tuple, Arrangement::identity(static_cast<int>(tuple.size()))};
    }
    GoodTuple atoms = atom_tuple(algebra);
    Arrangement f = *arrangement_of(atoms, tuple);
    return {std::move(atoms), std::move(f)};
}

std::optional<GoodTuple> chain_following_pattern(const ContactAlgebra& algebra, const GoodTuple& chain,
                                                 const Arrangement& f)
{
    if (!is_chain(algebra, chain)) {
        throw std::invalid_argument(to_string(chain) + " is not a chain");
    }
    std::optional<GoodTuple> best;
    if (f.source() > algebra.atom_count()) {
        return best;
    }
    for_each_refinement(chain, f, [&](const GoodTuple& b) {
        if (nerve(algebra, b).is_linear() && (!best || lex_less(b, *best))) {
            best = b;
        }
        return true;
    });
    return best;
}

// ---------------------------------------------------------------------------
// G_n

FiniteGraph example_gn(int n)
{
    if (n < 0 || n > kMaxGnLevel) {
        throw std::invalid_argument("G_n is available for 0 <= n <= " + std::to_string(kMaxGnLevel));
    }
    const int strings = 1 << n;
    FiniteGraph g(strings + 1);
    g.add_edge(strings - 1, strings);
    return g;
}

std::vector<int> example_gn_epi(int m, int n)
{
    if (m < 0 || n > kMaxGnLevel) {
        throw std::invalid_argument("G_n is available for 0 <= n <= " + std::to_string(kMaxGnLevel));
    }
    if (m > n) {
        throw std::invalid_argument("truncation G_" + std::to_string(n) + " ->> G_" + std::to_string(m) +
                                    " needs m <= n");
    }
    const int strings = 1 << n;
    std::vector<int> images(static_cast<std::size_t>(strings) + 1);
    for (int sigma = 0; sigma < strings; ++sigma) {
        images[static_cast<std::size_t>(sigma)] = sigma >> (n - m);
    }
    images[static_cast<std::size_t>(strings)] = 1 << m;
    return images;
}

} // namespace cologic
