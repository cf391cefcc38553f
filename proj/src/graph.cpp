#include "cologic/graph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace cologic {

namespace {

void check_vertex_count(int n)
{
    if (n < 0 || n > kMaxAtoms) {
        throw InputError("vertex count " + std::to_string(n) + " outside [0, " + std::to_string(kMaxAtoms) + "]");
    }
}

std::vector<Edge> all_pairs(int n)
{
    std::vector<Edge> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

} // namespace

FiniteGraph::FiniteGraph(int vertex_count) : vertex_count_(vertex_count)
{
    check_vertex_count(vertex_count);
    rows_.resize(static_cast<std::size_t>(vertex_count));
    for (int v = 0; v < vertex_count; ++v) {
        rows_[static_cast<std::size_t>(v)] = std::uint64_t{1} << v;
    }
}

FiniteGraph FiniteGraph::from_edges(int vertex_count, std::span<const Edge> edges)
{
    FiniteGraph g(vertex_count);
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
            throw InputError("edge " + std::to_string(u) + "-" + std::to_string(v) + " out of range for " +
                             std::to_string(vertex_count) + " vertices");
        }
        if (u == v) {
            throw InputError("loop " + std::to_string(u) + "-" + std::to_string(v) +
                             " is implicit and must not be listed");
        }
        if (g.adjacent(u, v)) {
            throw InputError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
        }
        g.add_edge(u, v);
    }
    return g;
}

FiniteGraph FiniteGraph::linear(int vertex_count)
{
    FiniteGraph g(vertex_count);
    for (int i = 0; i + 1 < vertex_count; ++i) {
        g.add_edge(i, i + 1);
    }
    return g;
}

FiniteGraph FiniteGraph::discrete(int vertex_count)
{
    return FiniteGraph(vertex_count);
}

FiniteGraph FiniteGraph::complete(int vertex_count)
{
    FiniteGraph g(vertex_count);
    for (auto [u, v] : all_pairs(vertex_count)) {
        g.add_edge(u, v);
    }
    return g;
}

void FiniteGraph::add_edge(int u, int v)
{
    rows_[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    rows_[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
}

std::vector<Edge> FiniteGraph::edges() const
{
    std::vector<Edge> out;
    for (int i = 0; i < vertex_count_; ++i) {
        for (int j = i + 1; j < vertex_count_; ++j) {
            if (adjacent(i, j)) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

int FiniteGraph::edge_count() const
{
    int twice = 0;
    for (auto row : rows_) {
        twice += std::popcount(row) - 1;
    }
    return twice / 2;
}

bool FiniteGraph::is_connected() const
{
    if (vertex_count_ == 0) {
        return true;
    }
    std::uint64_t seen = 1;
    std::uint64_t frontier = 1;
    while (frontier != 0) {
        std::uint64_t next = 0;
        for (std::uint64_t rest = frontier; rest != 0; rest &= rest - 1) {
            next |= rows_[static_cast<std::size_t>(std::countr_zero(rest))];
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == Element::full(vertex_count_).bits();
}

bool FiniteGraph::is_linear() const
{
    return *this == linear(vertex_count_);
}

bool FiniteGraph::is_equivalence() const
{
    for (int u = 0; u < vertex_count_; ++u) {
        for (std::uint64_t rest = rows_[static_cast<std::size_t>(u)]; rest != 0; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            if ((rows_[static_cast<std::size_t>(v)] & ~rows_[static_cast<std::size_t>(u)]) != 0) {
                return false;
            }
        }
    }
    return true;
}

std::string to_string(const FiniteGraph& g)
{
    std::string out = "graph{" + std::to_string(g.vertex_count()) + ";";
    bool first = true;
    for (auto [u, v] : g.edges()) {
        out += first ? " " : ",";
        out += std::to_string(u) + "-" + std::to_string(v);
        first = false;
    }
    out += "}";
    return out;
}

FiniteGraph permuted(const FiniteGraph& g, std::span<const int> perm)
{
    FiniteGraph out(g.vertex_count());
    for (auto [u, v] : g.edges()) {
        out.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
    }
    return out;
}

namespace {

void extend_isomorphism(const FiniteGraph& a, const FiniteGraph& b, std::vector<int>& perm, std::uint64_t used,
                        std::vector<std::vector<int>>& out, std::size_t limit)
{
    const int v = static_cast<int>(perm.size());
    if (v == a.vertex_count()) {
        out.push_back(perm);
        return;
    }
    for (int image = 0; image < b.vertex_count() && out.size() < limit; ++image) {
        if ((used >> image) & 1u) {
            continue;
        }
        bool ok = true;
        for (int u = 0; u < v && ok; ++u) {
            ok = a.adjacent(u, v) == b.adjacent(perm[static_cast<std::size_t>(u)], image);
        }
        if (!ok) {
            continue;
        }
        perm.push_back(image);
        extend_isomorphism(a, b, perm, used | (std::uint64_t{1} << image), out, limit);
        perm.pop_back();
    }
}

} // namespace

std::vector<std::vector<int>> isomorphisms(const FiniteGraph& a, const FiniteGraph& b, std::size_t limit)
{
    std::vector<std::vector<int>> out;
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) {
        return out;
    }
    std::vector<int> perm;
    perm.reserve(static_cast<std::size_t>(a.vertex_count()));
    extend_isomorphism(a, b, perm, 0, out, limit);
    return out;
}

bool isomorphic(const FiniteGraph& a, const FiniteGraph& b)
{
    return !isomorphisms(a, b, 1).empty();
}

std::vector<FiniteGraph> all_graphs(int vertex_count)
{
    check_vertex_count(vertex_count);
    const auto pairs = all_pairs(vertex_count);
    if (pairs.size() > 24) {
        throw InputError("refusing to enumerate all graphs on " + std::to_string(vertex_count) + " vertices");
    }
    std::vector<std::vector<Edge>> edge_sets;
    edge_sets.reserve(std::size_t{1} << pairs.size());
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << pairs.size()); ++mask) {
        std::vector<Edge> es;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if ((mask >> k) & 1u) {
                es.push_back(pairs[k]);
            }
        }
        edge_sets.push_back(std::move(es));
    }
    std::sort(edge_sets.begin(), edge_sets.end());
    std::vector<FiniteGraph> out;
    out.reserve(edge_sets.size());
    for (const auto& es : edge_sets) {
        out.push_back(FiniteGraph::from_edges(vertex_count, es));
    }
    return out;
}

std::vector<FiniteGraph> graphs_up_to_isomorphism(int vertex_count)
{
    const auto pairs = all_pairs(vertex_count);
    std::vector<int> perm(static_cast<std::size_t>(vertex_count));
    std::vector<std::vector<int>> perms;
    std::iota(perm.begin(), perm.end(), 0);
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Pair index lookup for relabelled edges.
    std::vector<int> pair_index(static_cast<std::size_t>(vertex_count * vertex_count), -1);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto [u, v] = pairs[k];
        pair_index[static_cast<std::size_t>(u * vertex_count + v)] = static_cast<int>(k);
        pair_index[static_cast<std::size_t>(v * vertex_count + u)] = static_cast<int>(k);
    }
    auto code_of = [&](const FiniteGraph& g) {
        std::uint32_t best = UINT32_MAX;
        const auto es = g.edges();
        for (const auto& p : perms) {
            std::uint32_t code = 0;
            for (auto [u, v] : es) {
                code |= std::uint32_t{1}
                        << pair_index[static_cast<std::size_t>(p[static_cast<std::size_t>(u)] * vertex_count +
                                                                p[static_cast<std::size_t>(v)])];
            }
            best = std::min(best, code);
        }
        return best;
    };

    std::vector<FiniteGraph> out;
    std::unordered_set<std::uint32_t> seen;
    for (auto& g : all_graphs(vertex_count)) {
        if (seen.insert(code_of(g)).second) {
            out.push_back(std::move(g));
        }
    }
    return out;
}

} // namespace cologic
