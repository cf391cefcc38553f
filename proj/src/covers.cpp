#include "cologic/covers.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cologic {

GoodTuple unit_tuple(const ContactAlgebra& algebra)
{
    return {algebra.top()};
}

GoodTuple atom_tuple(const ContactAlgebra& algebra)
{
    GoodTuple out;
    for (int p = 0; p < algebra.atom_count(); ++p) {
        out.push_back(Element::singleton(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Arrangement

Arrangement::Arrangement(std::vector<int> images, int target) : images_(std::move(images)), target_(target)
{
    if (target_ < 1) {
        throw InputError("arrangement target must be at least 1");
    }
    std::vector<bool> hit(static_cast<std::size_t>(target_), false);
    for (int v : images_) {
        if (v < 0 || v >= target_) {
            throw InputError("arrangement value " + std::to_string(v) + " outside [0, " + std::to_string(target_) +
                             ")");
        }
        hit[static_cast<std::size_t>(v)] = true;
    }
    for (int i = 0; i < target_; ++i) {
        if (!hit[static_cast<std::size_t>(i)]) {
            throw InputError("arrangement " + to_string(*this) + " is not surjective: " + std::to_string(i) +
                             " has no preimage");
        }
    }
}

Arrangement Arrangement::from_images(std::vector<int> images)
{
    if (images.empty()) {
        throw InputError("arrangement must have at least one entry");
    }
    const int target = *std::max_element(images.begin(), images.end()) + 1;
    return Arrangement(std::move(images), target);
}

Arrangement Arrangement::identity(int n)
{
    std::vector<int> images(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        images[static_cast<std::size_t>(i)] = i;
    }
    return Arrangement(std::move(images), n);
}

Arrangement Arrangement::constant(int source)
{
    return Arrangement(std::vector<int>(static_cast<std::size_t>(source), 0), 1);
}

bool Arrangement::is_pattern() const
{
    for (std::size_t j = 0; j + 1 < images_.size(); ++j) {
        if (std::abs(images_[j] - images_[j + 1]) > 1) {
            return false;
        }
    }
    return true;
}

bool Arrangement::is_identity() const
{
    return source() == target_ && *this == identity(target_);
}

std::vector<int> Arrangement::fiber(int i) const
{
    std::vector<int> out;
    for (int j = 0; j < source(); ++j) {
        if (images_[static_cast<std::size_t>(j)] == i) {
            out.push_back(j);
        }
    }
    return out;
}

std::vector<int> Arrangement::fiber_sizes() const
{
    std::vector<int> out(static_cast<std::size_t>(target_), 0);
    for (int v : images_) {
        ++out[static_cast<std::size_t>(v)];
    }
    return out;
}

std::string to_string(const Arrangement& f)
{
    std::string out = "[";
    for (int j = 0; j < f.source(); ++j) {
        if (j != 0) {
            out += ',';
        }
        out += std::to_string(f(j));
    }
    return out + "]";
}

Arrangement compose(const Arrangement& f, const Arrangement& g)
{
    if (g.target() != f.source()) {
        throw std::invalid_argument("cannot compose " + to_string(f) + " after " + to_string(g) + ": " +
                                    std::to_string(g.target()) + " != " + std::to_string(f.source()));
    }
    std::vector<int> images(static_cast<std::size_t>(g.source()));
    for (int x = 0; x < g.source(); ++x) {
        images[static_cast<std::size_t>(x)] = f(g(x));
    }
    return Arrangement(std::move(images), f.target());
}

std::vector<Arrangement> enumerate_surjections(int source, int target)
{
    std::vector<Arrangement> out;
    if (target < 1 || source < target) {
        return out;
    }
    std::vector<int> images(static_cast<std::size_t>(source), 0);
    std::vector<int> hits(static_cast<std::size_t>(target), 0);
    hits[0] = source;
    while (true) {
        if (std::all_of(hits.begin(), hits.end(), [](int h) { return h > 0; })) {
            out.emplace_back(images, target);
        }
        // Odometer with the last position least significant.
        int pos = source - 1;
        while (pos >= 0 && images[static_cast<std::size_t>(pos)] == target - 1) {
            --hits[static_cast<std::size_t>(target - 1)];
            ++hits[0];
            images[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) {
            break;
        }
        --hits[static_cast<std::size_t>(images[static_cast<std::size_t>(pos)])];
        ++images[static_cast<std::size_t>(pos)];
        ++hits[static_cast<std::size_t>(images[static_cast<std::size_t>(pos)])];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Good tuples

namespace {

std::string tuple_defect(const ContactAlgebra& algebra, const GoodTuple& tuple)
{
    if (tuple.empty()) {
        return "tuple is empty";
    }
    Element seen;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        const Element e = tuple[i];
        if (!algebra.contains(e)) {
            return "entry " + std::to_string(i) + " " + to_string(e) + " is not an element of the algebra";
        }
        if (e.empty()) {
            return "entry " + std::to_string(i) + " is zero";
        }
        if (seen.meets(e)) {
            return "entry " + std::to_string(i) + " " + to_string(e) + " meets an earlier entry";
        }
        seen |= e;
    }
    if (seen != algebra.top()) {
        return "entries do not cover the atoms " + to_string(algebra.top() - seen);
    }
    return {};
}

void partition_into(const std::vector<int>& atoms, std::size_t next, int k, std::vector<Element>& parts,
                    int empty_parts, std::vector<GoodTuple>& out)
{
    const int remaining = static_cast<int>(atoms.size() - next);
    if (remaining < empty_parts) {
        return;
    }
    if (next == atoms.size()) {
        out.push_back(parts);
        return;
    }
    for (int label = 0; label < k; ++label) {
        auto& part = parts[static_cast<std::size_t>(label)];
        const bool was_empty = part.empty();
        part |= Element::singleton(atoms[next]);
        partition_into(atoms, next + 1, k, parts, empty_parts - (was_empty ? 1 : 0), out);
        part = part - Element::singleton(atoms[next]);
    }
}

} // namespace

bool is_good_tuple(const ContactAlgebra& algebra, const GoodTuple& tuple)
{
    // Minimality (a <= b implies a = b) follows from nonzero entries with
    // pairwise zero meets, so the partition conditions suffice.
    return tuple_defect(algebra, tuple).empty();
}

void require_good_tuple(const ContactAlgebra& algebra, const GoodTuple& tuple)
{
    if (auto defect = tuple_defect(algebra, tuple); !defect.empty()) {
        throw std::invalid_argument("not a good tuple " + to_string(tuple) + ": " + defect);
    }
}

const std::vector<GoodTuple>& ordered_partitions(Element block, int k)
{
    static std::mutex mutex;
    static std::map<std::pair<std::uint64_t, int>, std::vector<GoodTuple>> cache;

    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.try_emplace({block.bits(), k});
    if (inserted && k >= 1 && block.size() >= k) {
        std::vector<Element> parts(static_cast<std::size_t>(k));
        partition_into(block.atoms(), 0, k, parts, k, it->second);
        std::sort(it->second.begin(), it->second.end(),
                  [](const GoodTuple& a, const GoodTuple& b) { return lex_less(a, b); });
    }
    return it->second;
}

std::vector<GoodTuple> enumerate_good_tuples(const ContactAlgebra& algebra, int n)
{
    if (n < 1) {
        throw std::invalid_argument("tuple length must be at least 1");
    }
    return ordered_partitions(algebra.top(), n);
}

FiniteGraph nerve(const ContactAlgebra& algebra, const GoodTuple& tuple)
{
    const int n = static_cast<int>(tuple.size());
    FiniteGraph out(n);
    for (int i = 0; i < n; ++i) {
        const Element r = algebra.reach(tuple[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < n; ++j) {
            if (r.meets(tuple[static_cast<std::size_t>(j)])) {
                out.add_edge(i, j);
            }
        }
    }
    return out;
}

bool is_chain(const ContactAlgebra& algebra, const GoodTuple& tuple)
{
    return is_good_tuple(algebra, tuple) && nerve(algebra, tuple).is_linear();
}

bool follows(const GoodTuple& fine, const Arrangement& f, const GoodTuple& coarse)
{
    if (static_cast<int>(fine.size()) != f.source() || static_cast<int>(coarse.size()) != f.target()) {
        throw std::invalid_argument("arrangement " + to_string(f) + " does not match tuple lengths " +
                                    std::to_string(fine.size()) + " -> " + std::to_string(coarse.size()));
    }
    for (int j = 0; j < f.source(); ++j) {
        if (!fine[static_cast<std::size_t>(j)].subset_of(coarse[static_cast<std::size_t>(f(j))])) {
            return false;
        }
    }
    return true;
}

std::optional<Arrangement> arrangement_of(const GoodTuple& fine, const GoodTuple& coarse)
{
    std::vector<int> images;
    images.reserve(fine.size());
    std::vector<bool> hit(coarse.size(), false);
    for (Element b : fine) {
        auto it = std::find_if(coarse.begin(), coarse.end(), [b](Element a) { return b.subset_of(a); });
        if (it == coarse.end()) {
            return std::nullopt;
        }
        const auto i = static_cast<std::size_t>(it - coarse.begin());
        hit[i] = true;
        images.push_back(static_cast<int>(i));
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
        return std::nullopt;
    }
    return Arrangement(std::move(images), static_cast<int>(coarse.size()));
}

GoodTuple consolidate(const Arrangement& f, const GoodTuple& fine)
{
    if (static_cast<int>(fine.size()) != f.source()) {
        throw std::invalid_argument("consolidation " + to_string(f) + " needs a tuple of length " +
                                    std::to_string(f.source()));
    }
    GoodTuple out(static_cast<std::size_t>(f.target()));
    for (int j = 0; j < f.source(); ++j) {
        out[static_cast<std::size_t>(f(j))] |= fine[static_cast<std::size_t>(j)];
    }
    return out;
}

CommonRefinement common_refinement(const GoodTuple& first, const GoodTuple& second)
{
    GoodTuple meets;
    std::vector<int> to_first;
    std::vector<int> to_second;
    for (std::size_t i = 0; i < first.size(); ++i) {
        for (std::size_t j = 0; j < second.size(); ++j) {
            const Element c = first[i] & second[j];
            if (!c.empty()) {
                meets.push_back(c);
                to_first.push_back(static_cast<int>(i));
                to_second.push_back(static_cast<int>(j));
            }
        }
    }
    return {std::move(meets), Arrangement(std::move(to_first), static_cast<int>(first.size())),
            Arrangement(std::move(to_second), static_cast<int>(second.size()))};
}

bool for_each_refinement(const GoodTuple& coarse, const Arrangement& f,
                         const std::function<bool(const GoodTuple&)>& visit)
{
    if (static_cast<int>(coarse.size()) != f.target()) {
        throw std::invalid_argument("arrangement " + to_string(f) + " targets " + std::to_string(f.target()) +
                                    " entries but the tuple has " + std::to_string(coarse.size()));
    }
    const int n = f.target();
    std::vector<std::vector<int>> fibers(static_cast<std::size_t>(n));
    for (int j = 0; j < f.source(); ++j) {
        fibers[static_cast<std::size_t>(f(j))].push_back(j);
    }
    std::vector<const std::vector<GoodTuple>*> choices(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        choices[static_cast<std::size_t>(i)] =
            &ordered_partitions(coarse[static_cast<std::size_t>(i)], static_cast<int>(fibers[i].size()));
        if (choices[static_cast<std::size_t>(i)]->empty()) {
            return true;
        }
    }

    GoodTuple current(static_cast<std::size_t>(f.source()));
    std::vector<std::size_t> at(static_cast<std::size_t>(n), 0);
    auto place = [&](int i) {
        const auto& parts = (*choices[static_cast<std::size_t>(i)])[at[static_cast<std::size_t>(i)]];
        const auto& fib = fibers[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < fib.size(); ++k) {
            current[static_cast<std::size_t>(fib[k])] = parts[k];
        }
    };
    for (int i = 0; i < n; ++i) {
        place(i);
    }
    while (true) {
        if (!visit(current)) {
            return false;
        }
        int i = n - 1;
        while (i >= 0 && at[static_cast<std::size_t>(i)] + 1 == choices[static_cast<std::size_t>(i)]->size()) {
            at[static_cast<std::size_t>(i)] = 0;
            place(i);
            --i;
        }
        if (i < 0) {
            return true;
        }
        ++at[static_cast<std::size_t>(i)];
        place(i);
    }
}

std::vector<GoodTuple> refinements_following(const GoodTuple& coarse, const Arrangement& f)
{
    std::vector<GoodTuple> out;
    for_each_refinement(coarse, f, [&](const GoodTuple& b) {
        out.push_back(b);
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Covering walks

std::string covering_walk_defect(const FiniteGraph& graph, const Walk& walk)
{
    const int n = graph.vertex_count();
    for (std::size_t k = 0; k < walk.size(); ++k) {
        if (walk[k] < 0 || walk[k] >= n) {
            return "position " + std::to_string(k) + " names vertex " + std::to_string(walk[k]) +
                   " outside the graph";
        }
        if (k > 0 && !graph.adjacent(walk[k - 1], walk[k])) {
            return "step " + std::to_string(walk[k - 1]) + "-" + std::to_string(walk[k]) + " is not an edge";
        }
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : walk) {
        seen[static_cast<std::size_t>(v)] = true;
    }
    for (int v = 0; v < n; ++v) {
        if (!seen[static_cast<std::size_t>(v)]) {
            return "vertex " + std::to_string(v) + " unvisited";
        }
    }
    for (auto [u, v] : graph.edges()) {
        bool covered = false;
        for (std::size_t k = 1; k < walk.size() && !covered; ++k) {
            covered = (walk[k - 1] == u && walk[k] == v) || (walk[k - 1] == v && walk[k] == u);
        }
        if (!covered) {
            return "edge " + std::to_string(u) + "-" + std::to_string(v) + " untraversed";
        }
    }
    return {};
}

Arrangement walk_induced_surjection(const FiniteGraph& graph, const Walk& walk)
{
    if (auto defect = covering_walk_defect(graph, walk); !defect.empty()) {
        throw InputError("not a covering walk: " + defect);
    }
    return Arrangement(walk, graph.vertex_count());
}

namespace {

struct WalkSearch {
    const FiniteGraph& graph;
    std::vector<std::vector<int>> edge_id; // edge_id[u][v], -1 when no non-loop edge
    std::uint64_t all_vertices = 0;
    std::uint64_t all_edges = 0;
    int length = 0;
    Walk walk;
    const std::function<void(const Walk&)>& visit;

    void extend(std::uint64_t vertices, std::uint64_t edges)
    {
        const int remaining = length - static_cast<int>(walk.size());
        const int missing_v = std::popcount(all_vertices & ~vertices);
        const int missing_e = std::popcount(all_edges & ~edges);
        if (remaining < std::max(missing_v, missing_e)) {
            return;
        }
        if (remaining == 0) {
            visit(walk);
            return;
        }
        const int here = walk.back();
        for (int next = 0; next < graph.vertex_count(); ++next) {
            if (!graph.adjacent(here, next)) {
                continue;
            }
            const int id = edge_id[static_cast<std::size_t>(here)][static_cast<std::size_t>(next)];
            walk.push_back(next);
            extend(vertices | (std::uint64_t{1} << next), id < 0 ? edges : edges | (std::uint64_t{1} << id));
            walk.pop_back();
        }
    }
};

} // namespace

void for_each_covering_walk(const FiniteGraph& graph, int max_length, const std::function<void(const Walk&)>& visit)
{
    const int n = graph.vertex_count();
    const auto edges = graph.edges();
    if (edges.size() > 64) {
        throw InputError("covering-walk enumeration supports at most 64 edges");
    }
    WalkSearch search{graph, {}, Element::full(n).bits(), 0, 0, {}, visit};
    search.edge_id.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto [u, v] = edges[k];
        search.edge_id[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = static_cast<int>(k);
        search.edge_id[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = static_cast<int>(k);
    }
    search.all_edges = edges.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << edges.size()) - 1;
    for (int length = 1; length <= max_length; ++length) {
        search.length = length;
        for (int start = 0; start < n; ++start) {
            search.walk.assign(1, start);
            search.extend(std::uint64_t{1} << start, 0);
        }
    }
}

std::vector<Walk> enumerate_covering_walks(const FiniteGraph& graph, int max_length)
{
    std::vector<Walk> out;
    for_each_covering_walk(graph, max_length, [&](const Walk& w) { out.push_back(w); });
    return out;
}

} // namespace cologic
