#include "cologic/satisfaction.hpp"

#include <algorithm>
#include <stdexcept>

namespace cologic {

Evaluator::Evaluator(ContactAlgebra algebra) : algebra_(std::move(algebra)) {}

std::size_t Evaluator::KeyHash::operator()(const std::vector<std::uint64_t>& key) const noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint64_t v : key) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

bool Evaluator::satisfies(const GoodTuple& tuple, const Formula& phi)
{
    if (static_cast<int>(tuple.size()) != phi.context()) {
        throw InputError("context mismatch: tuple of length " + std::to_string(tuple.size()) +
                         " against a formula in context " + std::to_string(phi.context()));
    }
    require_good_tuple(algebra_, tuple);
    pinned_.try_emplace(phi.identity(), phi);
    return eval(tuple, phi);
}

bool Evaluator::eval(const GoodTuple& tuple, const Formula& phi)
{
    switch (phi.kind()) {
    case FormulaKind::bottom:
        return false;
    case FormulaKind::graph:
        return nerve(algebra_, tuple) == phi.graph();
    case FormulaKind::negation:
        return !eval(tuple, phi.child());
    case FormulaKind::disjunction:
        return eval(tuple, phi.left()) || eval(tuple, phi.right());
    case FormulaKind::exists:
        break;
    }

    const Arrangement& f = phi.arrangement();
    if (f.source() > algebra_.atom_count()) {
        return false;
    }
    std::vector<std::uint64_t> key;
    key.reserve(tuple.size() + 1);
    key.push_back(reinterpret_cast<std::uintptr_t>(phi.identity()));
    for (Element e : tuple) {
        key.push_back(e.bits());
    }
    if (auto it = memo_.find(key); it != memo_.end()) {
        return it->second;
    }
    const Formula& body = phi.child();
    bool found = false;
    for_each_refinement(tuple, f, [&](const GoodTuple& b) {
        found = eval(b, body);
        return !found;
    });
    memo_.emplace(std::move(key), found);
    return found;
}

bool satisfies(const ContactAlgebra& algebra, const GoodTuple& tuple, const Formula& phi)
{
    Evaluator ev(algebra);
    return ev.satisfies(tuple, phi);
}

bool check_sentence(const ContactAlgebra& algebra, const Formula& phi)
{
    if (phi.context() != 1) {
        throw InputError("a sentence must have context 1, got " + std::to_string(phi.context()));
    }
    return satisfies(algebra, unit_tuple(algebra), phi);
}

std::optional<FiniteGraph> find_model(const Formula& phi, int max_vertices)
{
    if (phi.context() != 1) {
        throw InputError("model search needs a sentence (context 1), got context " + std::to_string(phi.context()));
    }
    if (max_vertices < 1 || max_vertices > kMaxModelSearchVertices) {
        throw InputError("model search bound must lie in [1, " + std::to_string(kMaxModelSearchVertices) +
                         "], got " + std::to_string(max_vertices));
    }
    for (int n = 1; n <= max_vertices; ++n) {
        for (FiniteGraph& g : all_graphs(n)) {
            if (check_sentence(contact_from_graph(g), phi)) {
                return std::move(g);
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Subalgebras

namespace {

std::vector<Element> validated_blocks(const ContactAlgebra& ambient, std::vector<Element> blocks)
{
    if (blocks.empty()) {
        throw InputError("subalgebra blocks must not be empty");
    }
    Element seen;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Element b = blocks[i];
        if (b.empty()) {
            throw InputError("subalgebra block " + std::to_string(i) + " is empty");
        }
        if (!ambient.contains(b)) {
            throw InputError("subalgebra block " + to_string(b) + " names atoms outside the algebra");
        }
        if (seen.meets(b)) {
            throw InputError("subalgebra blocks are not a partition: " + to_string(b) + " overlaps an earlier block");
        }
        seen |= b;
    }
    if (seen != ambient.top()) {
        throw InputError("subalgebra blocks are not a partition: atoms " + to_string(ambient.top() - seen) +
                         " are not covered");
    }
    return blocks;
}

ContactAlgebra quotient_of(const ContactAlgebra& ambient, const std::vector<Element>& blocks)
{
    const int k = static_cast<int>(blocks.size());
    FiniteGraph g(k);
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            if (ambient.delta(blocks[static_cast<std::size_t>(i)], blocks[static_cast<std::size_t>(j)])) {
                g.add_edge(i, j);
            }
        }
    }
    return contact_from_graph(std::move(g));
}

} // namespace

Subalgebra::Subalgebra(const ContactAlgebra& ambient, std::vector<Element> blocks)
    : ambient_(ambient), blocks_(validated_blocks(ambient, std::move(blocks))), quotient_(quotient_of(ambient_, blocks_))
{
}

Element Subalgebra::embed(Element e) const
{
    Element out;
    for (int i : e.atoms()) {
        out |= blocks_[static_cast<std::size_t>(i)];
    }
    return out;
}

GoodTuple Subalgebra::embed(const GoodTuple& tuple) const
{
    GoodTuple out;
    out.reserve(tuple.size());
    for (Element e : tuple) {
        out.push_back(embed(e));
    }
    return out;
}

std::optional<Element> Subalgebra::restrict(Element e) const
{
    Element out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].subset_of(e)) {
            out |= Element::singleton(static_cast<int>(i));
        } else if (blocks_[i].meets(e)) {
            return std::nullopt;
        }
    }
    if (!e.subset_of(ambient_.top())) {
        return std::nullopt;
    }
    return out;
}

std::optional<GoodTuple> Subalgebra::restrict(const GoodTuple& tuple) const
{
    GoodTuple out;
    out.reserve(tuple.size());
    for (Element e : tuple) {
        auto r = restrict(e);
        if (!r) {
            return std::nullopt;
        }
        out.push_back(*r);
    }
    return out;
}

SubstructureReport generated_substructure_check(const ContactAlgebra& ambient, const std::vector<Element>& blocks,
                                                int bound)
{
    if (bound < 1) {
        throw InputError("refinement bound must be at least 1");
    }
    const Subalgebra sub(ambient, blocks);
    const ContactAlgebra& quotient = sub.quotient();
    SubstructureReport report;
    report.bound = bound;

    const int max_length = std::min(quotient.atom_count(), bound);
    for (int n = 1; n <= max_length; ++n) {
        for (const GoodTuple& small : enumerate_good_tuples(quotient, n)) {
            const GoodTuple big = sub.embed(small);
            for (int m = n; m <= std::min(bound, ambient.atom_count()); ++m) {
                for (const Arrangement& f : enumerate_surjections(m, n)) {
                    std::vector<FiniteGraph> inside;
                    for_each_refinement(small, f, [&](const GoodTuple& c) {
                        inside.push_back(nerve(quotient, c));
                        return true;
                    });
                    for_each_refinement(big, f, [&](const GoodTuple& b) {
                        ++report.obligations_checked;
                        const FiniteGraph g = nerve(ambient, b);
                        if (std::find(inside.begin(), inside.end(), g) == inside.end()) {
                            ++report.violation_count;
                            if (report.violations.size() < kMaxReportedSubstructureViolations) {
                                report.violations.push_back({big, f, b});
                            }
                        }
                        return true;
                    });
                }
            }
        }
    }
    return report;
}

} // namespace cologic
