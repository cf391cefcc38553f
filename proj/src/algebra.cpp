#include "cologic/algebra.hpp"

#include <algorithm>
#include <cstdlib>

#include "cologic/kernels.hpp"

namespace cologic {

int max_atoms_guard()
{
    const char* env = std::getenv("COLOGIC_MAX_ATOMS");
    if (env == nullptr || *env == '\0') {
        return kDefaultMaxAtoms;
    }
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0') {
        return kDefaultMaxAtoms;
    }
    return static_cast<int>(std::clamp<long>(value, 1, kMaxAtoms));
}

Element ContactAlgebra::reach(Element a) const
{
    std::uint64_t out = 0;
    const auto rows = contact_.rows();
    for (std::uint64_t rest = a.bits(); rest != 0; rest &= rest - 1) {
        out |= rows[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    return Element(out);
}

ContactAlgebra contact_from_graph(FiniteGraph g)
{
    if (g.vertex_count() == 0) {
        throw InputError("empty pre-space");
    }
    return ContactAlgebra(std::move(g));
}

bool delta(const ContactAlgebra& algebra, Element a, Element b)
{
    return algebra.delta(a, b);
}

FiniteGraph stone_prespace(const ContactAlgebra& algebra)
{
    // In a finite power set every ultrafilter is principal, generated by an
    // atom p. Every member of U_p contains p and {p} is the least member,
    // so by monotonicity of contact "all members of U_p touch all members
    // of U_q" reduces to {p} δ {q}.
    const int n = algebra.atom_count();
    FiniteGraph out(n);
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            if (algebra.delta(Element::singleton(p), Element::singleton(q))) {
                out.add_edge(p, q);
            }
        }
    }
    return out;
}

namespace {

struct ContactTable {
    std::size_t count = 0;
    std::size_t stride = 0;
    std::vector<std::uint8_t> cells;

    std::span<const std::uint8_t> row(std::size_t x) const { return {cells.data() + x * stride, stride}; }
    std::span<std::uint8_t> row(std::size_t x) { return {cells.data() + x * stride, stride}; }
    bool at(std::size_t x, std::size_t y) const { return cells[x * stride + y] != 0; }
};

void check_guard(int atom_count)
{
    const int guard = std::min(max_atoms_guard(), kAxiomCheckHardLimit);
    if (atom_count < 1) {
        throw InputError("empty pre-space");
    }
    if (atom_count > guard) {
        throw InputError("exhaustive axiom check over " + std::to_string(atom_count) +
                         " atoms exceeds the size guard of " + std::to_string(guard) +
                         " (4^n element pairs, 8^n triples); raise COLOGIC_MAX_ATOMS up to " +
                         std::to_string(kAxiomCheckHardLimit) + " to force it");
    }
}

ContactTable allocate_table(int atom_count)
{
    ContactTable t;
    t.count = std::size_t{1} << atom_count;
    t.stride = t.count + kernels::kRowPadding;
    t.cells.assign(t.count * t.stride, 0);
    return t;
}

void note(AxiomReport& report, const char* axiom, std::vector<Element> witnesses)
{
    ++report.violation_count;
    if (report.violations.size() < kMaxReportedViolations) {
        report.violations.push_back({axiom, std::move(witnesses)});
    }
}

AxiomReport check_table(int atom_count, const ContactTable& t)
{
    const auto& k = kernels::active();
    AxiomReport report;
    report.atom_count = atom_count;
    const std::size_t count = t.count;

    for (std::size_t a = 0; a < count; ++a) {
        if (t.at(0, a)) {
            note(report, "0 not in contact with a", {Element{}, Element(a)});
        }
        if (t.at(a, 0)) {
            note(report, "a not in contact with 0", {Element(a), Element{}});
        }
        if (a != 0 && !t.at(a, a)) {
            note(report, "a in contact with a for a != 0", {Element(a)});
        }
    }
    report.instances_checked += 3 * count - 1;

    for (std::size_t x = 0; x < count; ++x) {
        for (std::size_t y = x + 1; y < count; ++y) {
            if (t.at(x, y) != t.at(y, x)) {
                note(report, "symmetry", {Element(x), Element(y)});
            }
        }
    }
    report.instances_checked += count * (count - 1) / 2;

    for (std::size_t x = 0; x < count; ++x) {
        const auto row = t.row(x);
        for (std::size_t y = 0; y < count; ++y) {
            const std::uint64_t bad = k.count_join_violations(row, count, static_cast<std::uint32_t>(y));
            if (bad == 0) {
                continue;
            }
            // Rare path: recover the individual witnesses for the report.
            for (std::size_t z = 0; z < count; ++z) {
                if (row[y | z] != (row[y] | row[z])) {
                    note(report, "x δ (y ∨ z) iff x δ y or x δ z", {Element(x), Element(y), Element(z)});
                }
            }
        }
    }
    report.instances_checked += static_cast<std::uint64_t>(count) * count * count;
    return report;
}

} // namespace

AxiomReport verify_contact_axioms(const ContactAlgebra& algebra)
{
    const int n = algebra.atom_count();
    check_guard(n);
    const auto& k = kernels::active();
    ContactTable t = allocate_table(n);
    std::vector<std::uint64_t> reach(t.count);
    k.expand_reach(algebra.atom_contact().rows(), reach);
    for (std::size_t x = 0; x < t.count; ++x) {
        k.contact_row(reach[x], t.row(x), t.count);
    }
    return check_table(n, t);
}

AxiomReport verify_contact_axioms(int atom_count, const ContactRelation& relation)
{
    check_guard(atom_count);
    ContactTable t = allocate_table(atom_count);
    for (std::size_t x = 0; x < t.count; ++x) {
        auto row = t.row(x);
        for (std::size_t y = 0; y < t.count; ++y) {
            row[y] = relation(Element(x), Element(y)) ? 1 : 0;
        }
    }
    return check_table(atom_count, t);
}

} // namespace cologic
