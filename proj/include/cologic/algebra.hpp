#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cologic/element.hpp"
#include "cologic/graph.hpp"

namespace cologic {

/// Default size guard for exhaustive operations; COLOGIC_MAX_ATOMS overrides it.
inline constexpr int kDefaultMaxAtoms = 12;

/// Current global size guard (env override applied, clamped to [1, 64]).
int max_atoms_guard();

/// Finite atomic contact algebra: the power set of an atom set with contact
/// between two elements whenever some of their atoms are adjacent.
class ContactAlgebra {
public:
    int atom_count() const { return contact_.vertex_count(); }
    const FiniteGraph& atom_contact() const { return contact_; }

    Element bottom() const { return Element{}; }
    Element top() const { return Element::full(atom_count()); }
    bool contains(Element e) const { return e.subset_of(top()); }

    /// Every atom adjacent to some atom of a.
    Element reach(Element a) const;
    bool delta(Element a, Element b) const { return reach(a).meets(b); }

    friend bool operator==(const ContactAlgebra&, const ContactAlgebra&) = default;

private:
    friend ContactAlgebra contact_from_graph(FiniteGraph g);
    explicit ContactAlgebra(FiniteGraph g) : contact_(std::move(g)) {}

    FiniteGraph contact_;
};

/// The contact algebra of clopen sets of a finite pre-space. Throws
/// InputError("empty pre-space") for a graph without vertices.
ContactAlgebra contact_from_graph(FiniteGraph g);

bool delta(const ContactAlgebra& algebra, Element a, Element b);

/// Dual pre-space: one vertex per (principal) ultrafilter, ordered by its
/// generating atom; two ultrafilters are related when every member of one
/// is in contact with every member of the other.
FiniteGraph stone_prespace(const ContactAlgebra& algebra);

struct AxiomViolation {
    std::string axiom;
    std::vector<Element> witnesses;
};

struct AxiomReport {
    int atom_count = 0;
    std::uint64_t instances_checked = 0;
    std::uint64_t violation_count = 0;
    /// First few violations in enumeration order (at most kMaxReportedViolations).
    std::vector<AxiomViolation> violations;

    bool ok() const { return violation_count == 0; }
};

inline constexpr std::size_t kMaxReportedViolations = 16;

/// Largest atom count accepted by verify_contact_axioms (the contact table
/// has 4^n entries).
inline constexpr int kAxiomCheckHardLimit = 13;

using ContactRelation = std::function<bool(Element, Element)>;

/// Exhaustively checks 0 !δ a, a δ 0 false, a δ a for a != 0, symmetry and
/// x δ (y ∨ z) <=> x δ y or x δ z over every element pair/triple. Throws
/// InputError when the atom count exceeds the size guard.
AxiomReport verify_contact_axioms(const ContactAlgebra& algebra);

/// Same check for an arbitrary relation on the power set of atom_count
/// atoms; lets tests inject broken relations.
AxiomReport verify_contact_axioms(int atom_count, const ContactRelation& relation);

} // namespace cologic
