#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cologic/algebra.hpp"
#include "cologic/covers.hpp"
#include "cologic/graph.hpp"

namespace cologic {

/// Surjective, edge-preserving, and every edge of h lifts to an adjacent
/// pair of g. Throws std::invalid_argument when f does not have one image
/// per vertex of g or an image lies outside h.
bool is_is_epi(std::span<const int> f, const FiniteGraph& g, const FiniteGraph& h);

/// f: m -> n is a surjective pattern. Throws std::invalid_argument when
/// f.size() != m.
bool is_pattern_epi(std::span<const int> f, int m, int n);

/// Every pattern m ->> n in lexicographic order. Requires 1 <= n <= m.
std::vector<Arrangement> enumerate_patterns(int m, int n);

struct LinearSpan {
    int size = 0;
    Arrangement first;
    Arrangement second;
};

/// Least N with patterns N ->> n0 and N ->> n1; among candidates the
/// stretch-then-hold pair min(i, n-1) is preferred, otherwise the
/// lexicographically least pair.
LinearSpan common_refinement_linear(int n0, int n1);

/// Patterns u: N ->> f.source(), v: N ->> g.source() with f∘u = g∘v, N
/// minimal up to bound and the walk (u(k), v(k)) lexicographically least.
/// Throws std::invalid_argument unless f and g are patterns with a common target.
std::optional<LinearSpan> amalgamate(const Arrangement& f, const Arrangement& g, int bound);

/// Lexicographically least pattern g with f∘g = pi, if any. Requires
/// pi.target() == f.target().
std::optional<Arrangement> factor_through(const Arrangement& pi, const Arrangement& f);

class FraisseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Obligation: a pattern f onto stage `stage` that must factor some later
/// bonding composite.
struct Obligation {
    int stage = 0;
    Arrangement map;
    /// Stage t with composite(t, stage) = map ∘ witness, if discharged.
    std::optional<int> discharged_at;
    std::optional<Arrangement> witness;
};

struct FraisseSequence {
    /// Sizes n_k of the linear stages L_{n_k}.
    std::vector<int> stages;
    /// bonding[k]: stage k+1 ->> stage k.
    std::vector<Arrangement> bonding;
    /// composites[t][s] = bonding[s] ∘ ... ∘ bonding[t-1] for s <= t.
    std::vector<std::vector<Arrangement>> composites;
    std::vector<Obligation> ledger;
    int bound = 0;

    int stage_count() const { return static_cast<int>(stages.size()); }
    const Arrangement& composite(int t, int s) const;
};

inline constexpr int kDefaultAmalgamationBound = 256;

/// Builds k stages starting from L_1, discharging every obligation of size
/// at most s against earlier stages in order (stage, source size, map).
/// The final stage has no later stage, so it schedules no obligations.
/// Throws FraisseError naming the obligation when an amalgam exceeds
/// amalgamation_bound.
FraisseSequence build_fraisse_sequence(int stage_count, int bound,
                                       int amalgamation_bound = kDefaultAmalgamationBound);

/// Checks bonding patterns and the composite cache; empty string when consistent.
std::string sequence_defect(const FraisseSequence& seq);

struct AuditEntry {
    Arrangement map;
    std::optional<int> discharged_at;
    std::optional<Arrangement> witness;
};

struct AuditReport {
    int stage = 0;
    int bound = 0;
    std::vector<AuditEntry> entries;

    std::size_t undischarged() const;
};

/// For each pattern f onto stage `stage` with source at most bound, the
/// least stage t >= stage and pattern g with composite(t, stage) = f∘g.
AuditReport extension_property_audit(const FraisseSequence& seq, int stage, int bound);

struct ChainRefinement {
    GoodTuple chain;
    Arrangement arrangement;
};

/// Chain refining ā in the contact algebra of a linear graph: ā itself when
/// it is a chain of intervals, otherwise the chain of singleton atoms.
/// Throws std::invalid_argument when the contact graph is not linear.
ChainRefinement chain_refinement(const ContactAlgebra& algebra, const GoodTuple& tuple);

/// Lexicographically least chain following pattern f in the chain ā.
std::optional<GoodTuple> chain_following_pattern(const ContactAlgebra& algebra, const GoodTuple& chain,
                                                 const Arrangement& f);

/// 2^n binary strings in lexicographic order followed by *, with one
/// non-loop edge between 1^n and *. Vertex of a string is its value read
/// as a binary number; * is vertex 2^n.
FiniteGraph example_gn(int n);

/// Truncation G_n ->> G_m keeping the first m symbols, * to *. Throws
/// std::invalid_argument when m > n.
std::vector<int> example_gn_epi(int m, int n);

/// G_n has 2^n + 1 vertices, which must fit the 64-vertex graph limit.
inline constexpr int kMaxGnLevel = 5;

} // namespace cologic
