#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cologic/algebra.hpp"
#include "cologic/covers.hpp"
#include "cologic/formula.hpp"

namespace cologic {

/// Memoizing satisfaction checker for one contact algebra. Results are
/// cached per (formula node, tuple); formulas passed in are kept alive for
/// the lifetime of the evaluator so node addresses stay valid keys.
class Evaluator {
public:
    explicit Evaluator(ContactAlgebra algebra);

    const ContactAlgebra& algebra() const { return algebra_; }

    /// Throws InputError on a context mismatch and std::invalid_argument
    /// when tuple is not good.
    bool satisfies(const GoodTuple& tuple, const Formula& phi);

    std::size_t cache_size() const { return memo_.size(); }

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept;
    };

    bool eval(const GoodTuple& tuple, const Formula& phi);

    ContactAlgebra algebra_;
    std::unordered_map<const void*, Formula> pinned_;
    std::unordered_map<std::vector<std::uint64_t>, bool, KeyHash> memo_;
};

bool satisfies(const ContactAlgebra& algebra, const GoodTuple& tuple, const Formula& phi);

/// Satisfaction at the unit tuple; throws InputError unless phi has context 1.
bool check_sentence(const ContactAlgebra& algebra, const Formula& phi);

inline constexpr int kMaxModelSearchVertices = 7;

/// Least graph (by vertex count, then all_graphs order) whose contact
/// algebra satisfies phi. Throws InputError for a non-sentence or a bound
/// outside [1, kMaxModelSearchVertices].
std::optional<FiniteGraph> find_model(const Formula& phi, int max_vertices);

/// Subalgebra of B generated by a partition of its atoms: its elements are
/// the unions of blocks, with contact restricted from B. Internally it is a
/// contact algebra whose atom i stands for blocks[i].
class Subalgebra {
public:
    /// Throws InputError unless blocks partition B's atoms into nonempty parts.
    Subalgebra(const ContactAlgebra& ambient, std::vector<Element> blocks);

    const ContactAlgebra& ambient() const { return ambient_; }
    const ContactAlgebra& quotient() const { return quotient_; }
    const std::vector<Element>& blocks() const { return blocks_; }

    /// Element of the quotient to the corresponding union of blocks in B.
    Element embed(Element e) const;
    GoodTuple embed(const GoodTuple& tuple) const;
    /// Inverse of embed on unions of blocks; nullopt otherwise.
    std::optional<Element> restrict(Element e) const;
    std::optional<GoodTuple> restrict(const GoodTuple& tuple) const;

private:
    ContactAlgebra ambient_;
    std::vector<Element> blocks_;
    ContactAlgebra quotient_;
};

struct SubstructureViolation {
    /// Tuple of the subalgebra, written as elements of B.
    GoodTuple tuple;
    Arrangement arrangement;
    /// Refinement in B without a same-nerve counterpart in the subalgebra.
    GoodTuple refinement;
};

struct SubstructureReport {
    int bound = 0;
    std::uint64_t obligations_checked = 0;
    std::uint64_t violation_count = 0;
    /// First violations in enumeration order (tuple length, tuple, arrangement, refinement).
    std::vector<SubstructureViolation> violations;

    bool ok() const { return violation_count == 0; }
};

inline constexpr std::size_t kMaxReportedSubstructureViolations = 32;

/// Checks, for every good tuple ā of the subalgebra and every arrangement
/// f with source at most bound, that each refinement of ā in B following f
/// has a refinement of ā inside the subalgebra following f with the same
/// nerve. Throws InputError when blocks is not a partition.
SubstructureReport generated_substructure_check(const ContactAlgebra& ambient, const std::vector<Element>& blocks,
                                                int bound);

} // namespace cologic
