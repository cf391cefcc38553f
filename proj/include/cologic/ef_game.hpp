#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cologic/algebra.hpp"
#include "cologic/covers.hpp"

namespace cologic {

struct EfOptions {
    /// Accept a position at once when a contact-graph isomorphism carries
    /// one tuple onto the other.
    bool use_isomorphisms = true;
    /// Isomorphisms examined per model pair.
    std::size_t isomorphism_limit = 4096;
    /// Maximum number of trace entries kept.
    std::size_t trace_limit = 64;
};

/// One move of the game: the spoiler picks a refinement on `side` following
/// `arrangement`; `response` is the duplicator's answer on the other side,
/// absent when none exists.
struct EfStep {
    int depth = 0;
    int side = 0;
    Arrangement arrangement;
    GoodTuple challenge;
    std::optional<GoodTuple> response;
};

struct EfResult {
    bool equivalent = false;
    std::string reason;
    std::vector<EfStep> trace;
};

/// Depth-bounded back-and-forth game between (B0, ā0) and (B1, ā1).
/// Positions reached during play are memoized, so one instance can answer
/// many queries over the same pair of models cheaply.
class EfGame {
public:
    EfGame(ContactAlgebra first, ContactAlgebra second, EfOptions options = {});
    ~EfGame();
    EfGame(EfGame&&) noexcept;
    EfGame& operator=(EfGame&&) noexcept;

    const ContactAlgebra& model(int side) const;
    /// Largest refinement length the spoiler may ask for.
    int arrangement_cap() const;

    /// Throws std::invalid_argument when a tuple is not good or the
    /// lengths differ.
    bool equivalent(const GoodTuple& first, const GoodTuple& second, int depth);
    EfResult play(const GoodTuple& first, const GoodTuple& second, int depth);

    /// Lexicographically least refinement of `tuple` on the other side of
    /// `side` following f that answers `challenge` at `depth`.
    std::optional<GoodTuple> respond(int side, const GoodTuple& challenge, const GoodTuple& tuple,
                                     const Arrangement& f, int depth);

    std::size_t positions_memoized() const;

private:
    struct State;
    std::unique_ptr<State> state_;
};

EfResult ef_equivalent(const ContactAlgebra& first, const GoodTuple& first_tuple, const ContactAlgebra& second,
                       const GoodTuple& second_tuple, int depth, const EfOptions& options = {});

/// Bounded-depth surrogate of the cological type realized by a tuple.
struct TypeFingerprint {
    ContactAlgebra model;
    GoodTuple tuple;
    int depth = 0;
};

/// Same fingerprint: equal depths and depth-equivalent tuples.
bool same_type(const TypeFingerprint& a, const TypeFingerprint& b);

/// Every good tuple of B with the same nerve as ā is depth-equivalent to ā.
bool nerve_generates_type(const ContactAlgebra& algebra, const GoodTuple& tuple, int depth);

struct BackAndForthTrace {
    /// Positions after each round, starting with (ā0, ā1).
    std::vector<std::pair<GoodTuple, GoodTuple>> positions;
    /// Set once both tuples consist of singleton atoms: atom_map[p] = q
    /// when {p} and {q} share an index.
    std::optional<std::vector<int>> atom_map;
};

/// Plays `rounds` rounds, alternating sides starting with side 0. Each
/// round splits off the lowest atom of the first non-singleton block on the
/// moving side and answers with the least refinement that is equivalent at
/// the remaining depth. Returns nullopt when the duplicator loses.
std::optional<BackAndForthTrace> back_and_forth(const ContactAlgebra& first, const GoodTuple& first_tuple,
                                                const ContactAlgebra& second, const GoodTuple& second_tuple,
                                                int rounds);

} // namespace cologic
