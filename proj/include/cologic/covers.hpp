#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cologic/algebra.hpp"
#include "cologic/element.hpp"
#include "cologic/graph.hpp"

namespace cologic {

/// Non-repeating enumeration of a finite minimal merely-touching cover. In a
/// finite power-set algebra this is an ordered partition of the atoms into
/// nonempty blocks. Validity is a property checked by is_good_tuple.
using GoodTuple = std::vector<Element>;

/// The singleton tuple (1_B).
GoodTuple unit_tuple(const ContactAlgebra& algebra);
/// ({0}, {1}, ..., {n-1}).
GoodTuple atom_tuple(const ContactAlgebra& algebra);

/// Surjection f: source -> target. A refining tuple of length source
/// follows f in a coarse tuple of length target when b_j <= a_{f(j)}.
class Arrangement {
public:
    /// Throws InputError unless images is a surjection onto [0, target).
    Arrangement(std::vector<int> images, int target);
    /// Target inferred as max image + 1.
    static Arrangement from_images(std::vector<int> images);
    static Arrangement identity(int n);
    /// The unique surjection m -> 1.
    static Arrangement constant(int source);

    int source() const { return static_cast<int>(images_.size()); }
    int target() const { return target_; }
    int operator()(int j) const { return images_[static_cast<std::size_t>(j)]; }
    std::span<const int> images() const { return images_; }

    /// |i - j| <= 1 implies |f(i) - f(j)| <= 1.
    bool is_pattern() const;
    bool is_identity() const;
    std::vector<int> fiber(int i) const;
    std::vector<int> fiber_sizes() const;

    friend bool operator==(const Arrangement&, const Arrangement&) = default;
    friend auto operator<=>(const Arrangement& a, const Arrangement& b)
    {
        return a.images_ <=> b.images_;
    }

private:
    std::vector<int> images_;
    int target_ = 0;
};

std::string to_string(const Arrangement& f);

/// (f ∘ g)(x) = f(g(x)); requires g.target() == f.source().
Arrangement compose(const Arrangement& f, const Arrangement& g);

/// All surjections source -> target in lexicographic order of images.
std::vector<Arrangement> enumerate_surjections(int source, int target);

bool is_good_tuple(const ContactAlgebra& algebra, const GoodTuple& tuple);
/// Throws std::invalid_argument naming the defect when tuple is not good.
void require_good_tuple(const ContactAlgebra& algebra, const GoodTuple& tuple);

/// Every ordered partition of the atoms into exactly n nonempty blocks,
/// sorted by lex_less on tuples.
std::vector<GoodTuple> enumerate_good_tuples(const ContactAlgebra& algebra, int n);

/// Every ordered partition of block into k nonempty labelled parts, sorted by
/// lex_less. Results are cached; the returned reference stays valid for
/// the lifetime of the process.
const std::vector<GoodTuple>& ordered_partitions(Element block, int k);

/// Index graph with an edge ij exactly when tuple[i] δ tuple[j].
FiniteGraph nerve(const ContactAlgebra& algebra, const GoodTuple& tuple);

/// A good tuple whose nerve is exactly the linear graph on its indices.
bool is_chain(const ContactAlgebra& algebra, const GoodTuple& tuple);

/// b_j <= a_{f(j)} for every j. Throws std::invalid_argument on length mismatch.
bool follows(const GoodTuple& fine, const Arrangement& f, const GoodTuple& coarse);

/// The unique arrangement fine follows in coarse, if any.
std::optional<Arrangement> arrangement_of(const GoodTuple& fine, const GoodTuple& coarse);

/// (f* b)_i = join of b_j over j in f^{-1}(i).
GoodTuple consolidate(const Arrangement& f, const GoodTuple& fine);

struct CommonRefinement {
    GoodTuple tuple;
    Arrangement in_first;
    Arrangement in_second;
};

/// Nonzero meets a_i ∧ b_j indexed lexicographically by (i, j).
CommonRefinement common_refinement(const GoodTuple& first, const GoodTuple& second);

/// Visits every good tuple following f in coarse: each block a_i is split
/// into |f^{-1}(i)| nonempty labelled parts placed at the fibre positions.
/// Order: odometer over blocks (block 0 most significant), each block's
/// partitions in lex_less order. The visitor returns false to stop early.
/// Returns false when stopped early.
bool for_each_refinement(const GoodTuple& coarse, const Arrangement& f,
                         const std::function<bool(const GoodTuple&)>& visit);

std::vector<GoodTuple> refinements_following(const GoodTuple& coarse, const Arrangement& f);

/// A covering walk visits every vertex and every non-loop edge; consecutive
/// vertices must be adjacent (staying put is allowed since graphs are reflexive).
using Walk = std::vector<int>;

/// Empty string when walk covers graph, otherwise a description of the first defect.
std::string covering_walk_defect(const FiniteGraph& graph, const Walk& walk);

/// f(β) = walk[β]. Throws InputError naming the first missing vertex/edge.
Arrangement walk_induced_surjection(const FiniteGraph& graph, const Walk& walk);

/// All covering walks with at most max_length vertices, sorted by length and
/// then lexicographically.
std::vector<Walk> enumerate_covering_walks(const FiniteGraph& graph, int max_length);

/// Streaming form of enumerate_covering_walks (same order).
void for_each_covering_walk(const FiniteGraph& graph, int max_length,
                            const std::function<void(const Walk&)>& visit);

} // namespace cologic
