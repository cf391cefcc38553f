#include "cologic/ef_game.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace cologic {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept
    {
        std::uint64_t h = 0x84222325cbf29ce4ull;
        for (std::uint64_t v : key) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

using Key = std::vector<std::uint64_t>;

Key nerve_key(const FiniteGraph& g)
{
    return Key(g.rows().begin(), g.rows().end());
}

// Refinements of one tuple following one arrangement, grouped by nerve.
using Buckets = std::map<Key, std::vector<GoodTuple>>;

constexpr std::size_t kBucketCacheLimit = 1u << 16;

bool all_singletons(const GoodTuple& t)
{
    return std::all_of(t.begin(), t.end(), [](Element e) { return e.size() == 1; });
}

} // namespace

struct EfGame::State {
    ContactAlgebra models[2];
    EfOptions options;
    int cap = 0;
    std::optional<std::vector<std::vector<int>>> isos;
    std::unordered_map<Key, bool, VecHash> memo;
    std::unordered_map<Key, std::shared_ptr<const Buckets>, VecHash> buckets;

    State(ContactAlgebra a, ContactAlgebra b, EfOptions o)
        : models{std::move(a), std::move(b)}, options(o),
          cap(std::max(models[0].atom_count(), models[1].atom_count()))
    {
    }

    const std::vector<std::vector<int>>& isomorphism_list()
    {
        if (!isos) {
            isos = isomorphisms(models[0].atom_contact(), models[1].atom_contact(), options.isomorphism_limit);
        }
        return *isos;
    }

    bool carried_by_isomorphism(const GoodTuple& t0, const GoodTuple& t1)
    {
        if (models[0] == models[1] && t0 == t1) {
            return true;
        }
        if (!options.use_isomorphisms) {
            return false;
        }
        for (const auto& perm : isomorphism_list()) {
            bool ok = true;
            for (std::size_t i = 0; ok && i < t0.size(); ++i) {
                Element image;
                for (int p : t0[i].atoms()) {
                    image |= Element::singleton(perm[static_cast<std::size_t>(p)]);
                }
                ok = image == t1[i];
            }
            if (ok) {
                return true;
            }
        }
        return false;
    }

    std::shared_ptr<const Buckets> refinements(int side, const GoodTuple& t, const Arrangement& f)
    {
        Key key;
        key.reserve(2 + t.size() + static_cast<std::size_t>(f.source()));
        key.push_back(static_cast<std::uint64_t>(side));
        key.push_back(t.size());
        for (Element e : t) {
            key.push_back(e.bits());
        }
        for (int v : f.images()) {
            key.push_back(static_cast<std::uint64_t>(v));
        }
        if (auto it = buckets.find(key); it != buckets.end()) {
            return it->second;
        }
        auto out = std::make_shared<Buckets>();
        const ContactAlgebra& b = models[side];
        if (f.source() <= b.atom_count()) {
            for_each_refinement(t, f, [&](const GoodTuple& c) {
                (*out)[nerve_key(nerve(b, c))].push_back(c);
                return true;
            });
        }
        if (buckets.size() >= kBucketCacheLimit) {
            buckets.clear();
        }
        buckets.emplace(std::move(key), out);
        return out;
    }

    bool eq(const GoodTuple& t0, const GoodTuple& t1, int depth)
    {
        if (nerve(models[0], t0) != nerve(models[1], t1)) {
            return false;
        }
        if (depth == 0 || carried_by_isomorphism(t0, t1)) {
            return true;
        }
        Key key;
        key.reserve(1 + 2 * t0.size());
        key.push_back(static_cast<std::uint64_t>(depth));
        for (Element e : t0) {
            key.push_back(e.bits());
        }
        for (Element e : t1) {
            key.push_back(e.bits());
        }
        if (auto it = memo.find(key); it != memo.end()) {
            return it->second;
        }
        const bool result = !first_failure(t0, t1, depth).has_value();
        memo.emplace(std::move(key), result);
        return result;
    }

    struct Failure {
        Arrangement f;
        int side;
        GoodTuple challenge;
    };

    std::optional<GoodTuple> answer(int side, const GoodTuple& challenge, const std::vector<GoodTuple>* candidates,
                                    int depth)
    {
        if (candidates == nullptr) {
            return std::nullopt;
        }
        for (const GoodTuple& c : *candidates) {
            if (side == 0 ? eq(challenge, c, depth) : eq(c, challenge, depth)) {
                return c;
            }
        }
        return std::nullopt;
    }

    std::optional<Failure> failure_for(const GoodTuple& t0, const GoodTuple& t1, const Arrangement& f, int depth)
    {
        const auto b0 = refinements(0, t0, f);
        const auto b1 = refinements(1, t1, f);
        const Buckets* sides[2] = {b0.get(), b1.get()};
        for (int side = 0; side < 2; ++side) {
            const Buckets& mine = *sides[side];
            const Buckets& theirs = *sides[1 - side];
            for (const auto& [nerve_rows, challenges] : mine) {
                auto it = theirs.find(nerve_rows);
                const std::vector<GoodTuple>* candidates = it == theirs.end() ? nullptr : &it->second;
                for (const GoodTuple& c : challenges) {
                    if (!answer(side, c, candidates, depth - 1)) {
                        return Failure{f, side, c};
                    }
                }
            }
        }
        return std::nullopt;
    }

    std::optional<Failure> first_failure(const GoodTuple& t0, const GoodTuple& t1, int depth)
    {
        const int n = static_cast<int>(t0.size());
        for (int m = n; m <= cap; ++m) {
            for (const Arrangement& f : enumerate_surjections(m, n)) {
                if (auto fail = failure_for(t0, t1, f, depth)) {
                    return fail;
                }
            }
        }
        return std::nullopt;
    }
};

EfGame::EfGame(ContactAlgebra first, ContactAlgebra second, EfOptions options)
{
    const int guard = max_atoms_guard();
    for (const ContactAlgebra* b : {&first, &second}) {
        if (b->atom_count() > guard) {
            throw InputError("game over a model with " + std::to_string(b->atom_count()) +
                             " atoms exceeds the size guard of " + std::to_string(guard));
        }
    }
    state_ = std::make_unique<State>(std::move(first), std::move(second), options);
}

EfGame::~EfGame() = default;
EfGame::EfGame(EfGame&&) noexcept = default;
EfGame& EfGame::operator=(EfGame&&) noexcept = default;

const ContactAlgebra& EfGame::model(int side) const
{
    return state_->models[side == 0 ? 0 : 1];
}

int EfGame::arrangement_cap() const
{
    return state_->cap;
}

std::size_t EfGame::positions_memoized() const
{
    return state_->memo.size();
}

namespace {

void check_position(const ContactAlgebra& b0, const GoodTuple& t0, const ContactAlgebra& b1, const GoodTuple& t1,
                    int depth)
{
    require_good_tuple(b0, t0);
    require_good_tuple(b1, t1);
    if (t0.size() != t1.size()) {
        throw std::invalid_argument("tuples of different lengths " + std::to_string(t0.size()) + " and " +
                                    std::to_string(t1.size()));
    }
    if (depth < 0) {
        throw std::invalid_argument("depth must be nonnegative");
    }
}

} // namespace

bool EfGame::equivalent(const GoodTuple& first, const GoodTuple& second, int depth)
{
    check_position(model(0), first, model(1), second, depth);
    return state_->eq(first, second, depth);
}

EfResult EfGame::play(const GoodTuple& first, const GoodTuple& second, int depth)
{
    check_position(model(0), first, model(1), second, depth);
    State& s = *state_;
    EfResult result;
    result.equivalent = s.eq(first, second, depth);

    const FiniteGraph g0 = nerve(model(0), first);
    const FiniteGraph g1 = nerve(model(1), second);
    if (g0 != g1) {
        result.reason = "nerves differ: " + to_string(g0) + " vs " + to_string(g1);
        return result;
    }
    if (depth == 0) {
        result.reason = "equal nerves " + to_string(g0);
        return result;
    }
    if (!result.equivalent) {
        auto fail = s.first_failure(first, second, depth);
        if (fail) {
            result.reason = "side " + std::to_string(fail->side) + " refinement " + to_string(fail->challenge) +
                            " following " + to_string(fail->f) + " has no depth-" + std::to_string(depth - 1) +
                            " equivalent answer";
            result.trace.push_back({depth, fail->side, fail->f, fail->challenge, std::nullopt});
        }
        return result;
    }
    if (s.carried_by_isomorphism(first, second)) {
        result.reason = "a contact isomorphism carries one tuple onto the other";
        return result;
    }
    result.reason = "every challenge up to depth " + std::to_string(depth) + " is answered";
    const int n = static_cast<int>(first.size());
    for (int m = n; m <= s.cap && result.trace.size() < s.options.trace_limit; ++m) {
        for (const Arrangement& f : enumerate_surjections(m, n)) {
            const auto b0 = s.refinements(0, first, f);
            const auto b1 = s.refinements(1, second, f);
            for (const auto& [rows, challenges] : *b0) {
                auto it = b1->find(rows);
                const std::vector<GoodTuple>* candidates = it == b1->end() ? nullptr : &it->second;
                for (const GoodTuple& c : challenges) {
                    if (result.trace.size() >= s.options.trace_limit) {
                        break;
                    }
                    result.trace.push_back({depth, 0, f, c, s.answer(0, c, candidates, depth - 1)});
                }
            }
            if (result.trace.size() >= s.options.trace_limit) {
                break;
            }
        }
    }
    return result;
}

std::optional<GoodTuple> EfGame::respond(int side, const GoodTuple& challenge, const GoodTuple& tuple,
                                         const Arrangement& f, int depth)
{
    const int other = side == 0 ? 1 : 0;
    std::vector<GoodTuple> candidates;
    if (f.source() <= model(other).atom_count()) {
        const FiniteGraph target = nerve(model(side), challenge);
        for_each_refinement(tuple, f, [&](const GoodTuple& c) {
            if (nerve(model(other), c) == target) {
                candidates.push_back(c);
            }
            return true;
        });
    }
    std::sort(candidates.begin(), candidates.end(), [](const GoodTuple& a, const GoodTuple& b) { return lex_less(a, b); });
    return state_->answer(side, challenge, &candidates, depth);
}

EfResult ef_equivalent(const ContactAlgebra& first, const GoodTuple& first_tuple, const ContactAlgebra& second,
                       const GoodTuple& second_tuple, int depth, const EfOptions& options)
{
    EfGame game(first, second, options);
    return game.play(first_tuple, second_tuple, depth);
}

bool same_type(const TypeFingerprint& a, const TypeFingerprint& b)
{
    if (a.depth != b.depth || a.tuple.size() != b.tuple.size()) {
        return false;
    }
    EfGame game(a.model, b.model);
    return game.equivalent(a.tuple, b.tuple, a.depth);
}

bool nerve_generates_type(const ContactAlgebra& algebra, const GoodTuple& tuple, int depth)
{
    require_good_tuple(algebra, tuple);
    const FiniteGraph g = nerve(algebra, tuple);
    EfGame game(algebra, algebra);
    for (const GoodTuple& other : enumerate_good_tuples(algebra, static_cast<int>(tuple.size()))) {
        if (nerve(algebra, other) == g && !game.equivalent(tuple, other, depth)) {
            return false;
        }
    }
    return true;
}

std::optional<BackAndForthTrace> back_and_forth(const ContactAlgebra& first, const GoodTuple& first_tuple,
                                                const ContactAlgebra& second, const GoodTuple& second_tuple,
                                                int rounds)
{
    if (rounds < 0) {
        throw std::invalid_argument("round count must be nonnegative");
    }
    EfGame game(first, second);
    if (!game.equivalent(first_tuple, second_tuple, rounds)) {
        return std::nullopt;
    }
    BackAndForthTrace trace;
    GoodTuple t[2] = {first_tuple, second_tuple};
    trace.positions.emplace_back(t[0], t[1]);
    for (int round = 0; round < rounds; ++round) {
        int side = round % 2;
        if (all_singletons(t[side])) {
            side = 1 - side;
            if (all_singletons(t[side])) {
                break;
            }
        }
        const auto block = std::find_if(t[side].begin(), t[side].end(), [](Element e) { return e.size() > 1; });
        const Element p = Element::singleton(block->lowest());
        const GoodTuple split = {p, game.model(side).top() - p};
        CommonRefinement cr = common_refinement(t[side], split);
        auto reply = game.respond(side, cr.tuple, t[1 - side], cr.in_first, rounds - round - 1);
        if (!reply) {
            return std::nullopt;
        }
        t[side] = std::move(cr.tuple);
        t[1 - side] = std::move(*reply);
        trace.positions.emplace_back(t[0], t[1]);
    }
    if (all_singletons(t[0]) && all_singletons(t[1]) && first.atom_count() == second.atom_count() &&
        static_cast<int>(t[0].size()) == first.atom_count()) {
        std::vector<int> map(t[0].size());
        for (std::size_t i = 0; i < t[0].size(); ++i) {
            map[static_cast<std::size_t>(t[0][i].lowest())] = t[1][i].lowest();
        }
        trace.atom_map = std::move(map);
    }
    return trace;
}

} // namespace cologic
