#include "cologic/formula.hpp"

#include <cctype>
#include <optional>
#include <stdexcept>

namespace cologic {

struct Formula::Node {
    FormulaKind kind;
    int context;
    int rank;
    int size;
    std::optional<FiniteGraph> graph;
    std::optional<Arrangement> arrangement;
    std::optional<Formula> left;
    std::optional<Formula> right;
};

Formula Formula::bottom(int context)
{
    if (context < 1) {
        throw InputError("context must be at least 1, got " + std::to_string(context));
    }
    return Formula(std::make_shared<const Node>(Node{FormulaKind::bottom, context, 0, 1, {}, {}, {}, {}}));
}

Formula Formula::graph(FiniteGraph g)
{
    if (g.vertex_count() < 1) {
        throw InputError("graph atom needs at least one vertex");
    }
    const int n = g.vertex_count();
    return Formula(std::make_shared<const Node>(Node{FormulaKind::graph, n, 0, 1, std::move(g), {}, {}, {}}));
}

Formula Formula::negation(Formula child)
{
    const int n = child.context();
    const int rank = child.rank();
    const int size = child.size() + 1;
    return Formula(
        std::make_shared<const Node>(Node{FormulaKind::negation, n, rank, size, {}, {}, std::move(child), {}}));
}

Formula Formula::disjunction(Formula left, Formula right)
{
    if (left.context() != right.context()) {
        throw InputError("context mismatch: " + std::to_string(left.context()) + " vs " +
                         std::to_string(right.context()));
    }
    const int n = left.context();
    const int rank = std::max(left.rank(), right.rank());
    const int size = left.size() + right.size() + 1;
    return Formula(std::make_shared<const Node>(
        Node{FormulaKind::disjunction, n, rank, size, {}, {}, std::move(left), std::move(right)}));
}

Formula Formula::exists(Arrangement f, Formula child)
{
    if (child.context() != f.source()) {
        throw InputError("context mismatch: arrangement " + to_string(f) + " has source " +
                         std::to_string(f.source()) + " but its body has context " +
                         std::to_string(child.context()));
    }
    const int n = f.target();
    const int rank = child.rank() + 1;
    const int size = child.size() + 1;
    return Formula(std::make_shared<const Node>(
        Node{FormulaKind::exists, n, rank, size, {}, std::move(f), std::move(child), {}}));
}

Formula Formula::top(int context)
{
    return negation(bottom(context));
}

Formula Formula::conjunction(Formula left, Formula right)
{
    return negation(disjunction(negation(std::move(left)), negation(std::move(right))));
}

Formula Formula::implication(Formula left, Formula right)
{
    return disjunction(negation(std::move(left)), std::move(right));
}

Formula Formula::forall(Arrangement f, Formula child)
{
    return negation(exists(std::move(f), negation(std::move(child))));
}

FormulaKind Formula::kind() const
{
    return node_->kind;
}

int Formula::context() const
{
    return node_->context;
}

const FiniteGraph& Formula::graph() const
{
    if (!node_->graph) {
        throw std::logic_error("formula is not a graph atom");
    }
    return *node_->graph;
}

const Arrangement& Formula::arrangement() const
{
    if (!node_->arrangement) {
        throw std::logic_error("formula is not an existential");
    }
    return *node_->arrangement;
}

const Formula& Formula::child() const
{
    if (node_->kind != FormulaKind::negation && node_->kind != FormulaKind::exists) {
        throw std::logic_error("formula has no single operand");
    }
    return *node_->left;
}

const Formula& Formula::left() const
{
    if (node_->kind != FormulaKind::disjunction) {
        throw std::logic_error("formula is not a disjunction");
    }
    return *node_->left;
}

const Formula& Formula::right() const
{
    if (node_->kind != FormulaKind::disjunction) {
        throw std::logic_error("formula is not a disjunction");
    }
    return *node_->right;
}

int Formula::rank() const
{
    return node_->rank;
}

int Formula::size() const
{
    return node_->size;
}

bool operator==(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.kind() != b.kind() || a.context() != b.context() || a.size() != b.size()) {
        return false;
    }
    switch (a.kind()) {
    case FormulaKind::bottom:
        return true;
    case FormulaKind::graph:
        return a.graph() == b.graph();
    case FormulaKind::negation:
        return a.child() == b.child();
    case FormulaKind::disjunction:
        return a.left() == b.left() && a.right() == b.right();
    case FormulaKind::exists:
        return a.arrangement() == b.arrangement() && a.child() == b.child();
    }
    return false;
}

std::string print(const Formula& phi)
{
    switch (phi.kind()) {
    case FormulaKind::bottom:
        return "false@" + std::to_string(phi.context());
    case FormulaKind::graph:
        return to_string(phi.graph());
    case FormulaKind::negation:
        return "!" + print(phi.child());
    case FormulaKind::disjunction:
        return "(" + print(phi.left()) + " | " + print(phi.right()) + ")";
    case FormulaKind::exists:
        return "some" + to_string(phi.arrangement()) + ". " + print(phi.child());
    }
    return {};
}

ParseError::ParseError(std::size_t position, const std::string& message)
    : InputError("parse error at position " + std::to_string(position) + ": " + message), position_(position)
{
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Formula parse_all()
    {
        Formula phi = formula();
        skip_space();
        if (pos_ != text_.size()) {
            throw ParseError(pos_, "unexpected trailing input '" + std::string(text_.substr(pos_, 8)) + "'");
        }
        return phi;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool at_end()
    {
        skip_space();
        return pos_ >= text_.size();
    }

    char peek()
    {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c)
    {
        if (peek() != c) {
            throw ParseError(pos_, std::string("expected '") + c + "'" + found());
        }
        ++pos_;
    }

    bool accept(std::string_view token)
    {
        skip_space();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    std::string found()
    {
        if (at_end()) {
            return " but reached end of input";
        }
        return std::string(" but found '") + text_[pos_] + "'";
    }

    std::string word()
    {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    int natural()
    {
        skip_space();
        const std::size_t start = pos_;
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1'000'000) {
                throw ParseError(start, "number too large");
            }
            ++pos_;
        }
        if (pos_ == start) {
            throw ParseError(pos_, "expected a natural number" + found());
        }
        return static_cast<int>(value);
    }

    Formula formula()
    {
        const char c = peek();
        const std::size_t start = pos_;
        if (c == '!') {
            ++pos_;
            return Formula::negation(formula());
        }
        if (c == '(') {
            ++pos_;
            Formula left = formula();
            const std::size_t op_pos = (skip_space(), pos_);
            enum class Op { disj, conj, impl } op;
            if (accept("->")) {
                op = Op::impl;
            } else if (accept("|")) {
                op = Op::disj;
            } else if (accept("&")) {
                op = Op::conj;
            } else {
                throw ParseError(pos_, "expected '|', '&' or '->'" + found());
            }
            Formula right = formula();
            expect(')');
            try {
                switch (op) {
                case Op::disj:
                    return Formula::disjunction(std::move(left), std::move(right));
                case Op::conj:
                    return Formula::conjunction(std::move(left), std::move(right));
                case Op::impl:
                    return Formula::implication(std::move(left), std::move(right));
                }
            } catch (const ParseError&) {
                throw;
            } catch (const InputError& e) {
                throw ParseError(op_pos, e.what());
            }
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            throw ParseError(pos_, "expected a formula" + found());
        }
        const std::string kw = word();
        if (kw == "false" || kw == "true") {
            expect('@');
            const std::size_t at = (skip_space(), pos_);
            const int n = natural();
            if (n < 1) {
                throw ParseError(at, "context must be at least 1");
            }
            return kw == "false" ? Formula::bottom(n) : Formula::top(n);
        }
        if (kw == "graph") {
            return graph_atom();
        }
        if (kw == "some" || kw == "all") {
            const std::size_t map_pos = (skip_space(), pos_);
            expect('[');
            std::vector<int> images{natural()};
            while (peek() == ',') {
                ++pos_;
                images.push_back(natural());
            }
            expect(']');
            expect('.');
            Formula body = formula();
            try {
                Arrangement f = Arrangement::from_images(std::move(images));
                return kw == "some" ? Formula::exists(std::move(f), std::move(body))
                                    : Formula::forall(std::move(f), std::move(body));
            } catch (const InputError& e) {
                throw ParseError(map_pos, e.what());
            }
        }
        throw ParseError(start, "unknown keyword '" + kw + "'");
    }

    Formula graph_atom()
    {
        expect('{');
        const std::size_t n_pos = (skip_space(), pos_);
        const int n = natural();
        if (n < 1 || n > kMaxAtoms) {
            throw ParseError(n_pos, "graph atom needs between 1 and " + std::to_string(kMaxAtoms) + " vertices");
        }
        expect(';');
        std::vector<Edge> edges;
        std::vector<std::size_t> positions;
        if (peek() != '}') {
            while (true) {
                positions.push_back((skip_space(), pos_));
                const int u = natural();
                expect('-');
                const int v = natural();
                edges.emplace_back(u, v);
                if (peek() != ',') {
                    break;
                }
                ++pos_;
            }
        }
        expect('}');
        FiniteGraph g(n);
        for (std::size_t k = 0; k < edges.size(); ++k) {
            auto [u, v] = edges[k];
            if (u >= n || v >= n) {
                throw ParseError(positions[k], "edge " + std::to_string(u) + "-" + std::to_string(v) +
                                                   " out of range for " + std::to_string(n) + " vertices");
            }
            if (u == v) {
                throw ParseError(positions[k], "loops are implicit and must not be listed");
            }
            if (g.adjacent(u, v)) {
                throw ParseError(positions[k], "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
            }
            g.add_edge(u, v);
        }
        return Formula::graph(std::move(g));
    }
};

} // namespace

Formula parse(std::string_view text)
{
    return Parser(text).parse_all();
}

} // namespace cologic
