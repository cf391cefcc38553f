#include "cologic/element.hpp"

#include <algorithm>

namespace cologic {

Element Element::of(const std::vector<int>& atoms)
{
    std::uint64_t bits = 0;
    for (int a : atoms) {
        if (a < 0 || a >= kMaxAtoms) {
            throw InputError("atom index " + std::to_string(a) + " out of range");
        }
        bits |= std::uint64_t{1} << a;
    }
    return Element(bits);
}

std::vector<int> Element::atoms() const
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
        out.push_back(std::countr_zero(rest));
    }
    return out;
}

bool lex_less(Element a, Element b)
{
    std::uint64_t x = a.bits();
    std::uint64_t y = b.bits();
    while (x != 0 && y != 0) {
        const int px = std::countr_zero(x);
        const int py = std::countr_zero(y);
        if (px != py) {
            return px < py;
        }
        x &= x - 1;
        y &= y - 1;
    }
    return x == 0 && y != 0;
}

bool lex_less(const std::vector<Element>& a, const std::vector<Element>& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](Element l, Element r) { return lex_less(l, r); });
}

std::string to_string(Element e)
{
    std::string out = "{";
    bool first = true;
    for (int a : e.atoms()) {
        if (!first) {
            out += ',';
        }
        out += std::to_string(a);
        first = false;
    }
    out += '}';
    return out;
}

std::string to_string(const std::vector<Element>& tuple)
{
    std::string out = "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += to_string(tuple[i]);
    }
    out += ')';
    return out;
}

} // namespace cologic
