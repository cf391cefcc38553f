#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cologic {

/// Hard upper bound on atoms (and graph vertices): elements are 64-bit masks.
inline constexpr int kMaxAtoms = 64;

/// Raised for malformed user input (files, formula text, CLI values).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An element of a finite atomic contact algebra, i.e. a set of atom indices.
class Element {
public:
    constexpr Element() = default;
    constexpr explicit Element(std::uint64_t bits) : bits_(bits) {}

    static constexpr Element singleton(int atom) { return Element(std::uint64_t{1} << atom); }
    static constexpr Element full(int atom_count)
    {
        return Element(atom_count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << atom_count) - 1);
    }
    static Element of(const std::vector<int>& atoms);

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(int atom) const { return (bits_ >> atom) & 1u; }
    constexpr bool subset_of(Element other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool meets(Element other) const { return (bits_ & other.bits_) != 0; }
    constexpr int lowest() const { return std::countr_zero(bits_); }

    std::vector<int> atoms() const;

    friend constexpr Element operator|(Element a, Element b) { return Element(a.bits_ | b.bits_); }
    friend constexpr Element operator&(Element a, Element b) { return Element(a.bits_ & b.bits_); }
    friend constexpr Element operator-(Element a, Element b) { return Element(a.bits_ & ~b.bits_); }
    Element& operator|=(Element other)
    {
        bits_ |= other.bits_;
        return *this;
    }
    friend constexpr bool operator==(Element, Element) = default;

private:
    std::uint64_t bits_ = 0;
};

/// Order on elements as sorted atom-index lists, compared lexicographically.
/// This is the canonical order for every enumeration and serialization.
bool lex_less(Element a, Element b);

/// Lexicographic order on tuples of elements using lex_less entrywise.
bool lex_less(const std::vector<Element>& a, const std::vector<Element>& b);

/// "{0,2}" style rendering.
std::string to_string(Element e);
std::string to_string(const std::vector<Element>& tuple);

} // namespace cologic
