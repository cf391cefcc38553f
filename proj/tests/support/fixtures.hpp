#pragma once

#include <initializer_list>
#include <vector>

#include "cologic/algebra.hpp"
#include "cologic/covers.hpp"

namespace cologic::test {

inline ContactAlgebra path(int n)
{
    return contact_from_graph(FiniteGraph::linear(n));
}

inline ContactAlgebra discrete(int n)
{
    return contact_from_graph(FiniteGraph::discrete(n));
}

inline GoodTuple tuple(std::initializer_list<std::initializer_list<int>> blocks)
{
    GoodTuple t;
    for (const auto& b : blocks) {
        t.push_back(Element::of(std::vector<int>(b)));
    }
    return t;
}

inline Arrangement arr(std::initializer_list<int> images)
{
    return Arrangement::from_images(std::vector<int>(images));
}

} // namespace cologic::test
