#pragma once

#include <cstddef>
#include <vector>

#include "orislink/random.hpp"

template <class Draw>
std::vector<double> draw_many(std::size_t n, std::uint64_t seed, Draw&& draw) {
    orislink::RandomStream rng(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(draw(rng));
    return out;
}
