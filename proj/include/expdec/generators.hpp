#pragma once

#include <string>
#include <vector>

#include "expdec/graph.hpp"

namespace expdec {

Graph make_clique(int k);
Graph make_barbell(int k);  // two K_k joined by one bridge
Graph make_cycle(int n);
Graph make_hypercube(int d);
Graph make_gnm(int n, int64_t m, uint64_t seed);  // simple connected-ish G(n,m)

// Families: "clique k" | "barbell k" | "cycle n" | "hypercube d" | "gnm n m".
Graph generate_family(const std::string& family, const std::vector<int64_t>& params,
                      uint64_t seed);

}  // namespace expdec
