#pragma once

#include <map>

#include "tmfres/module.hpp"

namespace tmfres {

struct BarBudget {
    size_t max_block = 6'000'000;            // tuples per (s, t) block
    unsigned long long max_ops = 60'000'000'000ULL;  // elimination work
};

// Homology of the reduced bar complex Abar^{(x)s} (x) M, i.e. Tor_s^{A}(F2, M),
// whose dimensions equal the minimal-resolution Ext dimensions.  Entirely
// independent of the resolution code path: explicit tuple bases and sparse
// GF(2) rank of the bar differentials, one internal degree at a time.
std::map<std::pair<int, int>, int> bar_oracle(const CompiledModule& m, int t_max,
                                              const BarBudget& budget = {});

// Trivial one-dimensional module over an algebra (for change-of-rings runs).
CompiledModule trivial_module(const Algebra& alg);

}  // namespace tmfres
