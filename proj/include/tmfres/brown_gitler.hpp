#pragma once

#include <utility>
#include <vector>

#include "tmfres/ring.hpp"

namespace tmfres {

// bo-Brown-Gitler polynomials, defined by
//   f_0 = 1, f_1 = x, f_{2j+1} = t^j x f_j, f_{2j} = t^j f_j + t^{j+1} s f_{j-1}
// evaluated in R (bg_poly) or in R' (bg_poly_gloc).  Memoized; the recursion
// halves indices so depth is logarithmic.
RingElement bg_poly(unsigned j, unsigned max_index = 256);
RingElement bg_poly_gloc(unsigned j, unsigned max_index = 256);

// Reduced expressions for x^k in R, k = 3..k_max.
std::vector<std::pair<unsigned, RingElement>> power_table(unsigned k_max);

struct ParityReport {
    unsigned j = 0;
    bool ok = false;
    std::string detail;  // empty when ok
};

// Checks the structural shape of f'_j: for even j only terms
// a s^i t^j + b s^i t^{j-1} x + c s^i t^{j-2} x^2, for odd j no constant
// terms; all coefficients nonnegative.
ParityReport verify_parity(unsigned j);

// project_mod_y(f_j) == embed_gprime(f'_j).
bool compare_mod_y(unsigned j);

}  // namespace tmfres
