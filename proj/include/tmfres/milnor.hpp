#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tmfres/errors.hpp"

namespace tmfres {

// Milnor-basis arithmetic in the subalgebras A(0), A(1), A(2) of the mod 2
// Steenrod algebra.  A basis element is Sq(r1, r2, r3) with r_k below the
// profile bound; an algebra element is a bitmask over the basis (F2 sums).
// A(2) has 64 basis elements, so masks fit in one word.
using AlgebraElement = uint64_t;

struct MilnorTuple {
    std::array<int, 3> r{0, 0, 0};
    int degree() const { return r[0] + 3 * r[1] + 7 * r[2]; }
};

class Algebra {
public:
    // n = 0, 1, 2 for A(n); bounds are (2^{n+1}-1, 2^n-1, ...) truncations.
    static const Algebra& A(int n);

    int profile() const { return profile_; }
    int dim() const { return int(basis_.size()); }
    int top_degree() const { return top_degree_; }

    const MilnorTuple& tuple(int idx) const { return basis_[size_t(idx)]; }
    int degree(int idx) const { return deg_[size_t(idx)]; }
    int index_of(const MilnorTuple& t) const;  // -1 if out of profile
    const std::vector<int>& basis_in_degree(int d) const;

    // Product of basis elements / masks.
    AlgebraElement mul(int a, int b) const { return table_[size_t(a) * basis_.size() + size_t(b)]; }
    AlgebraElement mul(AlgebraElement a, AlgebraElement b) const;

    // Antipode (an anti-automorphism), per basis element.
    AlgebraElement antipode(int idx) const { return antipode_[size_t(idx)]; }
    AlgebraElement antipode(AlgebraElement a) const;

    // Componentwise Milnor coproduct: all splittings r = r' + r''.
    std::vector<std::pair<int, int>> coproduct(int idx) const;

    // Algebra generators Sq^1, Sq^2, Sq^4 (those within the profile).
    const std::vector<int>& generators() const { return generators_; }

    // Expression of a basis element as a sum of words in the generators
    // (each word is a list of generator degrees, leftmost factor first).
    const std::vector<std::vector<int>>& words_for(int idx) const
    {
        return word_expr_[size_t(idx)];
    }

    // Index helpers for named elements; -1 when out of profile.
    int sq(int i) const;          // Sq(i, 0, 0)
    int q0() const;               // Sq(1)
    int q1() const;               // Sq(0,1)
    int q2() const;               // Sq(0,0,1)
    int p21() const;              // Sq(0,2)

    std::string element_name(int idx) const;
    std::string format(AlgebraElement a) const;

private:
    explicit Algebra(int profile);

    int profile_;
    std::array<int, 3> bounds_;
    int top_degree_ = 0;
    std::vector<MilnorTuple> basis_;
    std::vector<int> deg_;
    std::vector<std::vector<int>> by_degree_;
    std::vector<AlgebraElement> table_;
    std::vector<AlgebraElement> antipode_;
    std::vector<int> generators_;
    std::vector<std::vector<std::vector<int>>> word_expr_;
};

// Product of two Milnor tuples in the ambient Steenrod algebra, restricted
// to a profile; throws if a term escapes the profile (cannot happen for
// genuine subalgebra inputs, asserted for safety).
AlgebraElement milnor_product(const Algebra& alg, const MilnorTuple& a, const MilnorTuple& b);

}  // namespace tmfres
