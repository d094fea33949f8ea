#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tmfres/errors.hpp"

namespace tmfres {

// The three generating-function rings.
//   R       Z[s^±, t^±, x, y] / (x^3 = 2t^2sx + t^3s^2y, xy = t^3s^3y + t^5s^6y, t^6s^8 = 1)
//   R'      Z[s^±, t^±, x] / (x^3 = 2t^2sx)            (no periodicity, no y)
//   R/(y)   Z[s^±, t^±, x] / (x^3 = 2t^2sx, t^6s^8 = 1)
enum class RingId : uint8_t { R, RPrime, RModY };

const char* ring_name(RingId r);

// Reduced monomials only ever carry 1, x, x^2 or y.
enum class Gen : uint8_t { One = 0, X = 1, X2 = 2, Y = 3 };

inline int x_degree(Gen g) { return g == Gen::X ? 1 : g == Gen::X2 ? 2 : 0; }
inline int y_degree(Gen g) { return g == Gen::Y ? 1 : 0; }
const char* gen_name(Gen g);

struct Monomial {
    int s_exp = 0;
    int t_exp = 0;
    Gen gen = Gen::One;

    auto operator<=>(const Monomial&) const = default;
};

// One unreduced term c * s^a t^b x^m y^n.
struct RawTerm {
    int s_exp = 0;
    int t_exp = 0;
    int x_exp = 0;
    int y_exp = 0;
    long long coeff = 0;
};

using RawExpression = std::vector<RawTerm>;

// Canonical element: no zero coefficients, every monomial window-reduced
// (s_exp in [0,8) for R and R/(y); R' keeps exponents as-is).
class RingElement {
public:
    explicit RingElement(RingId ring = RingId::R) : ring_(ring) {}

    RingId ring() const { return ring_; }
    const std::map<Monomial, long long>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const RingElement& o) const = default;

    // Internal: inserts a canonical monomial, pruning zeros. Checked add.
    void add_term(const Monomial& m, long long c);

private:
    RingId ring_;
    std::map<Monomial, long long> terms_;
};

// Order used by the alternate reduction strategy of the confluence test.
enum class ReduceStrategy { LeftToRight, RightToLeft };

RingElement normalize(const RawExpression& e, RingId ring,
                      ReduceStrategy strategy = ReduceStrategy::LeftToRight);

RingElement add(const RingElement& a, const RingElement& b);
RingElement sub(const RingElement& a, const RingElement& b);
RingElement mul(const RingElement& a, const RingElement& b);
RingElement pow(const RingElement& a, unsigned k);
RingElement scale(const RingElement& a, long long c);

RingElement zero(RingId ring);
RingElement one(RingId ring);
// s^i t^j * gen as a canonical element.
RingElement monomial_element(RingId ring, int s_exp, int t_exp, Gen gen, long long coeff = 1);

// The duality endomorphism D: t -> t^-1, s -> s^-1, x -> t^-2 s^-1 x,
// y -> s y.  An involutive ring homomorphism on R and R'.
RingElement dualize(const RingElement& a);

// R -> R/(y): drops y-terms.
RingElement project_mod_y(const RingElement& a);

// R' -> R/(y): identity on exponents followed by window reduction.
RingElement embed_gprime(const RingElement& a);

// Text grammar: signed integer coefficients, factors s^±k / t^±k / x / x^2 / y,
// juxtaposition = product, '+'/'-' separated terms, exponents with optional
// braces ("t^{10}" and "t^10" both parse, greedy digits).
RawExpression parse_element(const std::string& text);
std::string format_element(const RingElement& a);

// Stable term list for machine consumption: (gen, s_exp, t_exp) ascending.
std::vector<std::pair<Monomial, long long>> serialize_terms(const RingElement& a);

}  // namespace tmfres
