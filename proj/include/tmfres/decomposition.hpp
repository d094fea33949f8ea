#pragma once

#include <map>
#include <string>
#include <vector>

#include "tmfres/ring.hpp"

namespace tmfres {

enum class SummandKind : uint8_t { F2 = 0, BO1 = 1, BO1SQ = 2, TMF03 = 3 };
enum class Locality : uint8_t { V2, G };

const char* kind_name(SummandKind k);
const char* locality_name(Locality l);

// One shifted summand m * Sigma^{internal_shift, filtration_shift} kind.
// internal_shift is always a multiple of 8 (it is 8 * t_exp of a monomial).
struct Summand {
    SummandKind kind = SummandKind::F2;
    int internal_shift = 0;
    int filtration_shift = 0;
    long long multiplicity = 1;

    auto operator<=>(const Summand&) const = default;
};

struct DecompositionReport {
    Locality locality = Locality::V2;
    std::string source;
    std::vector<Summand> summands;  // sorted by (kind, internal, filtration)

    bool operator==(const DecompositionReport&) const = default;
};

// s^i t^l 1 -> Sigma^{8l,i} F2, x -> BO1, x^2 -> BO1SQ, y -> TMF03.
Summand monomial_to_summand(const Monomial& m, long long coeff);

// Pushes every term of the element through monomial_to_summand.
DecompositionReport element_to_report(const RingElement& e, Locality loc,
                                      const std::string& source);

// Decomposition of the localized bo_j (via f_j or f'_j).
DecompositionReport decompose_bo(unsigned j, Locality loc);
// Decomposition of the localized bo_1^{tensor k} (via x^k).
DecompositionReport decompose_power(unsigned k, Locality loc);

// Truncated generating series h = sum_{j>=1} t^j f_j w^j in R or R'.
struct TruncatedSeries {
    RingId ring;
    unsigned truncation = 0;
    std::map<unsigned, RingElement> coeff;  // w-degree -> coefficient

    RingElement at(unsigned j) const;
};

TruncatedSeries h_series(unsigned j_max, Locality loc);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_pow(const TruncatedSeries& a, unsigned n);

// Weight-8j reports for the n-th tensor power of the reduced tmf homology:
// coefficient of w^j in h^n pushed through monomial_to_summand.
std::map<unsigned, DecompositionReport> tmfbar_series(unsigned n, unsigned j_max, Locality loc);

// Independent oracle: sum over compositions i_1+...+i_n = j, i_k >= 1, of
// t^j f_{i_1} ... f_{i_n}.
RingElement brute_force_weight(unsigned n, unsigned j, Locality loc);

DecompositionReport dualize_report(const DecompositionReport& r);

// Bigraded window, (n, s) = (stem, filtration).  The g-local series live
// over F2[h21^±, v1, v2^8] whose monomial lattice meets a fixed (n, s) in
// infinitely many points (3a + 32e = const has solutions for all e = 3k), so
// pointwise dimensions are truncated by shared caps on the v1- and
// v2^8-powers; any two series compared on the same Window use the same caps.
struct Window {
    int n_min = 0, n_max = 0, s_min = 0, s_max = 0;
    int v1_cap = 24;  // free v1-towers enumerated with exponent <= v1_cap
    int v2_cap = 2;   // v2^8 exponent <= v2_cap

    bool contains(int n, int s) const
    {
        return n >= n_min && n <= n_max && s >= s_min && s <= s_max;
    }
};

struct BigradedSeries {
    Window window;
    std::map<std::pair<int, int>, long long> dim;  // (n, s) -> dimension

    void add(int n, int s, long long d)
    {
        if (d == 0 || !window.contains(n, s))
            return;
        auto [it, fresh] = dim.try_emplace({n, s}, d);
        if (!fresh) {
            it->second += d;
            if (it->second == 0)
                dim.erase(it);
        }
    }
    bool operator==(const BigradedSeries& o) const { return dim == o.dim; }
};

// One h21-periodic family: the orbit F2[h21^±, v2^8]{v1^c gen}.  The anchor
// is normalized modulo h21-translation to filtration 0, so anchor_stem =
// n0 - 5*s0 for a generator at (n0, s0).
struct GlocalFamily {
    int anchor_stem = 0;
    int v1_bound = -1;  // -1 = free v1-tower, else v1^v1_bound = 0

    auto operator<=>(const GlocalFamily&) const = default;
};

using FamilyMultiset = std::map<GlocalFamily, long long>;

// Exact module-level description of a g-local report:
//   g^-1 F2     free over v1, generator at (0,0)
//   g^-1 bo_1   v1-trivial,   generator at (4,0)
//   g^-1 bo_1^2 v1^2 = 0,     generator at (11,0)
// h21 at (5,1), v1 at (2,1), v2^8 at (48,8).
FamilyMultiset glocal_families(const DecompositionReport& r);

// Windowed dimension count of a family multiset (shared truncation rules).
BigradedSeries family_dims(const FamilyMultiset& fams, const Window& window);

BigradedSeries homotopy_series_glocal(const DecompositionReport& r, const Window& window);

// Per-weight census of g^-1 pi(tmf^{tensor n}) from the x_{i,j}/t_{i,j}
// bookkeeping: enumerates disjoint index sets J, J' with |T_J| and degree
// rules as in the source computation; q1_shift is the (signed) internal
// degree shift of one Q1 application, calibrated to -3 by the n = 1
// cross-check against the f'_j decompositions.
std::map<int, FamilyMultiset> census_bbt_families(unsigned n, int weight_max,
                                                  int q1_shift = -3,
                                                  unsigned long long budget = 80'000'000ULL);

std::map<int, BigradedSeries> census_bbt(unsigned n, const Window& window, int weight_max,
                                         int q1_shift = -3,
                                         unsigned long long budget = 80'000'000ULL);

// |T_J| for |J| = k, per the inductive construction (1,1,2,2,4,4,...).
unsigned long long census_family_size(unsigned k);

// Shifts every summand by Sigma^{delta} (internal degree only).
DecompositionReport shift_report(const DecompositionReport& r, int delta_internal);

// JSON / CSV emission (deterministic).
std::string report_to_json(const DecompositionReport& r);
std::string series_to_csv(const std::map<int, BigradedSeries>& by_weight);

}  // namespace tmfres
