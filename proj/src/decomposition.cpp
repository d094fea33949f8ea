#include "tmfres/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "tmfres/brown_gitler.hpp"

namespace tmfres {

const char* kind_name(SummandKind k)
{
    switch (k) {
        case SummandKind::F2: return "F2";
        case SummandKind::BO1: return "BO1";
        case SummandKind::BO1SQ: return "BO1SQ";
        case SummandKind::TMF03: return "TMF03";
    }
    return "?";
}

const char* locality_name(Locality l) { return l == Locality::V2 ? "v2" : "g"; }

Summand monomial_to_summand(const Monomial& m, long long coeff)
{
    if (coeff <= 0)
        throw DomainError(errc::negative_multiplicity,
                          "coefficient " + std::to_string(coeff) + " on monomial s^" +
                              std::to_string(m.s_exp) + " t^" + std::to_string(m.t_exp) + " " +
                              gen_name(m.gen));
    Summand s;
    switch (m.gen) {
        case Gen::One: s.kind = SummandKind::F2; break;
        case Gen::X: s.kind = SummandKind::BO1; break;
        case Gen::X2: s.kind = SummandKind::BO1SQ; break;
        case Gen::Y: s.kind = SummandKind::TMF03; break;
    }
    s.internal_shift = 8 * m.t_exp;
    s.filtration_shift = m.s_exp;
    s.multiplicity = coeff;
    return s;
}

DecompositionReport element_to_report(const RingElement& e, Locality loc,
                                      const std::string& source)
{
    DecompositionReport rep;
    rep.locality = loc;
    rep.source = source;
    for (auto& [m, c] : e.terms())
        rep.summands.push_back(monomial_to_summand(m, c));
    std::sort(rep.summands.begin(), rep.summands.end());
    return rep;
}

DecompositionReport decompose_bo(unsigned j, Locality loc)
{
    RingElement f = loc == Locality::V2 ? bg_poly(j) : bg_poly_gloc(j);
    return element_to_report(f, loc, "bo_" + std::to_string(j));
}

DecompositionReport decompose_power(unsigned k, Locality loc)
{
    RingId ring = loc == Locality::V2 ? RingId::R : RingId::RPrime;
    RingElement xk = pow(monomial_element(ring, 0, 0, Gen::X), k);
    return element_to_report(xk, loc, "bo_1^" + std::to_string(k));
}

RingElement TruncatedSeries::at(unsigned j) const
{
    auto it = coeff.find(j);
    return it == coeff.end() ? zero(ring) : it->second;
}

TruncatedSeries h_series(unsigned j_max, Locality loc)
{
    TruncatedSeries h;
    h.ring = loc == Locality::V2 ? RingId::R : RingId::RPrime;
    h.truncation = j_max;
    for (unsigned j = 1; j <= j_max; ++j) {
        RingElement f = loc == Locality::V2 ? bg_poly(j) : bg_poly_gloc(j);
        h.coeff.emplace(j, mul(monomial_element(h.ring, 0, int(j), Gen::One), f));
    }
    return h;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b)
{
    TruncatedSeries out;
    out.ring = a.ring;
    out.truncation = std::min(a.truncation, b.truncation);
    for (auto& [i, ca] : a.coeff)
        for (auto& [j, cb] : b.coeff) {
            if (i + j > out.truncation)
                continue;
            RingElement prod = mul(ca, cb);
            auto [it, fresh] = out.coeff.try_emplace(i + j, prod);
            if (!fresh)
                it->second = add(it->second, prod);
        }
    return out;
}

TruncatedSeries series_pow(const TruncatedSeries& a, unsigned n)
{
    TruncatedSeries acc;
    acc.ring = a.ring;
    acc.truncation = a.truncation;
    acc.coeff.emplace(0, one(a.ring));
    for (unsigned k = 0; k < n; ++k)
        acc = series_mul(acc, a);
    return acc;
}

std::map<unsigned, DecompositionReport> tmfbar_series(unsigned n, unsigned j_max, Locality loc)
{
    TruncatedSeries hn = series_pow(h_series(j_max, loc), n);
    std::map<unsigned, DecompositionReport> out;
    for (unsigned j = n; j <= j_max; ++j)
        out.emplace(j, element_to_report(hn.at(j), loc,
                                         "tmfbar^" + std::to_string(n) + " weight " +
                                             std::to_string(8 * j)));
    return out;
}

RingElement brute_force_weight(unsigned n, unsigned j, Locality loc)
{
    RingId ring = loc == Locality::V2 ? RingId::R : RingId::RPrime;
    RingElement total = zero(ring);
    std::vector<unsigned> parts(n, 0);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned slot, unsigned left) {
        if (slot + 1 == n) {
            if (left < 1)
                return;
            parts[slot] = left;
            RingElement prod = one(ring);
            for (unsigned p : parts)
                prod = mul(prod, loc == Locality::V2 ? bg_poly(p) : bg_poly_gloc(p));
            total = add(total, prod);
            return;
        }
        for (unsigned i = 1; i + (n - slot - 1) <= left; ++i) {
            parts[slot] = i;
            rec(slot + 1, left - i);
        }
    };
    if (j >= n)
        rec(0, j);
    return mul(monomial_element(ring, 0, int(j), Gen::One), total);
}

DecompositionReport dualize_report(const DecompositionReport& r)
{
    RingId ring = r.locality == Locality::V2 ? RingId::R : RingId::RPrime;
    RingElement e = zero(ring);
    for (auto& s : r.summands) {
        Gen g = Gen::One;
        if (s.kind == SummandKind::BO1)
            g = Gen::X;
        else if (s.kind == SummandKind::BO1SQ)
            g = Gen::X2;
        else if (s.kind == SummandKind::TMF03)
            g = Gen::Y;
        e = add(e, monomial_element(ring, s.filtration_shift, s.internal_shift / 8, g,
                                    s.multiplicity));
    }
    return element_to_report(dualize(e), r.locality, "D(" + r.source + ")");
}

namespace {

struct KindSeries {
    int n0, s0;     // generator bidegree
    int v1_bound;   // -1 = free v1-tower, else v1^bound = 0
};

KindSeries glocal_kind_series(SummandKind k)
{
    switch (k) {
        case SummandKind::F2: return {0, 0, -1};
        case SummandKind::BO1: return {4, 0, 1};
        case SummandKind::BO1SQ: return {11, 0, 2};
        default:
            throw DomainError(errc::unsupported_kind,
                              "TMF03 has no g-local homotopy (g^-1 TMF_0(3) = 0)");
    }
}

void add_family(FamilyMultiset& out, int n0, int s0, int v1_bound, long long mult)
{
    GlocalFamily f{n0 - 5 * s0, v1_bound};
    auto [it, fresh] = out.try_emplace(f, mult);
    if (!fresh)
        it->second += mult;
}

}  // namespace

FamilyMultiset glocal_families(const DecompositionReport& r)
{
    if (r.locality != Locality::G)
        throw DomainError(errc::unsupported_kind, "homotopy series requires a g-local report");
    FamilyMultiset out;
    for (auto& s : r.summands) {
        KindSeries ks = glocal_kind_series(s.kind);
        add_family(out, ks.n0 + s.internal_shift, ks.s0 + s.filtration_shift, ks.v1_bound,
                   s.multiplicity);
    }
    return out;
}

BigradedSeries family_dims(const FamilyMultiset& fams, const Window& window)
{
    BigradedSeries out;
    out.window = window;
    // Monomials h21^a v1^c v2^{8e} on the anchor, a in Z, with the window's
    // shared caps on c and e; a is determined by the target filtration.
    for (auto& [f, mult] : fams) {
        int c_max = f.v1_bound < 0 ? window.v1_cap : f.v1_bound - 1;
        for (int e = 0; e <= window.v2_cap; ++e)
            for (int c = 0; c <= c_max; ++c)
                for (int s = window.s_min; s <= window.s_max; ++s) {
                    int a = s - c - 8 * e;
                    int n = f.anchor_stem + 5 * a + 2 * c + 48 * e;
                    out.add(n, s, mult);
                }
    }
    return out;
}

BigradedSeries homotopy_series_glocal(const DecompositionReport& r, const Window& window)
{
    return family_dims(glocal_families(r), window);
}

unsigned long long census_family_size(unsigned k)
{
    // |T_{(i,j)}| = 1; appending one index to odd |J| preserves cardinality,
    // appending two doubles it: 2^{floor((k-1)/2)}.
    if (k == 0)
        return 1;
    return 1ULL << ((k - 1) / 2);
}

std::map<int, FamilyMultiset> census_bbt_families(unsigned n, int weight_max, int q1_shift,
                                                  unsigned long long budget)
{
    if (n < 1)
        throw DomainError(errc::window_too_small, "census requires n >= 1");
    // Index pairs (i, j), 1 <= j <= n; indices with weight 2^{i+2} beyond the
    // bound contribute nothing.
    struct Idx {
        long long x_weight;   // wt x_{i,j} = 2^{i+2}
        long long xt_weight;  // wt x_{i,j} t_{i,j} = 2^{i+3}
        long long x_deg;      // |x_{i,j}| = 2^{i+3} - 1
        long long xt_deg;     // |x_{i,j} t_{i,j}| = 2^{i+4} - 5
    };
    std::vector<Idx> idx;
    for (int i = 1; (1LL << (i + 2)) <= weight_max; ++i)
        for (int j = 1; j <= int(n); ++j)
            idx.push_back({1LL << (i + 2), 1LL << (i + 3), (1LL << (i + 3)) - 1,
                           (1LL << (i + 4)) - 5});

    std::map<int, FamilyMultiset> out;
    for (int w = 0; w <= weight_max; w += 8)
        out.emplace(w, FamilyMultiset{});

    unsigned long long work = 0;
    // assignment per index: not used / in J / in J'
    std::function<void(size_t, unsigned, long long, long long)> rec =
        [&](size_t pos, unsigned j_count, long long weight, long long degree) {
            if (++work > budget)
                throw DomainError(errc::window_too_large,
                                  "census enumeration exceeded budget");
            if (pos == idx.size()) {
                long long mult;
                int v1_bound;
                long long d = degree;
                if (j_count == 0) {
                    mult = 1;
                    v1_bound = -1;  // free F2[v1]-tower on x_{J'} t_{J'}
                } else {
                    mult = (long long)census_family_size(j_count);
                    v1_bound = (j_count % 2 == 1) ? 1 : 2;
                    d += q1_shift * (long long)((j_count - 1) / 2 + 1);
                }
                add_family(out.at(int(weight)), int(d), 0, v1_bound, mult);
                return;
            }
            const Idx& ix = idx[pos];
            rec(pos + 1, j_count, weight, degree);
            if (weight + ix.x_weight <= weight_max)
                rec(pos + 1, j_count + 1, weight + ix.x_weight, degree + ix.x_deg);
            if (weight + ix.xt_weight <= weight_max)
                rec(pos + 1, j_count, weight + ix.xt_weight, degree + ix.xt_deg);
        };
    rec(0, 0, 0, 0);
    return out;
}

std::map<int, BigradedSeries> census_bbt(unsigned n, const Window& window, int weight_max,
                                         int q1_shift, unsigned long long budget)
{
    std::map<int, BigradedSeries> out;
    for (auto& [w, fams] : census_bbt_families(n, weight_max, q1_shift, budget))
        out.emplace(w, family_dims(fams, window));
    return out;
}

DecompositionReport shift_report(const DecompositionReport& r, int delta_internal)
{
    DecompositionReport out = r;
    for (auto& s : out.summands)
        s.internal_shift += delta_internal;
    std::sort(out.summands.begin(), out.summands.end());
    return out;
}

std::string report_to_json(const DecompositionReport& r)
{
    std::ostringstream os;
    os << "{\"locality\":\"" << locality_name(r.locality) << "\",\"source\":\"" << r.source
       << "\",\"summands\":[";
    bool first = true;
    for (auto& s : r.summands) {
        if (!first)
            os << ',';
        first = false;
        os << "{\"kind\":\"" << kind_name(s.kind) << "\",\"shift\":[" << s.internal_shift
           << ',' << s.filtration_shift << "],\"mult\":" << s.multiplicity << '}';
    }
    os << "]}";
    return os.str();
}

std::string series_to_csv(const std::map<int, BigradedSeries>& by_weight)
{
    std::ostringstream os;
    os << "n,s,weight,dim\n";
    for (auto& [w, series] : by_weight)
        for (auto& [ns, d] : series.dim)
            os << ns.first << ',' << ns.second << ',' << w << ',' << d << '\n';
    return os.str();
}

}  // namespace tmfres
