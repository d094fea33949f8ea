#include "tmfres/milnor.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tmfres {

AlgebraElement milnor_product(const Algebra& alg, const MilnorTuple& a, const MilnorTuple& b)
{
    // Milnor matrices X = (x_{ij}) with x_{i0}, x_{0j} as leftovers:
    //   a.r[i-1] = sum_{j>=0} 2^j x_{ij},   b.r[j-1] = sum_{i>=0} x_{ij}.
    // Result tuple t_k = sum_{i+j=k} x_{ij}; a matrix contributes iff every
    // diagonal has pairwise disjoint binary digits (odd multinomial).
    std::map<std::array<int, 7>, int> terms;  // full tuple -> parity

    std::array<std::array<int, 4>, 4> x{};
    auto rec = [&](auto&& self, int i, int j) -> void {
        if (i == 4) {
            bool ok = true;
            for (int col = 1; col <= 3; ++col) {
                int used = 0;
                for (int row = 1; row <= 3; ++row)
                    used += x[size_t(row)][size_t(col)];
                int left = b.r[size_t(col - 1)] - used;
                if (left < 0) {
                    ok = false;
                    break;
                }
                x[0][size_t(col)] = left;
            }
            if (!ok)
                return;
            std::array<int, 7> t{};
            bool odd = true;
            for (int k = 1; k <= 6 && odd; ++k) {
                long long sum = 0, bits = 0;
                for (int i2 = 0; i2 <= k; ++i2) {
                    int j2 = k - i2;
                    if (i2 > 3 || j2 > 3)
                        continue;
                    int v = x[size_t(i2)][size_t(j2)];
                    sum += v;
                    bits |= v;
                }
                if (sum != bits)
                    odd = false;
                t[size_t(k)] = int(sum);
            }
            if (!odd)
                return;
            auto [it, fresh] = terms.try_emplace(t, 1);
            if (!fresh)
                it->second ^= 1;
            return;
        }
        if (j == 4) {
            // row leftover x_{i0} = a.r[i-1] - sum_{j>=1} 2^j x_{ij}
            int used = 0;
            for (int col = 1; col <= 3; ++col)
                used += (1 << col) * x[size_t(i)][size_t(col)];
            int left = a.r[size_t(i - 1)] - used;
            if (left < 0)
                return;
            x[size_t(i)][0] = left;
            self(self, i + 1, 1);
            return;
        }
        int budget = a.r[size_t(i - 1)];
        for (int col = 1; col < j; ++col)
            budget -= (1 << col) * x[size_t(i)][size_t(col)];
        int max_v = budget >> j;
        for (int v = 0; v <= max_v; ++v) {
            x[size_t(i)][size_t(j)] = v;
            self(self, i, j + 1);
        }
        x[size_t(i)][size_t(j)] = 0;
    };
    rec(rec, 1, 1);

    AlgebraElement out = 0;
    for (auto& [t, parity] : terms) {
        if (!parity)
            continue;
        // Surviving terms must stay inside the subalgebra; anything else
        // means the inputs were not both in the profile.
        if (t[4] || t[5] || t[6])
            throw DomainError(errc::not_exterior, "milnor product escaped profile length");
        MilnorTuple mt;
        mt.r = {t[1], t[2], t[3]};
        int idx = alg.index_of(mt);
        if (idx < 0)
            throw DomainError(errc::not_exterior, "milnor product escaped profile bounds");
        out ^= AlgebraElement(1) << idx;
    }
    return out;
}

Algebra::Algebra(int profile) : profile_(profile)
{
    bounds_ = {(1 << (profile + 1)) - 1, profile >= 1 ? (1 << profile) - 1 : 0,
               profile >= 2 ? (1 << (profile - 1)) - 1 : 0};
    for (int r3 = 0; r3 <= bounds_[2]; ++r3)
        for (int r2 = 0; r2 <= bounds_[1]; ++r2)
            for (int r1 = 0; r1 <= bounds_[0]; ++r1) {
                MilnorTuple t;
                t.r = {r1, r2, r3};
                basis_.push_back(t);
            }
    std::sort(basis_.begin(), basis_.end(), [](const MilnorTuple& a, const MilnorTuple& b) {
        if (a.degree() != b.degree())
            return a.degree() < b.degree();
        return a.r < b.r;
    });
    deg_.resize(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) {
        deg_[i] = basis_[i].degree();
        top_degree_ = std::max(top_degree_, deg_[i]);
    }
    by_degree_.assign(size_t(top_degree_) + 1, {});
    for (size_t i = 0; i < basis_.size(); ++i)
        by_degree_[size_t(deg_[i])].push_back(int(i));

    table_.assign(basis_.size() * basis_.size(), 0);
    for (size_t a = 0; a < basis_.size(); ++a)
        for (size_t b = 0; b < basis_.size(); ++b)
            table_[a * basis_.size() + b] = milnor_product(*this, basis_[a], basis_[b]);

    // antipode by degree recursion: chi(Sq(R)) = sum_{R1+R2=R, R2 != 0} chi(Sq(R1)) Sq(R2)
    antipode_.assign(basis_.size(), 0);
    for (int d = 0; d <= top_degree_; ++d)
        for (int idx : by_degree_[size_t(d)]) {
            if (d == 0) {
                antipode_[size_t(idx)] = 1;
                continue;
            }
            AlgebraElement acc = 0;
            const auto& r = basis_[size_t(idx)].r;
            for (int a1 = 0; a1 <= r[0]; ++a1)
                for (int a2 = 0; a2 <= r[1]; ++a2)
                    for (int a3 = 0; a3 <= r[2]; ++a3) {
                        MilnorTuple r2;
                        r2.r = {r[0] - a1, r[1] - a2, r[2] - a3};
                        if (r2.degree() == 0)
                            continue;
                        MilnorTuple r1;
                        r1.r = {a1, a2, a3};
                        int i1 = index_of(r1), i2 = index_of(r2);
                        acc ^= mul(antipode_[size_t(i1)], AlgebraElement(1) << i2);
                    }
            antipode_[size_t(idx)] = acc;
        }

    for (int k = 0; k <= profile_; ++k)
        generators_.push_back(sq(1 << k));

    // Word basis: BFS over products of generators, reduced echelon over the
    // basis-mask space.  Each pivot row remembers which multiset of words
    // sums to it, so arbitrary elements expand into generator words.
    using WordSet = std::map<std::vector<int>, int>;  // word -> parity
    struct Row {
        AlgebraElement vec;
        WordSet words;
    };
    auto ws_xor = [](WordSet& a, const WordSet& b) {
        for (auto& [w, p] : b) {
            if (!p)
                continue;
            auto [it, fresh] = a.try_emplace(w, 1);
            if (!fresh) {
                it->second ^= 1;
                if (!it->second)
                    a.erase(it);
            }
        }
    };
    std::map<int, Row> pivots;  // pivot bit -> reduced row
    struct Frontier {
        AlgebraElement vec;
        std::vector<int> word;
    };
    std::vector<Frontier> frontier;
    auto reduce_insert = [&](AlgebraElement v, const std::vector<int>& word) -> bool {
        AlgebraElement r = v;
        WordSet combo;
        combo.emplace(word, 1);
        for (;;) {
            if (!r)
                return false;
            int p = __builtin_ctzll(r);
            auto it = pivots.find(p);
            if (it == pivots.end())
                break;
            r ^= it->second.vec;
            ws_xor(combo, it->second.words);
        }
        pivots.emplace(__builtin_ctzll(r), Row{r, std::move(combo)});
        frontier.push_back(Frontier{v, word});
        return true;
    };
    reduce_insert(1, {});
    for (size_t i = 0; i < frontier.size(); ++i) {
        Frontier cur = frontier[i];
        for (int g : generators_) {
            AlgebraElement v = mul(AlgebraElement(1) << g, cur.vec);
            if (!v)
                continue;
            std::vector<int> w;
            w.push_back(degree(g));
            w.insert(w.end(), cur.word.begin(), cur.word.end());
            reduce_insert(v, w);
        }
    }
    if (pivots.size() != basis_.size())
        throw DomainError(errc::not_exterior, "generators fail to span the algebra");

    word_expr_.assign(basis_.size(), {});
    for (size_t idx = 0; idx < basis_.size(); ++idx) {
        AlgebraElement r = AlgebraElement(1) << idx;
        WordSet combo;
        while (r) {
            int p = __builtin_ctzll(r);
            const Row& row = pivots.at(p);
            r ^= row.vec;
            ws_xor(combo, row.words);
        }
        for (auto& [w, parity] : combo)
            if (parity)
                word_expr_[idx].push_back(w);
    }
}

const Algebra& Algebra::A(int n)
{
    static const Algebra a0(0), a1(1), a2(2);
    switch (n) {
        case 0: return a0;
        case 1: return a1;
        case 2: return a2;
    }
    throw DomainError(errc::window_too_large, "only A(0), A(1), A(2) supported");
}

int Algebra::index_of(const MilnorTuple& t) const
{
    if (t.r[0] < 0 || t.r[0] > bounds_[0] || t.r[1] < 0 || t.r[1] > bounds_[1] || t.r[2] < 0 ||
        t.r[2] > bounds_[2])
        return -1;
    int d = t.degree();
    if (d > top_degree_)
        return -1;
    for (int idx : by_degree_[size_t(d)])
        if (basis_[size_t(idx)].r == t.r)
            return idx;
    return -1;
}

const std::vector<int>& Algebra::basis_in_degree(int d) const
{
    static const std::vector<int> empty;
    if (d < 0 || d > top_degree_)
        return empty;
    return by_degree_[size_t(d)];
}

AlgebraElement Algebra::mul(AlgebraElement a, AlgebraElement b) const
{
    AlgebraElement out = 0;
    for (AlgebraElement x = a; x; x &= x - 1) {
        int i = __builtin_ctzll(x);
        for (AlgebraElement y = b; y; y &= y - 1) {
            int j = __builtin_ctzll(y);
            out ^= mul(i, j);
        }
    }
    return out;
}

AlgebraElement Algebra::antipode(AlgebraElement a) const
{
    AlgebraElement out = 0;
    for (AlgebraElement x = a; x; x &= x - 1)
        out ^= antipode_[size_t(__builtin_ctzll(x))];
    return out;
}

std::vector<std::pair<int, int>> Algebra::coproduct(int idx) const
{
    std::vector<std::pair<int, int>> out;
    const auto& r = basis_[size_t(idx)].r;
    for (int a1 = 0; a1 <= r[0]; ++a1)
        for (int a2 = 0; a2 <= r[1]; ++a2)
            for (int a3 = 0; a3 <= r[2]; ++a3) {
                MilnorTuple l, rr;
                l.r = {a1, a2, a3};
                rr.r = {r[0] - a1, r[1] - a2, r[2] - a3};
                out.emplace_back(index_of(l), index_of(rr));
            }
    return out;
}

int Algebra::sq(int i) const
{
    MilnorTuple t;
    t.r = {i, 0, 0};
    return index_of(t);
}

int Algebra::q0() const { return sq(1); }

int Algebra::q1() const
{
    MilnorTuple t;
    t.r = {0, 1, 0};
    return index_of(t);
}

int Algebra::q2() const
{
    MilnorTuple t;
    t.r = {0, 0, 1};
    return index_of(t);
}

int Algebra::p21() const
{
    MilnorTuple t;
    t.r = {0, 2, 0};
    return index_of(t);
}

std::string Algebra::element_name(int idx) const
{
    const auto& r = basis_[size_t(idx)].r;
    std::ostringstream os;
    os << "Sq(" << r[0];
    if (r[1] || r[2])
        os << "," << r[1];
    if (r[2])
        os << "," << r[2];
    os << ")";
    return os.str();
}

std::string Algebra::format(AlgebraElement a) const
{
    if (!a)
        return "0";
    std::ostringstream os;
    bool first = true;
    for (AlgebraElement x = a; x; x &= x - 1) {
        if (!first)
            os << " + ";
        first = false;
        os << element_name(__builtin_ctzll(x));
    }
    return os.str();
}

}  // namespace tmfres
