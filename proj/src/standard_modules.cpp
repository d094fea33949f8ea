#include <algorithm>
#include <map>
#include <numeric>

#include "tmfres/module.hpp"

namespace tmfres {

using gf2::BitVec;

namespace {

// Arithmetic in the dual A(2)_* = F2[xi1, xi2, xi3]/(xi1^8, xi2^4, xi3^2).
// Monomial index = a + 8b + 32c for xi1^a xi2^b xi3^c; elements are masks.
struct DualRing {
    static int mono(int a, int b, int c)
    {
        if (a > 7 || b > 3 || c > 1)
            return -1;
        return a + 8 * b + 32 * c;
    }

    static uint64_t mul(uint64_t x, uint64_t y)
    {
        uint64_t out = 0;
        for (uint64_t u = x; u; u &= u - 1) {
            int i = __builtin_ctzll(u);
            int a1 = i & 7, b1 = (i >> 3) & 3, c1 = (i >> 5) & 1;
            for (uint64_t v = y; v; v &= v - 1) {
                int j = __builtin_ctzll(v);
                int a2 = j & 7, b2 = (j >> 3) & 3, c2 = (j >> 5) & 1;
                int m = mono(a1 + a2, b1 + b2, c1 + c2);
                if (m >= 0)
                    out ^= uint64_t(1) << m;
            }
        }
        return out;
    }

    static uint64_t power(uint64_t x, int e)
    {
        uint64_t acc = 1;  // monomial 1
        while (e-- > 0)
            acc = mul(acc, x);
        return acc;
    }

    // conjugates zeta_i = chi(xi_i) reduced into the quotient; zero for i >= 4
    static uint64_t zeta(int i)
    {
        switch (i) {
            case 0: return 1;
            case 1: return uint64_t(1) << mono(1, 0, 0);
            case 2: return (uint64_t(1) << mono(0, 1, 0)) ^ (uint64_t(1) << mono(3, 0, 0));
            case 3:
                return (uint64_t(1) << mono(0, 0, 1)) ^ (uint64_t(1) << mono(1, 2, 0)) ^
                       (uint64_t(1) << mono(4, 1, 0)) ^ (uint64_t(1) << mono(7, 0, 0));
            default: return 0;
        }
    }
};

// A generator zeta_n^p of the truncated polynomial comodule algebra;
// exp_cap = 0 means polynomial, otherwise exponents < exp_cap.
struct ComodGen {
    int n;        // zeta index
    int p;        // power (a power of two)
    int exp_cap;  // 0 = unbounded
    int degree;   // p * (2^n - 1)
    long long weight;  // p * 2^{n-1}
};

struct Basis {
    std::vector<ComodGen> gens;
    std::vector<std::vector<int>> monos;  // exponent vectors, deterministic order
    std::map<std::vector<int>, int> index;
    std::vector<int> degrees;

    int find(const std::vector<int>& e) const
    {
        auto it = index.find(e);
        return it == index.end() ? -1 : it->second;
    }
};

Basis enumerate_basis(std::vector<ComodGen> gens, long long weight_bound, size_t budget)
{
    Basis b;
    b.gens = std::move(gens);
    std::vector<int> e(b.gens.size(), 0);
    std::vector<std::pair<std::pair<int, std::vector<int>>, int>> collected;
    auto rec = [&](auto&& self, size_t k, long long wt, int deg) -> void {
        if (k == b.gens.size()) {
            collected.push_back({{deg, e}, 0});
            if (collected.size() > budget)
                throw DomainError(errc::budget_exceeded, "comodule basis exceeds budget");
            return;
        }
        const ComodGen& g = b.gens[k];
        for (int cnt = 0;; ++cnt) {
            if (g.exp_cap && cnt >= g.exp_cap)
                break;
            long long w = wt + (long long)cnt * g.weight;
            if (weight_bound >= 0 && w > weight_bound)
                break;
            e[k] = cnt;
            self(self, k + 1, w, deg + cnt * g.degree);
            if (g.weight == 0 && cnt > 64)
                break;  // safety, not reachable for real generators
        }
        e[k] = 0;
    };
    rec(rec, 0, 0, 0);
    std::sort(collected.begin(), collected.end());
    for (auto& [key, unused] : collected) {
        b.index.emplace(key.second, int(b.monos.size()));
        b.monos.push_back(key.second);
        b.degrees.push_back(key.first);
    }
    return b;
}

// Coaction element: right comodule monomial index -> left dual-ring mask.
using Coaction = std::map<int, uint64_t>;

// psi of a single generator zeta_n^p, as (left mask, exponent vector) pairs.
std::vector<std::pair<uint64_t, std::vector<int>>> gen_coaction(const Basis& b,
                                                                const ComodGen& g)
{
    std::vector<std::pair<uint64_t, std::vector<int>>> out;
    for (int i = 0; i <= g.n; ++i) {
        uint64_t left = DualRing::power(DualRing::zeta(i), g.p);
        if (!left)
            continue;
        std::vector<int> right(b.gens.size(), 0);
        int rn = g.n - i;
        if (rn > 0) {
            long long rp = (long long)g.p << i;  // zeta_{n-i}^{p 2^i}
            bool placed = false;
            for (size_t k = 0; k < b.gens.size(); ++k)
                if (b.gens[k].n == rn) {
                    if (rp % b.gens[k].p)
                        throw DomainError(errc::degree_mismatch,
                                          "coaction right factor not in the subalgebra");
                    int cnt = int(rp / b.gens[k].p);
                    if (b.gens[k].exp_cap && cnt >= b.gens[k].exp_cap) {
                        placed = true;  // killed by the truncation
                        right.clear();
                    } else {
                        right[k] = cnt;
                        placed = true;
                    }
                    break;
                }
            if (!placed)
                throw DomainError(errc::degree_mismatch, "coaction needs missing generator");
            if (right.empty())
                continue;
        }
        out.push_back({left, std::move(right)});
    }
    return out;
}

Coaction coaction_of_monomial(const Basis& b,
                              const std::vector<std::vector<std::pair<uint64_t, std::vector<int>>>>& gen_psi,
                              const std::vector<int>& mono)
{
    Coaction acc;
    acc.emplace(b.find(std::vector<int>(b.gens.size(), 0)), uint64_t(1));
    for (size_t k = 0; k < b.gens.size(); ++k)
        for (int rep = 0; rep < mono[k]; ++rep) {
            Coaction next;
            for (auto& [right_idx, left] : acc) {
                const std::vector<int>& rmono = b.monos[size_t(right_idx)];
                for (auto& [gl, gr] : gen_psi[k]) {
                    uint64_t l = DualRing::mul(left, gl);
                    if (!l)
                        continue;
                    std::vector<int> r = rmono;
                    bool dead = false;
                    for (size_t q = 0; q < r.size(); ++q) {
                        r[q] += gr[q];
                        if (b.gens[q].exp_cap && r[q] >= b.gens[q].exp_cap)
                            dead = true;
                    }
                    if (dead)
                        continue;
                    int idx = b.find(r);
                    if (idx < 0)
                        continue;  // outside the weight window: cannot happen
                    auto [it, fresh] = next.try_emplace(idx, l);
                    if (!fresh)
                        it->second ^= l;
                }
            }
            for (auto it = next.begin(); it != next.end();)
                it = it->second == 0 ? next.erase(it) : std::next(it);
            acc = std::move(next);
        }
    return acc;
}

CompiledModule comodule_dual_module(const Algebra& alg, const Basis& b, size_t budget)
{
    if (b.monos.size() > budget)
        throw DomainError(errc::budget_exceeded, "module dimension exceeds budget");
    std::vector<std::vector<std::pair<uint64_t, std::vector<int>>>> gen_psi;
    for (auto& g : b.gens)
        gen_psi.push_back(gen_coaction(b, g));

    size_t n = b.monos.size();
    std::vector<Coaction> psi;
    psi.reserve(n);
    for (auto& mono : b.monos)
        psi.push_back(coaction_of_monomial(b, gen_psi, mono));

    // Sq(R) m*_g = sum over h with xi^R (x) g in psi(h); columns indexed by g.
    std::vector<std::vector<BitVec>> gens;
    for (int gb : alg.generators()) {
        int i = alg.degree(gb);
        int mono_idx = DualRing::mono(i, 0, 0);
        std::vector<BitVec> mat(n, BitVec(n));
        for (size_t h = 0; h < n; ++h)
            for (auto& [g, left] : psi[h])
                if ((left >> mono_idx) & 1)
                    mat[size_t(g)].set(h);
        gens.push_back(std::move(mat));
    }
    CompiledModule m =
        CompiledModule::from_generator_matrices(alg, b.degrees, std::move(gens));
    if (!m.check_axioms().empty())
        throw DomainError(errc::not_exterior, "constructed comodule dual is not a module");
    return m;
}

std::vector<ComodGen> bo_generators(long long weight_bound)
{
    // A // A(1)_* = F2[zeta1^4, zeta2^2, zeta3, zeta4, ...]
    std::vector<ComodGen> gens;
    gens.push_back({1, 4, 0, 4, 4});
    gens.push_back({2, 2, 0, 6, 4});
    for (int n = 3; (1LL << (n - 1)) <= weight_bound; ++n)
        gens.push_back({n, 1, 0, (1 << n) - 1, 1LL << (n - 1)});
    return gens;
}

std::vector<ComodGen> tmf_generators(long long weight_bound)
{
    // A // A(2)_* = F2[zeta1^8, zeta2^4, zeta3^2, zeta4, ...]
    std::vector<ComodGen> gens;
    gens.push_back({1, 8, 0, 8, 8});
    gens.push_back({2, 4, 0, 12, 8});
    gens.push_back({3, 2, 0, 14, 8});
    for (int n = 4; (1LL << (n - 1)) <= weight_bound; ++n)
        gens.push_back({n, 1, 0, (1 << n) - 1, 1LL << (n - 1)});
    return gens;
}

CompiledModule build_m1()
{
    SteenrodModule m;
    m.alg = &Algebra::A(2);
    m.degrees = {0, 2, 3};
    m.action.emplace(std::make_pair(2, 0), std::vector<int>{1});  // Sq^2 x0 = x2
    m.action.emplace(std::make_pair(1, 1), std::vector<int>{2});  // Sq^1 x2 = x3
    return CompiledModule(m);
}

CompiledModule build_regular(const Algebra& alg)
{
    std::vector<int> degrees(size_t(alg.dim()), 0);
    for (int i = 0; i < alg.dim(); ++i)
        degrees[size_t(i)] = alg.degree(i);
    std::vector<std::vector<BitVec>> gens;
    for (int g : alg.generators()) {
        std::vector<BitVec> mat(size_t(alg.dim()), BitVec{size_t(alg.dim())});
        for (int col = 0; col < alg.dim(); ++col) {
            AlgebraElement prod = alg.mul(g, col);
            for (AlgebraElement x = prod; x; x &= x - 1)
                mat[size_t(col)].set(size_t(__builtin_ctzll(x)));
        }
        gens.push_back(std::move(mat));
    }
    return CompiledModule::from_generator_matrices(alg, std::move(degrees), std::move(gens));
}

}  // namespace

CompiledModule build_standard(StandardModule name, unsigned j, size_t budget)
{
    const Algebra& a2 = Algebra::A(2);
    switch (name) {
        case StandardModule::BO: {
            long long w = 4LL * j;
            return comodule_dual_module(a2, enumerate_basis(bo_generators(w), w, budget),
                                        budget);
        }
        case StandardModule::TMF: {
            long long w = 8LL * j;
            return comodule_dual_module(a2, enumerate_basis(tmf_generators(w), w, budget),
                                        budget);
        }
        case StandardModule::A2modA1: {
            // A(2) // A(1)_* = truncated on zeta1^4, zeta2^2, zeta3 with squares zero
            std::vector<ComodGen> gens;
            gens.push_back({1, 4, 2, 4, 4});
            gens.push_back({2, 2, 2, 6, 4});
            gens.push_back({3, 1, 2, 7, 4});
            return comodule_dual_module(a2, enumerate_basis(std::move(gens), -1, budget),
                                        budget);
        }
        case StandardModule::M1: return build_m1();
        case StandardModule::DualBO1: return dual(build_standard(StandardModule::BO, 1));
        case StandardModule::Regular: return build_regular(a2);
    }
    throw DomainError(errc::unsupported_kind, "unknown standard module");
}

}  // namespace tmfres
