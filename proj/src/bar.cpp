#include "tmfres/bar.hpp"

#include <algorithm>
#include <unordered_map>

namespace tmfres {

using gf2::BitVec;

namespace {

// A bar word (b_1 | ... | b_s | m) packed into 128 bits: six bits per letter
// (algebra basis index), eight for the module index.  Enough for s <= 20.
struct Key {
    uint64_t hi = 0, lo = 0;
    bool operator<(const Key& o) const { return hi != o.hi ? hi < o.hi : lo < o.lo; }
    bool operator==(const Key& o) const { return hi == o.hi && lo == o.lo; }
};

struct Tuple {
    std::vector<int> letters;
    int mod = 0;
};

Key encode(const Tuple& t)
{
    Key k;
    for (size_t i = 0; i < t.letters.size(); ++i) {
        uint64_t v = uint64_t(t.letters[i]) & 63;
        size_t pos = i * 6;
        if (pos < 64)
            k.lo |= v << pos;
        if (pos < 64 && pos + 6 > 64)
            k.hi |= v >> (64 - pos);
        if (pos >= 64)
            k.hi |= v << (pos - 64);
    }
    k.hi |= uint64_t(t.mod) << 56;
    return k;
}

long find_key(const std::vector<Key>& sorted, const Key& k)
{
    auto it = std::lower_bound(sorted.begin(), sorted.end(), k);
    if (it == sorted.end() || !(*it == k))
        return -1;
    return it - sorted.begin();
}

// Sparse GF(2) rank, columns streamed, pivot on the largest row index.
struct SparseRank {
    std::unordered_map<uint32_t, std::vector<uint32_t>> pivots;
    size_t rank = 0;
    unsigned long long ops = 0, max_ops;

    explicit SparseRank(unsigned long long budget) : max_ops(budget) {}

    static std::vector<uint32_t> xor_merge(const std::vector<uint32_t>& a,
                                           const std::vector<uint32_t>& b)
    {
        std::vector<uint32_t> out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] > b[j])
                out.push_back(a[i++]);
            else if (a[i] < b[j])
                out.push_back(b[j++]);
            else
                ++i, ++j;
        }
        out.insert(out.end(), a.begin() + long(i), a.end());
        out.insert(out.end(), b.begin() + long(j), b.end());
        return out;
    }

    void add_column(std::vector<uint32_t> col)  // sorted descending
    {
        while (!col.empty()) {
            uint32_t p = col.front();
            auto it = pivots.find(p);
            if (it == pivots.end()) {
                pivots.emplace(p, std::move(col));
                ++rank;
                return;
            }
            ops += col.size() + it->second.size();
            if (ops > max_ops)
                throw DomainError(errc::budget_exceeded, "bar elimination budget exceeded");
            col = xor_merge(col, it->second);
        }
    }
};

}  // namespace

CompiledModule trivial_module(const Algebra& alg)
{
    std::vector<std::vector<BitVec>> gens(alg.generators().size(), {BitVec(1)});
    return CompiledModule::from_generator_matrices(alg, {0}, std::move(gens));
}

std::map<std::pair<int, int>, int> bar_oracle(const CompiledModule& m, int t_max,
                                              const BarBudget& budget)
{
    const Algebra& alg = m.alg();
    if (m.dim() > 255)
        throw DomainError(errc::budget_exceeded, "bar oracle limited to 255 module basis elements");

    int min_deg = 0;
    for (int d : m.degrees())
        min_deg = std::min(min_deg, d);

    std::map<std::pair<int, int>, int> dims;     // H_{s,t}
    std::map<std::pair<int, int>, size_t> bsize; // block sizes
    std::map<std::pair<int, int>, size_t> ranks; // rank of d_{s,t}

    for (int t = min_deg; t <= t_max; ++t) {
        // blocks at this internal degree, s ascending
        std::vector<Key> prev_keys;  // block (s-1, t)
        // s = 0: module bucket
        {
            Tuple tup;
            std::vector<Key> keys;
            auto bucket = m.by_degree().find(t);
            if (bucket != m.by_degree().end())
                for (int g : bucket->second) {
                    tup.mod = g;
                    keys.push_back(encode(tup));
                }
            std::sort(keys.begin(), keys.end());
            bsize[{0, t}] = keys.size();
            prev_keys = std::move(keys);
        }
        for (int s = 1; t - s * 1 >= min_deg; ++s) {
            if (s > 20)
                throw DomainError(errc::budget_exceeded, "bar word length exceeds packing");
            // enumerate words of s letters of degree >= 1 summing with the
            // module degree to t
            std::vector<Key> keys;
            Tuple cur;
            cur.letters.resize(size_t(s));
            auto rec = [&](auto&& self, int pos, int left) -> void {
                if (pos == s) {
                    auto bucket = m.by_degree().find(left);
                    if (bucket == m.by_degree().end())
                        return;
                    for (int g : bucket->second) {
                        cur.mod = g;
                        keys.push_back(encode(cur));
                        if (keys.size() > budget.max_block)
                            throw DomainError(errc::budget_exceeded,
                                              "bar block size exceeds budget");
                    }
                    return;
                }
                int reserve = (s - pos - 1);  // each later letter needs >= 1
                for (int d = 1; d + reserve + min_deg <= left; ++d)
                    for (int b : alg.basis_in_degree(d)) {
                        cur.letters[size_t(pos)] = b;
                        self(self, pos + 1, left - d);
                    }
            };
            rec(rec, 0, t);
            if (keys.empty()) {
                bsize[{s, t}] = 0;
                ranks[{s, t}] = 0;
                break;
            }
            std::sort(keys.begin(), keys.end());
            bsize[{s, t}] = keys.size();

            // rank of d_s on this block
            SparseRank elim(budget.max_ops);
            std::vector<uint32_t> col;
            std::map<long, int> parity;
            for (auto& key : keys) {
                // decode via regeneration: tuples vector is in generation
                // order, not key order, so decode from the key itself
                Tuple tup;
                tup.letters.resize(size_t(s));
                for (int i = 0; i < s; ++i) {
                    size_t pos = size_t(i) * 6;
                    uint64_t v;
                    if (pos + 6 <= 64)
                        v = (key.lo >> pos) & 63;
                    else if (pos >= 64)
                        v = (key.hi >> (pos - 64)) & 63;
                    else
                        v = ((key.lo >> pos) | (key.hi << (64 - pos))) & 63;
                    tup.letters[size_t(i)] = int(v);
                }
                tup.mod = int(key.hi >> 56);

                parity.clear();
                // merges
                for (int i = 0; i + 1 < s; ++i) {
                    AlgebraElement prod = alg.mul(tup.letters[size_t(i)],
                                                  tup.letters[size_t(i) + 1]);
                    for (AlgebraElement x = prod; x; x &= x - 1) {
                        Tuple out;
                        out.letters.reserve(size_t(s) - 1);
                        for (int q = 0; q < s; ++q) {
                            if (q == i + 1)
                                continue;
                            out.letters.push_back(q == i ? __builtin_ctzll(x)
                                                         : tup.letters[size_t(q)]);
                        }
                        out.mod = tup.mod;
                        long idx = find_key(prev_keys, encode(out));
                        if (idx >= 0)
                            parity[idx] ^= 1;
                    }
                }
                // last letter acts on the module
                {
                    BitVec v{size_t(m.dim())};
                    v.set(size_t(tup.mod));
                    BitVec img = m.apply(tup.letters[size_t(s) - 1], v);
                    Tuple out;
                    out.letters.assign(tup.letters.begin(), tup.letters.end() - 1);
                    for (size_t g : img.bits()) {
                        out.mod = int(g);
                        long idx = find_key(prev_keys, encode(out));
                        if (idx >= 0)
                            parity[idx] ^= 1;
                    }
                }
                col.clear();
                for (auto it = parity.rbegin(); it != parity.rend(); ++it)
                    if (it->second)
                        col.push_back(uint32_t(it->first));
                elim.add_column(std::move(col));
                col = {};
            }
            ranks[{s, t}] = elim.rank;
            prev_keys = std::move(keys);
        }
    }

    for (auto& [st, size] : bsize) {
        auto [s, t] = st;
        size_t rk = ranks.count({s, t}) ? ranks[{s, t}] : 0;
        size_t rk_next = ranks.count({s + 1, t}) ? ranks[{s + 1, t}] : 0;
        long h = long(size) - long(rk) - long(rk_next);
        if (h > 0)
            dims[{s, t}] = int(h);
    }
    return dims;
}

}  // namespace tmfres
