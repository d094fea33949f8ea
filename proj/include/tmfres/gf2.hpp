#pragma once

#include <cstdint>
#include <cstddef>
#include <map>
#include <vector>

namespace tmfres::gf2 {

// Bit-packed vector over the two-element field.
struct BitVec {
    size_t width = 0;
    std::vector<uint64_t> w;

    BitVec() = default;
    explicit BitVec(size_t n) : width(n), w((n + 63) / 64, 0) {}

    bool get(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    void set(size_t i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
    void clear(size_t i) { w[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

    void operator^=(const BitVec& o)
    {
        for (size_t k = 0; k < w.size(); ++k)
            w[k] ^= o.w[k];
    }

    bool zero() const
    {
        for (uint64_t x : w)
            if (x)
                return false;
        return true;
    }

    // Index of the lowest set bit, or -1.
    long lowest() const
    {
        for (size_t k = 0; k < w.size(); ++k)
            if (w[k])
                return long(k * 64 + __builtin_ctzll(w[k]));
        return -1;
    }

    size_t count() const
    {
        size_t c = 0;
        for (uint64_t x : w)
            c += size_t(__builtin_popcountll(x));
        return c;
    }

    std::vector<size_t> bits() const
    {
        std::vector<size_t> out;
        for (size_t k = 0; k < w.size(); ++k) {
            uint64_t x = w[k];
            while (x) {
                out.push_back(k * 64 + size_t(__builtin_ctzll(x)));
                x &= x - 1;
            }
        }
        return out;
    }

    bool operator==(const BitVec& o) const { return width == o.width && w == o.w; }
};

// Row space in reduced echelon form, pivot = lowest set bit of each row.
// insert() keeps the form reduced so membership tests are a single sweep.
class Echelon {
public:
    // Reduces v against the current rows in place; returns the residue.
    BitVec reduce(BitVec v) const
    {
        for (;;) {
            long p = v.lowest();
            if (p < 0)
                return v;
            auto it = rows_.find(size_t(p));
            if (it == rows_.end())
                return v;
            v ^= it->second;
        }
    }

    // Returns true if v enlarged the span.
    bool insert(const BitVec& v)
    {
        BitVec r = reduce(v);
        long p = r.lowest();
        if (p < 0)
            return false;
        for (auto& [q, row] : rows_)
            if (row.get(size_t(p)))
                row ^= r;
        rows_.emplace(size_t(p), std::move(r));
        return true;
    }

    bool contains(const BitVec& v) const { return reduce(v).zero(); }
    size_t rank() const { return rows_.size(); }

    std::vector<BitVec> basis() const
    {
        std::vector<BitVec> out;
        out.reserve(rows_.size());
        for (auto& [p, row] : rows_)
            out.push_back(row);
        return out;
    }

private:
    std::map<size_t, BitVec> rows_;  // pivot -> row, ordered for determinism
};

inline size_t rank_of(const std::vector<BitVec>& vecs)
{
    Echelon e;
    for (auto& v : vecs)
        e.insert(v);
    return e.rank();
}

// Kernel of the linear map sending domain basis vector i to images[i].
// Row-reduces [images | I] and returns the combination parts of zero rows.
inline std::vector<BitVec> kernel_basis(const std::vector<BitVec>& images, size_t codim)
{
    size_t n = images.size();
    struct Row {
        BitVec img, comb;
    };
    std::vector<Row> rows;
    rows.reserve(n);
    std::map<size_t, size_t> pivot_of;  // image pivot -> row index
    std::vector<BitVec> kernel;
    for (size_t i = 0; i < n; ++i) {
        BitVec img = images[i];
        img.width = codim;
        BitVec comb(n);
        comb.set(i);
        bool in_kernel = false;
        for (;;) {
            long p = img.lowest();
            if (p < 0) {
                in_kernel = true;
                break;
            }
            auto it = pivot_of.find(size_t(p));
            if (it == pivot_of.end()) {
                pivot_of.emplace(size_t(p), rows.size());
                rows.push_back({std::move(img), std::move(comb)});
                break;
            }
            img ^= rows[it->second].img;
            comb ^= rows[it->second].comb;
        }
        if (in_kernel)
            kernel.push_back(std::move(comb));
    }
    return kernel;
}

}  // namespace tmfres::gf2
