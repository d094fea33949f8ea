#include "tmfres/brown_gitler.hpp"

#include <mutex>
#include <sstream>
#include <unordered_map>

namespace tmfres {

namespace {

RingElement bg_impl(unsigned j, RingId ring, unsigned max_index,
                    std::unordered_map<unsigned, RingElement>& memo)
{
    if (j > max_index)
        throw DomainError(errc::budget_exceeded,
                          "f_" + std::to_string(j) + " exceeds memo bound " +
                              std::to_string(max_index));
    auto it = memo.find(j);
    if (it != memo.end())
        return it->second;

    RingElement out(ring);
    if (j == 0) {
        out = one(ring);
    } else if (j == 1) {
        out = monomial_element(ring, 0, 0, Gen::X);
    } else if (j % 2 == 1) {
        unsigned h = j / 2;  // j = 2h+1
        out = mul(monomial_element(ring, 0, int(h), Gen::X),
                  bg_impl(h, ring, max_index, memo));
    } else {
        unsigned h = j / 2;  // j = 2h
        out = add(mul(monomial_element(ring, 0, int(h), Gen::One),
                      bg_impl(h, ring, max_index, memo)),
                  mul(monomial_element(ring, 1, int(h) + 1, Gen::One),
                      bg_impl(h - 1, ring, max_index, memo)));
    }
    memo.emplace(j, out);
    return out;
}

std::mutex g_memo_mutex;

}  // namespace

RingElement bg_poly(unsigned j, unsigned max_index)
{
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    static std::unordered_map<unsigned, RingElement> memo;
    return bg_impl(j, RingId::R, max_index, memo);
}

RingElement bg_poly_gloc(unsigned j, unsigned max_index)
{
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    static std::unordered_map<unsigned, RingElement> memo;
    return bg_impl(j, RingId::RPrime, max_index, memo);
}

std::vector<std::pair<unsigned, RingElement>> power_table(unsigned k_max)
{
    std::vector<std::pair<unsigned, RingElement>> rows;
    RingElement x = monomial_element(RingId::R, 0, 0, Gen::X);
    RingElement acc = pow(x, 3);
    for (unsigned k = 3; k <= k_max; ++k) {
        rows.emplace_back(k, acc);
        if (k < k_max)
            acc = mul(acc, x);
    }
    return rows;
}

ParityReport verify_parity(unsigned j)
{
    ParityReport rep;
    rep.j = j;
    rep.ok = true;
    RingElement f = bg_poly_gloc(j);
    std::ostringstream bad;
    for (auto& [m, c] : f.terms()) {
        int expect_t = -1;
        bool allowed = true;
        switch (m.gen) {
            case Gen::One:
                expect_t = int(j);
                allowed = (j % 2 == 0);
                break;
            case Gen::X: expect_t = int(j) - 1; break;
            case Gen::X2: expect_t = int(j) - 2; break;
            case Gen::Y: allowed = false; break;
        }
        if (!allowed || m.t_exp != expect_t || c < 0) {
            rep.ok = false;
            bad << " [" << c << " s^" << m.s_exp << " t^" << m.t_exp << " " << gen_name(m.gen)
                << "]";
        }
    }
    rep.detail = bad.str();
    return rep;
}

bool compare_mod_y(unsigned j)
{
    return project_mod_y(bg_poly(j)) == embed_gprime(bg_poly_gloc(j));
}

}  // namespace tmfres
