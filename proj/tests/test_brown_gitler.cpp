#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmfres/brown_gitler.hpp"

using namespace tmfres;

namespace {
RingElement R(const std::string& text) { return normalize(parse_element(text), RingId::R); }
RingElement Rp(const std::string& text)
{
    return normalize(parse_element(text), RingId::RPrime);
}
}  // namespace

TEST_CASE("bg_poly reproduces table rows")
{
    CHECK(bg_poly(0) == one(RingId::R));
    CHECK(bg_poly(1) == R("x"));
    CHECK(bg_poly(2) == R("t x + s t^2"));
    CHECK(bg_poly(7) == R("s^2 t^7 y + 2 s t^6 x"));
    CHECK(bg_poly(15) == R("s^5 t^17 y + t^{13} y + 2 s t^{13} x^2"));
    CHECK(bg_poly(16) == R("s^3 t^{16} y + s t^{14} x^2 + 2 s^2 t^{15} x + s t^{15} x + t^{15} x + s t^{16}"));
}

TEST_CASE("bg_poly_gloc hand-expanded values")
{
    CHECK(bg_poly_gloc(0) == one(RingId::RPrime));
    CHECK(bg_poly_gloc(3) == Rp("t x^2"));
    // f'_7 = t^3 x f'_3 = t^4 x^3 = 2 s t^6 x in R'
    CHECK(bg_poly_gloc(7) == Rp("2 s t^6 x"));
}

TEST_CASE("power_table rows")
{
    auto rows = power_table(8);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].first == 3);
    CHECK(rows[0].second == R("s^2 t^3 y + 2 s t^2 x"));
    CHECK(rows[2].second == R("s^6 t^7 y + 4 s^3 t^5 y + t^3 y + 4 s^2 t^4 x"));
    // x^8 contains t^4 y with coefficient 1
    auto it = rows[5].second.terms().find(Monomial{0, 4, Gen::Y});
    REQUIRE(it != rows[5].second.terms().end());
    CHECK(it->second == 1);
}

TEST_CASE("verify_parity")
{
    CHECK(verify_parity(0).ok);
    CHECK(verify_parity(2).ok);
    CHECK(verify_parity(7).ok);
    for (unsigned j = 0; j <= 64; ++j)
        CHECK(verify_parity(j).ok);
    // odd f'_j have no constant monomials at all
    for (unsigned j = 1; j <= 64; j += 2) {
        RingElement f = bg_poly_gloc(j);
        for (auto& [m, c] : f.terms())
            CHECK(m.gen != Gen::One);
    }
}

TEST_CASE("compare_mod_y")
{
    CHECK(compare_mod_y(1));
    CHECK(compare_mod_y(7));
    for (unsigned j = 0; j <= 64; ++j)
        CHECK(compare_mod_y(j));
}

TEST_CASE("all bg coefficients nonnegative")
{
    for (unsigned j = 0; j <= 64; ++j) {
        RingElement f = bg_poly(j), fp = bg_poly_gloc(j);
        for (auto& [m, c] : f.terms())
            CHECK(c > 0);
        for (auto& [m, c] : fp.terms())
            CHECK(c > 0);
    }
}

TEST_CASE("memo bound is enforced")
{
    CHECK_THROWS_AS(bg_poly(300), DomainError);
}
