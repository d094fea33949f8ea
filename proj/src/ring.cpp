#include "tmfres/ring.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>

namespace tmfres {

const char* ring_name(RingId r)
{
    switch (r) {
        case RingId::R: return "R";
        case RingId::RPrime: return "R'";
        case RingId::RModY: return "R/(y)";
    }
    return "?";
}

const char* gen_name(Gen g)
{
    switch (g) {
        case Gen::One: return "1";
        case Gen::X: return "x";
        case Gen::X2: return "x^2";
        case Gen::Y: return "y";
    }
    return "?";
}

namespace {

long long checked_add(long long a, long long b)
{
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw DomainError(errc::overflow, "coefficient overflow in addition");
    return r;
}

long long checked_mul(long long a, long long b)
{
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw DomainError(errc::overflow, "coefficient overflow in multiplication");
    return r;
}

bool has_window(RingId ring) { return ring != RingId::RPrime; }

// t^6 s^8 = 1: reduce s into [0,8), compensating t by -6 per 8 removed.
Monomial window_reduce(Monomial m, RingId ring)
{
    if (!has_window(ring))
        return m;
    int r = m.s_exp % 8;
    if (r < 0)
        r += 8;
    int k = (m.s_exp - r) / 8;
    m.s_exp = r;
    m.t_exp -= 6 * k;
    return m;
}

}  // namespace

void RingElement::add_term(const Monomial& m, long long c)
{
    if (c == 0)
        return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second = checked_add(it->second, c);
        if (it->second == 0)
            terms_.erase(it);
    }
}

RingElement normalize(const RawExpression& e, RingId ring, ReduceStrategy strategy)
{
    // Rewriting: y^2 -> (1 + s^-1 + t^2 s^2 + t^4 s^5) y, then x y -> (t^3 s^3
    // + t^5 s^6) y, then x^3 -> 2 t^2 s x (+ t^3 s^2 y in R).  Every rule
    // strictly drops x_exp + y_exp, so the stack shrinks in that measure.
    // The alternate strategy applies the rules in the reverse priority and
    // processes terms from the right; confluence tests compare the two.
    std::deque<RawTerm> work;
    if (strategy == ReduceStrategy::LeftToRight)
        work.assign(e.begin(), e.end());
    else
        work.assign(e.rbegin(), e.rend());

    RingElement out(ring);
    auto push = [&](RawTerm t) {
        if (t.coeff != 0)
            work.push_back(t);
    };

    while (!work.empty()) {
        RawTerm t = work.front();
        work.pop_front();
        if (t.coeff == 0)
            continue;
        if (t.y_exp > 0 && ring != RingId::R)
            throw DomainError(errc::y_in_y_free_ring,
                              std::string("y-term supplied to ") + ring_name(ring));

        bool rule_y2 = t.y_exp >= 2;
        bool rule_xy = t.x_exp >= 1 && t.y_exp >= 1;
        bool rule_x3 = t.x_exp >= 3;
        if (strategy == ReduceStrategy::RightToLeft) {
            if (rule_x3) {
                rule_y2 = rule_xy = false;
            } else if (rule_xy) {
                rule_y2 = false;
            }
        } else {
            if (rule_y2) {
                rule_xy = rule_x3 = false;
            } else if (rule_xy) {
                rule_x3 = false;
            }
        }

        if (rule_y2) {
            // y^2 = y + s^-1 y + t^2 s^2 y + t^4 s^5 y
            RawTerm b = t;
            b.y_exp -= 1;
            push(b);
            b = t, b.y_exp -= 1, b.s_exp -= 1;
            push(b);
            b = t, b.y_exp -= 1, b.s_exp += 2, b.t_exp += 2;
            push(b);
            b = t, b.y_exp -= 1, b.s_exp += 5, b.t_exp += 4;
            push(b);
        } else if (rule_xy) {
            // x y = t^3 s^3 y + t^5 s^6 y
            RawTerm b = t;
            b.x_exp -= 1, b.s_exp += 3, b.t_exp += 3;
            push(b);
            b = t, b.x_exp -= 1, b.s_exp += 6, b.t_exp += 5;
            push(b);
        } else if (rule_x3) {
            // x^3 = 2 t^2 s x (+ t^3 s^2 y in R)
            RawTerm b = t;
            b.x_exp -= 2, b.s_exp += 1, b.t_exp += 2, b.coeff = checked_mul(t.coeff, 2);
            push(b);
            if (ring == RingId::R) {
                b = t, b.x_exp -= 3, b.y_exp += 1, b.s_exp += 2, b.t_exp += 3;
                push(b);
            }
        } else {
            Gen g = Gen::One;
            if (t.y_exp == 1)
                g = Gen::Y;
            else if (t.x_exp == 2)
                g = Gen::X2;
            else if (t.x_exp == 1)
                g = Gen::X;
            out.add_term(window_reduce({t.s_exp, t.t_exp, g}, ring), t.coeff);
        }
    }
    return out;
}

RingElement add(const RingElement& a, const RingElement& b)
{
    if (a.ring() != b.ring())
        throw DomainError(errc::ring_mismatch, std::string(ring_name(a.ring())) + " vs " +
                                                   ring_name(b.ring()));
    RingElement out = a;
    for (auto& [m, c] : b.terms())
        out.add_term(m, c);
    return out;
}

RingElement sub(const RingElement& a, const RingElement& b) { return add(a, scale(b, -1)); }

RingElement scale(const RingElement& a, long long c)
{
    RingElement out(a.ring());
    for (auto& [m, k] : a.terms())
        out.add_term(m, checked_mul(k, c));
    return out;
}

RingElement mul(const RingElement& a, const RingElement& b)
{
    if (a.ring() != b.ring())
        throw DomainError(errc::ring_mismatch, std::string(ring_name(a.ring())) + " vs " +
                                                   ring_name(b.ring()));
    RawExpression prod;
    prod.reserve(a.terms().size() * b.terms().size());
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms())
            prod.push_back({ma.s_exp + mb.s_exp, ma.t_exp + mb.t_exp,
                            x_degree(ma.gen) + x_degree(mb.gen),
                            y_degree(ma.gen) + y_degree(mb.gen), checked_mul(ca, cb)});
    return normalize(prod, a.ring());
}

RingElement pow(const RingElement& a, unsigned k)
{
    RingElement acc = one(a.ring());
    RingElement base = a;
    while (k) {
        if (k & 1)
            acc = mul(acc, base);
        k >>= 1;
        if (k)
            base = mul(base, base);
    }
    return acc;
}

RingElement zero(RingId ring) { return RingElement(ring); }

RingElement one(RingId ring) { return monomial_element(ring, 0, 0, Gen::One); }

RingElement monomial_element(RingId ring, int s_exp, int t_exp, Gen gen, long long coeff)
{
    if (gen == Gen::Y && ring != RingId::R)
        throw DomainError(errc::y_in_y_free_ring,
                          std::string("y-term supplied to ") + ring_name(ring));
    RingElement out(ring);
    out.add_term(window_reduce({s_exp, t_exp, gen}, ring), coeff);
    return out;
}

RingElement dualize(const RingElement& a)
{
    RingElement out(a.ring());
    for (auto& [m, c] : a.terms()) {
        Monomial d;
        d.gen = m.gen;
        d.s_exp = -m.s_exp;
        d.t_exp = -m.t_exp;
        switch (m.gen) {
            case Gen::One: break;
            case Gen::X: d.s_exp -= 1, d.t_exp -= 2; break;    // x -> t^-2 s^-1 x
            case Gen::X2: d.s_exp -= 2, d.t_exp -= 4; break;   // x^2 -> t^-4 s^-2 x^2
            case Gen::Y: d.s_exp += 1; break;                  // y -> s y
        }
        out.add_term(window_reduce(d, a.ring()), c);
    }
    return out;
}

RingElement project_mod_y(const RingElement& a)
{
    if (a.ring() != RingId::R)
        throw DomainError(errc::ring_mismatch, "project_mod_y expects an element of R");
    RingElement out(RingId::RModY);
    for (auto& [m, c] : a.terms())
        if (m.gen != Gen::Y)
            out.add_term(m, c);  // already window-reduced in R
    return out;
}

RingElement embed_gprime(const RingElement& a)
{
    if (a.ring() != RingId::RPrime)
        throw DomainError(errc::ring_mismatch, "embed_gprime expects an element of R'");
    RingElement out(RingId::RModY);
    for (auto& [m, c] : a.terms())
        out.add_term(window_reduce(m, RingId::RModY), c);
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws()
    {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }

    [[noreturn]] void fail(const std::string& what)
    {
        throw DomainError(errc::parse_error, what + " at position " + std::to_string(i),
                          long(i));
    }

    bool peek_char(char c)
    {
        skip_ws();
        return i < s.size() && s[i] == c;
    }

    long long parse_int()
    {
        skip_ws();
        size_t start = i;
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            neg = s[i] == '-';
            ++i;
        }
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            fail("expected integer");
        long long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = checked_mul(v, 10);
            v = checked_add(v, s[i] - '0');
            ++i;
        }
        (void)start;
        return neg ? -v : v;
    }

    // Exponent after '^': optional braces, optional sign, greedy digits.
    int parse_exponent()
    {
        skip_ws();
        bool braced = false;
        if (i < s.size() && s[i] == '{') {
            braced = true;
            ++i;
        }
        long long v = parse_int();
        if (braced) {
            skip_ws();
            if (i >= s.size() || s[i] != '}')
                fail("expected '}'");
            ++i;
        }
        if (v > 1'000'000 || v < -1'000'000)
            fail("exponent out of range");
        return int(v);
    }

    RawTerm parse_term(long long sign)
    {
        RawTerm t;
        t.coeff = sign;
        skip_ws();
        bool saw_factor = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            t.coeff = checked_mul(t.coeff, parse_int());
            saw_factor = true;
        }
        for (;;) {
            skip_ws();
            if (i >= s.size())
                break;
            char c = s[i];
            int* slot = nullptr;
            if (c == 's')
                slot = &t.s_exp;
            else if (c == 't')
                slot = &t.t_exp;
            else if (c == 'x')
                slot = &t.x_exp;
            else if (c == 'y')
                slot = &t.y_exp;
            else
                break;
            ++i;
            int e = 1;
            skip_ws();
            if (i < s.size() && s[i] == '^') {
                ++i;
                e = parse_exponent();
            }
            if ((slot == &t.x_exp || slot == &t.y_exp) && e < 0)
                fail("negative exponent on x or y");
            *slot += e;
            saw_factor = true;
        }
        if (!saw_factor)
            fail("expected term");
        return t;
    }

    RawExpression parse()
    {
        RawExpression out;
        skip_ws();
        long long sign = 1;
        if (peek_char('-')) {
            sign = -1;
            ++i;
        } else if (peek_char('+')) {
            ++i;
        }
        out.push_back(parse_term(sign));
        for (;;) {
            skip_ws();
            if (i >= s.size())
                break;
            if (s[i] == '+')
                sign = 1;
            else if (s[i] == '-')
                sign = -1;
            else
                fail("expected '+' or '-'");
            ++i;
            out.push_back(parse_term(sign));
        }
        return out;
    }
};

void format_exponent(std::ostringstream& os, const char* var, int e)
{
    if (e == 0)
        return;
    os << ' ' << var;
    if (e != 1)
        os << '^' << e;
}

}  // namespace

RawExpression parse_element(const std::string& text)
{
    Parser p(text);
    return p.parse();
}

std::string format_element(const RingElement& a)
{
    if (a.is_zero())
        return "0";
    // Print order matches the published tables: y-terms first, then x^2, x,
    // constants; within a block t descending, then s descending.
    std::vector<std::pair<Monomial, long long>> terms(a.terms().begin(), a.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& l, const auto& r) {
        if (l.first.gen != r.first.gen)
            return l.first.gen > r.first.gen;
        if (l.first.t_exp != r.first.t_exp)
            return l.first.t_exp > r.first.t_exp;
        return l.first.s_exp > r.first.s_exp;
    });

    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms) {
        long long mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0)
                os << '-';
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        std::ostringstream body;
        format_exponent(body, "s", m.s_exp);
        format_exponent(body, "t", m.t_exp);
        if (m.gen == Gen::X)
            body << " x";
        else if (m.gen == Gen::X2)
            body << " x^2";
        else if (m.gen == Gen::Y)
            body << " y";
        std::string b = body.str();
        if (b.empty()) {
            os << mag;
        } else {
            if (mag != 1)
                os << mag << ' ';
            os << b.substr(1);  // drop leading space
        }
    }
    return os.str();
}

std::vector<std::pair<Monomial, long long>> serialize_terms(const RingElement& a)
{
    std::vector<std::pair<Monomial, long long>> terms(a.terms().begin(), a.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& l, const auto& r) {
        if (l.first.gen != r.first.gen)
            return l.first.gen < r.first.gen;
        if (l.first.s_exp != r.first.s_exp)
            return l.first.s_exp < r.first.s_exp;
        return l.first.t_exp < r.first.t_exp;
    });
    return terms;
}

}  // namespace tmfres
