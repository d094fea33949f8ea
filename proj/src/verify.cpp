#include "tmfres/verify.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "tmfres/bar.hpp"
#include "tmfres/brown_gitler.hpp"
#include "tmfres/decomposition.hpp"
#include "tmfres/resolution.hpp"

#ifndef TMFRES_DATA_DIR
#define TMFRES_DATA_DIR "."
#endif

namespace tmfres {

namespace {

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

CheckResult run_check(const std::string& name, const std::function<std::string()>& body)
{
    CheckResult r;
    r.name = name;
    Timer timer;
    try {
        r.detail = body();
        r.pass = r.detail.empty();
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    r.seconds = timer.seconds();
    return r;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError(errc::parse_error, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// "lhs = rhs" rows; returns (label, parsed rhs).
std::vector<std::pair<std::string, RingElement>> load_table(const std::string& path)
{
    std::vector<std::pair<std::string, RingElement>> rows;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError(errc::parse_error, "table row without '=' in " + path);
        std::string label = line.substr(0, eq);
        while (!label.empty() && isspace(static_cast<unsigned char>(label.back())))
            label.pop_back();
        rows.push_back(
            {label, normalize(parse_element(line.substr(eq + 1)), RingId::R)});
    }
    return rows;
}

std::string diff_elements(const std::string& label, const RingElement& computed,
                          const RingElement& printed)
{
    if (computed == printed)
        return {};
    std::ostringstream os;
    os << label << ": recomputed " << format_element(computed) << " but table prints "
       << format_element(printed) << "; the recursion and relations are authoritative\n";
    return os.str();
}

std::string summand_diff(const std::string& label, const DecompositionReport& got,
                         const std::vector<Summand>& want_raw)
{
    std::vector<Summand> want = want_raw;
    std::sort(want.begin(), want.end());
    if (got.summands == want)
        return {};
    return label + ": decomposition mismatch (" + report_to_json(got) + ")\n";
}

RawExpression random_raw(std::mt19937& rng, bool with_y)
{
    std::uniform_int_distribution<int> nterms(1, 4), exps(-6, 6), xe(0, 4), ye(0, 2),
        coeff(-9, 9);
    RawExpression e;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i)
        e.push_back({exps(rng), exps(rng), xe(rng), with_y ? ye(rng) : 0,
                     (long long)coeff(rng)});
    return e;
}

std::string compare_charts(const std::string& label,
                           const std::map<std::pair<int, int>, int>& bar,
                           const ExtChart& chart, int t_max)
{
    std::ostringstream os;
    for (int t = 0; t <= t_max; ++t)
        for (int s = 0; s <= t_max; ++s) {
            auto it = bar.find({s, t});
            int want = it == bar.end() ? 0 : it->second;
            int got = chart.dim(s, t);
            if (want != got)
                os << label << ": Ext^{" << s << "," << t << "} resolver=" << got
                   << " bar=" << want << "\n";
        }
    return os.str();
}

}  // namespace

std::string default_data_dir() { return TMFRES_DATA_DIR; }

std::vector<CheckResult> verify_tables(const std::string& data_dir)
{
    std::vector<CheckResult> out;
    out.push_back(run_check("table1: reduced x^k for k = 3..16", [&] {
        auto rows = load_table(data_dir + "/tables/table1.txt");
        auto computed = power_table(16);
        std::string diff;
        if (rows.size() != computed.size())
            return std::string("row count mismatch");
        for (size_t i = 0; i < rows.size(); ++i)
            diff += diff_elements(rows[i].first, computed[i].second, rows[i].second);
        return diff;
    }));
    out.push_back(run_check("table2: f_j for j = 1..16", [&] {
        auto rows = load_table(data_dir + "/tables/table2.txt");
        std::string diff;
        for (size_t i = 0; i < rows.size(); ++i)
            diff += diff_elements(rows[i].first, bg_poly(unsigned(i + 1)), rows[i].second);
        return diff;
    }));
    return out;
}

std::vector<CheckResult> verify_remark54()
{
    std::vector<CheckResult> out;
    out.push_back(run_check("splitting of bo_1^3", [] {
        return summand_diff("bo_1^3", decompose_power(3, Locality::V2),
                            {{SummandKind::BO1, 16, 1, 2}, {SummandKind::TMF03, 24, 2, 1}});
    }));
    out.push_back(run_check("splitting of bo_1^4", [] {
        return summand_diff("bo_1^4", decompose_power(4, Locality::V2),
                            {{SummandKind::BO1SQ, 16, 1, 2},
                             {SummandKind::TMF03, 48, 5, 1},
                             {SummandKind::TMF03, 16, 0, 1}});
    }));
    out.push_back(run_check("splitting of bo_1^5", [] {
        return summand_diff("bo_1^5", decompose_power(5, Locality::V2),
                            {{SummandKind::BO1, 32, 2, 4},
                             {SummandKind::TMF03, 24, 0, 1},
                             {SummandKind::TMF03, 40, 3, 4},
                             {SummandKind::TMF03, 56, 6, 1}});
    }));
    out.push_back(run_check("splitting of bo_1^6", [] {
        return summand_diff("bo_1^6", decompose_power(6, Locality::V2),
                            {{SummandKind::BO1SQ, 32, 2, 4},
                             {SummandKind::TMF03, 48, 3, 1},
                             {SummandKind::TMF03, 64, 6, 5},
                             {SummandKind::TMF03, 32, 1, 5},
                             {SummandKind::TMF03, 48, 4, 1}});
    }));
    return out;
}

std::vector<CheckResult> verify_series_oracle()
{
    std::vector<CheckResult> out;
    for (Locality loc : {Locality::V2, Locality::G}) {
        std::string tag = locality_name(loc);
        out.push_back(run_check("h^n coefficients vs composition sum (" + tag + ")", [loc] {
            std::ostringstream os;
            for (unsigned n = 1; n <= 4; ++n) {
                auto hn = series_pow(h_series(12, loc), n);
                for (unsigned j = n; j <= 12; ++j)
                    if (!(hn.at(j) == brute_force_weight(n, j, loc)))
                        os << "n=" << n << " j=" << j << " differs\n";
            }
            return os.str();
        }));
    }
    return out;
}

std::vector<CheckResult> verify_structural()
{
    std::vector<CheckResult> out;
    out.push_back(run_check("parity shape of f'_j, j <= 64", [] {
        std::ostringstream os;
        for (unsigned j = 0; j <= 64; ++j) {
            auto rep = verify_parity(j);
            if (!rep.ok)
                os << "f'_" << j << " violates the parity shape:" << rep.detail << "\n";
        }
        return os.str();
    }));
    out.push_back(run_check("f_j mod y = phi(f'_j), j <= 64", [] {
        std::ostringstream os;
        for (unsigned j = 0; j <= 64; ++j)
            if (!compare_mod_y(j))
                os << "f_" << j << " != f'_" << j << " mod y\n";
        return os.str();
    }));
    return out;
}

std::vector<CheckResult> verify_duality()
{
    std::vector<CheckResult> out;
    out.push_back(run_check("D is an involutive ring homomorphism (10^4 samples)", [] {
        std::mt19937 rng(0xD0A1);
        std::ostringstream os;
        for (int trial = 0; trial < 5000; ++trial) {
            RingElement a = normalize(random_raw(rng, true), RingId::R);
            RingElement b = normalize(random_raw(rng, true), RingId::R);
            if (!(dualize(dualize(a)) == a) || !(dualize(mul(a, b)) == mul(dualize(a), dualize(b)))) {
                os << "failure on R sample " << trial << "\n";
                break;
            }
            RingElement ap = normalize(random_raw(rng, false), RingId::RPrime);
            RingElement bp = normalize(random_raw(rng, false), RingId::RPrime);
            if (!(dualize(dualize(ap)) == ap) ||
                !(dualize(mul(ap, bp)) == mul(dualize(ap), dualize(bp)))) {
                os << "failure on R' sample " << trial << "\n";
                break;
            }
        }
        return os.str();
    }));
    out.push_back(run_check("defining relations are D-stable", [] {
        RingElement x = monomial_element(RingId::R, 0, 0, Gen::X);
        RingElement rhs = normalize(parse_element("2 s t^2 x + s^2 t^3 y"), RingId::R);
        if (!(pow(dualize(x), 3) == dualize(rhs)))
            return std::string("D(x)^3 != D(2 t^2 s x + t^3 s^2 y)");
        RingElement xp = monomial_element(RingId::RPrime, 0, 0, Gen::X);
        RingElement rhsp = normalize(parse_element("2 s t^2 x"), RingId::RPrime);
        if (!(pow(dualize(xp), 3) == dualize(rhsp)))
            return std::string("R': D(x)^3 != D(2 t^2 s x)");
        return std::string();
    }));
    out.push_back(run_check("dual of bo_1 is Sigma^{-16,-1} bo_1 (canonicalized)", [] {
        DecompositionReport r;
        r.locality = Locality::V2;
        r.source = "bo_1";
        r.summands = {{SummandKind::BO1, 0, 0, 1}};
        auto d = dualize_report(r);
        // Sigma^{-16,-1} * Sigma^{48,8} = Sigma^{32,7}
        std::vector<Summand> want{{SummandKind::BO1, 32, 7, 1}};
        if (d.summands != want)
            return report_to_json(d);
        return std::string();
    }));
    return out;
}

std::vector<CheckResult> verify_appendix(const std::string& data_dir)
{
    std::vector<CheckResult> out;
    out.push_back(run_check("figures parse and validate as A(2)-modules", [&] {
        std::ostringstream os;
        for (const char* name : {"F.module", "E.module"}) {
            SteenrodModule m = parse_bruner(read_file(data_dir + "/fixtures/" + name));
            auto rep = validate_module(m);
            if (!rep.valid) {
                os << name << " invalid:\n";
                for (auto& v : rep.violations)
                    os << "  " << v << "\n";
            }
        }
        return os.str();
    }));
    out.push_back(run_check("dim F + dim F + dim E = 64 = dim bo_1^3", [&] {
        SteenrodModule f = parse_bruner(read_file(data_dir + "/fixtures/F.module"));
        SteenrodModule e = parse_bruner(read_file(data_dir + "/fixtures/E.module"));
        CompiledModule bo1 = build_standard(StandardModule::BO, 1);
        int total = 2 * f.dim() + e.dim();
        int cube = bo1.dim() * bo1.dim() * bo1.dim();
        if (total != 64 || cube != 64)
            return "got " + std::to_string(total) + " vs " + std::to_string(cube);
        return std::string();
    }));
    out.push_back(run_check("sigma_3 idempotent identities", [] {
        auto rep = verify_sigma3_idempotents();
        if (rep.ok)
            return std::string();
        std::ostringstream os;
        for (auto& c : rep.checks)
            os << c << "\n";
        return os.str();
    }));
    out.push_back(run_check("SES bo_1 -> A(2)//A(1) -> Sigma^17 D(bo_1)", [] {
        // comodule sequence; on the cohomology-module side the arrows
        // reverse, so the injection carries the dual of the third term
        CompiledModule a = build_standard(StandardModule::BO, 1);
        CompiledModule b = build_standard(StandardModule::A2modA1);
        CompiledModule c = suspend(build_standard(StandardModule::DualBO1), 17);
        auto rep = find_ses(c, b, a);
        if (!rep.found)
            return "not found: " + rep.detail;
        return std::string();
    }));
    {
        // As printed the sequence 0 -> H*(Sigma^17 bo_1) -> Sigma^4 A(2)//A(1)
        // (x) M_1 -> H*(E) -> 0 fails its degreewise dimension count; the
        // per-degree certificate is emitted either way, and the variant with
        // the 20-dimensional summand in place of E is also searched.
        CheckResult cr;
        cr.name = "integral Brown-Gitler SES certificate";
        Timer timer;
        try {
            CompiledModule a = suspend(build_standard(StandardModule::BO, 1), 17);
            CompiledModule mid =
                suspend(tensor(build_standard(StandardModule::A2modA1),
                               build_standard(StandardModule::M1)),
                        4);
            CompiledModule e(parse_bruner(read_file(data_dir + "/fixtures/E.module")));
            auto rep = find_ses(a, mid, e);
            std::ostringstream os;
            if (rep.found) {
                os << "sequence found (unexpected given the dimension count)\n";
                cr.pass = true;
            } else {
                os << "certificate for the printed statement:\n";
                for (auto& [d, v] : rep.dims)
                    if (v[1] != v[0] + v[2])
                        os << "  degree " << d << ": dim a + dim c = " << v[0] << " + "
                           << v[2] << " != dim b = " << v[1] << "\n";
                CompiledModule f(
                    parse_bruner(read_file(data_dir + "/fixtures/F.module")));
                auto good = find_ses(a, mid, suspend(f, 4));
                os << (good.found ? "variant with Sigma^4 F succeeds\n"
                                  : "variant with Sigma^4 F fails: " + good.detail + "\n");
                cr.pass = good.found;
            }
            cr.detail = os.str();
        } catch (const std::exception& e) {
            cr.pass = false;
            cr.detail = e.what();
        }
        cr.seconds = timer.seconds();
        out.push_back(std::move(cr));
    }
    return out;
}

std::vector<CheckResult> verify_ext_oracle(int t_plain, int t_square)
{
    struct Case {
        std::string name;
        CompiledModule module;
        int t_max;
    };
    std::vector<Case> cases;
    cases.push_back({"F2", build_standard(StandardModule::BO, 0), t_plain});
    cases.push_back({"bo_1", build_standard(StandardModule::BO, 1), t_plain});
    CompiledModule bo1 = build_standard(StandardModule::BO, 1);
    cases.push_back({"bo_1^2", tensor(bo1, bo1), t_square});
    cases.push_back({"M_1", build_standard(StandardModule::M1), t_plain});
    cases.push_back({"A(2)//A(1)", build_standard(StandardModule::A2modA1), t_plain});
    cases.push_back({"E", CompiledModule(parse_bruner(
                              read_file(default_data_dir() + "/fixtures/E.module"))),
                     t_plain});

    std::vector<CheckResult> out;
    for (auto& c : cases) {
        out.push_back(run_check("resolver vs bar complex: " + c.name + " (t <= " +
                                    std::to_string(c.t_max) + ")",
                                [&] {
                                    auto bar = bar_oracle(c.module, c.t_max);
                                    auto chart = ext_dims(c.module, c.t_max, c.t_max);
                                    return compare_charts(c.name, bar, chart, c.t_max);
                                }));
    }
    return out;
}

std::vector<CheckResult> verify_v0_towers(int n_max)
{
    std::vector<CheckResult> out;
    int s_max = n_max + 2;
    int t_max = n_max + s_max;
    out.push_back(run_check("v0-towers of the trivial module", [&] {
        auto chart = ext_dims(build_standard(StandardModule::BO, 0), s_max, t_max);
        auto rep = v0_tower_report(chart, {{0, 1}}, n_max);
        return rep.ok ? std::string() : rep.detail;
    }));
    out.push_back(run_check("v0-towers of bo_1 (embedded, generators at 8 and 12)", [&] {
        auto chart =
            ext_dims(suspend(build_standard(StandardModule::BO, 1), 8), s_max, t_max + 8);
        auto rep = v0_tower_report(chart, {{8, 1}, {12, 1}}, n_max);
        return rep.ok ? std::string() : rep.detail;
    }));
    return out;
}

std::vector<CheckResult> verify_census(int weight_max)
{
    std::vector<CheckResult> out;
    out.push_back(run_check("n=1 census equals the f'_j homotopy families", [&] {
        auto census = census_bbt_families(1, weight_max);
        std::ostringstream os;
        for (int j = 0; 8 * j <= weight_max; ++j) {
            auto rep = shift_report(decompose_bo(unsigned(j), Locality::G), 8 * j);
            if (census.at(8 * j) != glocal_families(rep))
                os << "weight " << 8 * j << " differs\n";
        }
        return os.str();
    }));
    out.push_back(run_check("n=1 census windowed dimensions agree", [&] {
        Window w{-40, 80, 0, 12, 24, 2};
        auto census = census_bbt(1, w, weight_max);
        std::ostringstream os;
        for (int j = 0; 8 * j <= weight_max; ++j) {
            auto rep = shift_report(decompose_bo(unsigned(j), Locality::G), 8 * j);
            if (!(census.at(8 * j) == homotopy_series_glocal(rep, w)))
                os << "weight " << 8 * j << " differs on the window\n";
        }
        return os.str();
    }));
    return out;
}

std::vector<CheckResult> verify_all(const std::string& data_dir)
{
    std::vector<CheckResult> out;
    auto append = [&](std::vector<CheckResult> v) {
        for (auto& r : v)
            out.push_back(std::move(r));
    };
    append(verify_tables(data_dir));
    append(verify_remark54());
    append(verify_series_oracle());
    append(verify_structural());
    append(verify_duality());
    append(verify_appendix(data_dir));
    append(verify_ext_oracle(20, 14));
    append(verify_v0_towers(24));
    append(verify_census(64));
    return out;
}

}  // namespace tmfres
