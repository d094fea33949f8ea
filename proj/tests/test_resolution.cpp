#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "tmfres/bar.hpp"
#include "tmfres/resolution.hpp"
#include "tmfres/verify.hpp"

using namespace tmfres;

namespace {

CompiledModule trivial_a2() { return build_standard(StandardModule::BO, 0); }

std::map<std::pair<int, int>, int> chart_map(const ExtChart& c) { return c.dims; }

}  // namespace

TEST_CASE("trivial module: stage 0 and stage 1 generators")
{
    MinimalResolution res(trivial_a2(), 3, 12);
    REQUIRE(res.stages().size() == 4);
    CHECK(res.stages()[0].gen_degrees == std::vector<int>{0});
    // stage 1 generators exactly at t in {1, 2, 4}
    CHECK(res.stages()[1].gen_degrees == std::vector<int>{1, 2, 4});
    auto chart = res.chart();
    CHECK(chart.dim(0, 0) == 1);
    CHECK(chart.dim(1, 1) == 1);
    CHECK(chart.dim(1, 2) == 1);
    CHECK(chart.dim(1, 4) == 1);
    CHECK(chart.dim(1, 3) == 0);
}

TEST_CASE("zero module resolves to nothing")
{
    CompiledModule zero;
    MinimalResolution res(zero, 3, 10);
    for (auto& st : res.stages())
        CHECK(st.gen_degrees.empty());
}

TEST_CASE("bar oracle small anchors")
{
    auto dims = bar_oracle(trivial_a2(), 8);
    CHECK(dims.at({0, 0}) == 1);
    CHECK(dims.at({1, 1}) == 1);
    CHECK(dims.at({1, 2}) == 1);  // dual to Sq^2
    CHECK(dims.at({1, 4}) == 1);
    CHECK(dims.count({1, 3}) == 0);
    // h0-tower on the unit: Ext^{s,s} = F2
    for (int s = 1; s <= 8; ++s)
        CHECK(dims.at({s, s}) == 1);
}

TEST_CASE("oracle equivalence on small windows")
{
    // fast versions of the acceptance runs (t <= 12)
    for (auto name : {StandardModule::M1, StandardModule::A2modA1}) {
        CompiledModule m = build_standard(name, 0);
        auto bar = bar_oracle(m, 12);
        auto chart = ext_dims(m, 12, 12);
        for (int s = 0; s <= 12; ++s)
            for (int t = 0; t <= 12; ++t) {
                auto it = bar.find({s, t});
                int want = it == bar.end() ? 0 : it->second;
                REQUIRE(chart.dim(s, t) == want);
            }
    }
}

TEST_CASE("change of rings: Ext_{A(2)}(A(2)//A(1)) = Ext_{A(1)}(F2)")
{
    auto big = ext_dims(build_standard(StandardModule::A2modA1), 14, 14);
    auto small = bar_oracle(trivial_module(Algebra::A(1)), 14);
    for (int s = 0; s <= 14; ++s)
        for (int t = 0; t <= 14; ++t) {
            auto it = small.find({s, t});
            int want = it == small.end() ? 0 : it->second;
            REQUIRE(big.dim(s, t) == want);
        }
    // the classical ko pattern in low stems: h0 tower at n = 0, h1 at 1,
    // h1^2 at 2, nothing at n = 3, the tower class at n = 4
    CHECK(big.dim(1, 2) == 1);   // h1
    CHECK(big.dim(2, 4) == 1);   // h1^2
    CHECK(big.dim(3, 7) == 1);   // the (4,3) class
    CHECK(big.dim(1, 4) == 0);   // no h2 over A(1)
    CHECK(big.dim(4, 12) == 1);  // periodicity class at n = 8
}

TEST_CASE("hi products on the trivial chart")
{
    auto chart = ext_dims(trivial_a2(), 10, 24);
    // h0 chain upward from the unit
    for (int s = 0; s < 10; ++s) {
        bool found = false;
        for (auto& e : chart.products)
            if (e.k == 0 && e.s == s && e.t == s)
                found = true;
        CHECK(found);
    }
    // h2: unit -> (7,1) -> (14,2)
    bool h2a = false, h2b = false;
    for (auto& e : chart.products) {
        if (e.k == 2 && e.s == 0 && e.t == 0)
            h2a = true;
        if (e.k == 2 && e.s == 1 && e.t == 8)
            h2b = true;  // source (1,8) = stem 7 target (2,16) = stem 14
    }
    CHECK(h2a);
    CHECK(h2b);
    CHECK(chart.dim(1, 8) == 1);
    CHECK(chart.dim(2, 16) == 1);
}

TEST_CASE("minimality is stable under generator reordering of the module")
{
    // permuted E-module gives the same chart
    std::ifstream in(default_data_dir() + "/fixtures/E.module");
    std::ostringstream ss;
    ss << in.rdbuf();
    SteenrodModule e = parse_bruner(ss.str());
    SteenrodModule perm;
    perm.alg = e.alg;
    int n = e.dim();
    std::vector<int> relabel(size_t(n), 0);
    for (int i = 0; i < n; ++i)
        relabel[size_t(i)] = n - 1 - i;
    perm.degrees.resize(size_t(n));
    for (int i = 0; i < n; ++i)
        perm.degrees[size_t(relabel[size_t(i)])] = e.degrees[size_t(i)];
    for (auto& [key, tgts] : e.action) {
        std::vector<int> moved;
        for (int t : tgts)
            moved.push_back(relabel[size_t(t)]);
        std::sort(moved.begin(), moved.end());
        perm.action.emplace(std::make_pair(key.first, relabel[size_t(key.second)]), moved);
    }
    auto c1 = ext_dims(CompiledModule(e), 10, 16);
    auto c2 = ext_dims(CompiledModule(perm), 10, 16);
    CHECK(chart_map(c1) == chart_map(c2));
}

TEST_CASE("g-family calibration window on bo_1^2")
{
    // The v1^2-torsion g-periodic family anchored at stem 11 (normalized to
    // filtration 0) shows up in the unlocalized chart at (11,0) + k(20,4):
    // its k = 1 translates are visible in this window.
    CompiledModule bo1 = build_standard(StandardModule::BO, 1);
    auto chart = ext_dims(tensor(bo1, bo1), 8, 40);
    CHECK(chart.dim(4, 35) >= 1);  // stem 31 = 11 + 20, filtration 4
    CHECK(chart.dim(5, 38) >= 1);  // v1 * (that): stem 33, filtration 5
}

TEST_CASE("chart emission formats")
{
    auto chart = ext_dims(trivial_a2(), 4, 8);
    std::string csv = chart_emit(chart, ChartFormat::Csv);
    CHECK(csv.rfind("s,t,dim\n", 0) == 0);
    CHECK(csv.find("0,0,1") != std::string::npos);
    std::string svg = chart_emit(chart, ChartFormat::Svg);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos);
    std::string text = chart_emit(chart, ChartFormat::Text);
    CHECK(!text.empty());
    // determinism
    CHECK(chart_emit(chart, ChartFormat::Svg) == svg);

    ExtChart empty;
    CHECK(chart_emit(empty, ChartFormat::Csv) == "s,t,dim\n");
}

TEST_CASE("v0 tower report on a tiny window is honest about stability")
{
    auto chart = ext_dims(trivial_a2(), 14, 26);
    auto rep = v0_tower_report(chart, {{0, 1}}, 12);
    CHECK(rep.ok);
    CHECK(rep.towers.at(0) == std::pair<int, int>{1, 1});
    CHECK(rep.towers.at(8) == std::pair<int, int>{1, 1});
    CHECK(rep.towers.at(12) == std::pair<int, int>{1, 1});
    CHECK(rep.towers.at(1) == std::pair<int, int>{0, 0});
    // probing beyond the window throws
    CHECK_THROWS_AS(v0_tower_report(chart, {{0, 1}}, 30), DomainError);
}

TEST_CASE("resolution dump mentions stages and Milnor entries")
{
    MinimalResolution res(trivial_a2(), 2, 6);
    std::string dump = resolution_dump(res);
    CHECK(dump.find("stage 0") != std::string::npos);
    CHECK(dump.find("stage 2") != std::string::npos);
    CHECK(dump.find("Sq(") != std::string::npos);
}
