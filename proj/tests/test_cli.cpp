// End-to-end checks of the CLI binary: spawns the built tool and compares
// byte output; determinism matters for golden comparisons.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args)
{
    std::string cmd = "./tmfres " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WEXITSTATUS(status);
    return r;
}

}  // namespace

TEST_CASE("reduce")
{
    auto r = run("reduce \"x^3\"");
    CHECK(r.code == 0);
    CHECK(r.out == "s^2 t^3 y + 2 s t^2 x\n");
    auto rp = run("reduce \"x^3\" --ring Rp");
    CHECK(rp.out == "2 s t^2 x\n");
    auto j = run("reduce \"x^3\" --format json");
    CHECK(j.out.find("\"ring\":\"R\"") != std::string::npos);
    CHECK(j.out.find("\"gen\":\"x\"") != std::string::npos);
}

TEST_CASE("bgpoly")
{
    auto r = run("bgpoly 7");
    CHECK(r.code == 0);
    CHECK(r.out == "s^2 t^7 y + 2 s t^6 x\n");
    auto g = run("bgpoly 7 --glocal");
    CHECK(g.out == "2 s t^6 x\n");
}

TEST_CASE("powers output is deterministic")
{
    auto a = run("powers 8");
    auto b = run("powers 8");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("x^3 = s^2 t^3 y + 2 s t^2 x") != std::string::npos);
}

TEST_CASE("decompose")
{
    auto r = run("decompose --power 3");
    CHECK(r.code == 0);
    CHECK(r.out.find("2 x Sigma^{16,1} BO1") != std::string::npos);
    CHECK(r.out.find("Sigma^{24,2} TMF03") != std::string::npos);
    auto j = run("decompose --bo 6 --format json");
    CHECK(j.out.find("\"locality\":\"v2\"") != std::string::npos);
    auto g = run("decompose --power 3 --locality g --format json");
    CHECK(g.out.find("TMF03") == std::string::npos);
}

TEST_CASE("dual")
{
    auto r = run("dual element \"x\"");
    CHECK(r.out == "s^7 t^4 x\n");
    auto rep = run("dual report --bo 1 --format json");
    CHECK(rep.out.find("\"shift\":[32,7]") != std::string::npos);
}

TEST_CASE("module subcommands on builtins")
{
    auto iso = run("module iso std:bo1 std:bo1");
    CHECK(iso.code == 0);
    CHECK(iso.out == "isomorphic\n");
    auto noniso = run("module iso std:bo1 std:bo1^1");
    CHECK(noniso.code == 1);
    auto marg = run("module margolis std:bo1 --margolis-op Q0");
    CHECK(marg.out == "0 1\n4 1\n");
    auto ses = run("module ses std:bo1 std:a2a1 std:dualbo1^17");
    CHECK(ses.code == 0);
    CHECK(ses.out == "found\n");
}

TEST_CASE("ext chart csv")
{
    auto r = run("ext std:f2 --smax 3 --tmax 6 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("s,t,dim\n", 0) == 0);
    CHECK(r.out.find("0,0,1") != std::string::npos);
    CHECK(r.out.find("1,1,1") != std::string::npos);
    CHECK(r.out.find("1,2,1") != std::string::npos);
    CHECK(r.out.find("1,4,1") != std::string::npos);
}

TEST_CASE("census csv header")
{
    auto r = run("census --n 1 --weight-max 16");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("n,s,weight,dim\n", 0) == 0);
}

TEST_CASE("usage errors exit 2, domain errors exit 1")
{
    CHECK(run("bogus").code == 2);
    CHECK(run("reduce").code == 2);
    CHECK(run("reduce \"y\" --ring Rp").code == 1);
    CHECK(run("decompose --bo 1 --power 2").code == 1);
}

TEST_CASE("verify --tables")
{
    auto r = run("verify --tables");
    CHECK(r.code == 0);
    CHECK(r.out.find("table1") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}
