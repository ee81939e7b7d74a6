#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run lgx(const std::string& args)
{
    const std::string cmd = std::string(LGX_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), got);
    const int st = ::pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto nl = s.find('\n', pos);
        out.push_back(s.substr(pos, nl - pos));
        if (nl == std::string::npos)
            break;
        pos = nl + 1;
    }
    return out;
}

}  // namespace

TEST(Cli, BesselTableTwo)
{
    const auto r = lgx("bessel table --nu 20 --n 5 --r 0 --z 1 --digits-out 3");
    ASSERT_EQ(r.status, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 3u);
    EXPECT_EQ(ls[0].rfind("# ", 0), 0u);
    EXPECT_NE(ls[0].find("nu^-n=3.13e-07"), std::string::npos);
    EXPECT_EQ(ls[1], "z,eta_abs,bound,formula");
    EXPECT_NE(ls[2].find(",4.15e-08,thm1_eps1"), std::string::npos);
}

TEST(Cli, BesselTableOneIsDeterministic)
{
    const std::string args = "bessel table --nu 20 --n 5 --r 5 --z 0.01,0.1,1,10,100";
    const auto a = lgx(args);
    const auto b = lgx(args);
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    const auto ls = lines(a.out);
    ASSERT_EQ(ls.size(), 7u);
    EXPECT_EQ(ls[2].rfind("1.000000e-02,", 0), 0u);
    EXPECT_NE(ls[2].find(",7.418606e-12,thm2_eps1"), std::string::npos);
    EXPECT_NE(ls[3].find("5.422462e-10,5.422471e-10"), std::string::npos);
}

TEST(Cli, BesselTableJson)
{
    const auto r = lgx("bessel table --nu 20 --n 2 --r 0 --z 1 --kind K --out json");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("kind"), "K");
    ASSERT_EQ(j.at("rows").size(), 1u);
    EXPECT_EQ(j.at("rows")[0].at("report").at("formula"), "thm1_eps2");
    EXPECT_LE(j.at("rows")[0].at("eta_abs").get<double>(), j.at("rows")[0].at("report").at("bound").get<double>());
}

TEST(Cli, BesselCoeffs)
{
    const auto r = lgx("bessel coeffs --N 2");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto e1 = j.at("E")[0].at("coeffs");
    ASSERT_EQ(e1.size(), 4u);
    EXPECT_EQ(e1[0], "0");
    EXPECT_EQ(e1[1], "1/8");
    EXPECT_EQ(e1[3], "-5/24");
    EXPECT_EQ(j.at("k")[0], "-1/12");
    EXPECT_EQ(j.at("k")[1], "0");
}

TEST(Cli, CoeffsPolyAndJet)
{
    auto r = lgx("coeffs --psi 0,1 --N 3");
    ASSERT_EQ(r.status, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("F")[0].at("coeffs")[1], "1/2");
    EXPECT_EQ(j.at("F")[1].at("coeffs")[0], "-1/4");
    r = lgx("coeffs --model jet --psi 1,0,0,0 --N 3");
    ASSERT_EQ(r.status, 0);
    j = nlohmann::json::parse(r.out);
    EXPECT_DOUBLE_EQ(j.at("F_derivatives")[0][0].get<double>(), 0.5);
    EXPECT_EQ(lgx("coeffs --model jet --psi 1 --N 3").status, 2);
}

TEST(Cli, BoundWithPathFile)
{
    const auto dir = std::filesystem::temp_directory_path() / "lgx_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "path.json";
    std::ofstream(path) << R"({"u":[10,0],"j":1,"arcs":[{"from":[0,0],"to":[1,0]}]})";
    auto r = lgx("bound --psi 1,1 --path " + path.string() + " --n 1");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j.at("bound").get<double>(), 0.15 * std::exp(0.15), 1e-13);
    r = lgx("bound --psi 1,1 --path " + path.string() + " --n 2 --r 2");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out).at("formula"), "thm2_eps1");

    const auto bad = dir / "bad.json";
    std::ofstream(bad) << R"({"u":[10,0],"j":2,"arcs":[{"from":[0,0],"to":[1,0]}]})";
    EXPECT_EQ(lgx("bound --psi 1,1 --path " + bad.string() + " --n 1").status, 2);
    EXPECT_EQ(lgx("bound --psi 1,1 --path /nonexistent/p.json --n 1").status, 2);
    // exp of a huge integral overflows: numeric failure.
    const auto slow = dir / "slow.json";
    std::ofstream(slow) << R"({"u":[1,0],"j":1,"arcs":[{"from":[0,0],"to":[1,0]}]})";
    EXPECT_EQ(lgx("bound --psi 100000 --path " + slow.string() + " --n 1").status, 3);
    std::filesystem::remove_all(dir);
}

TEST(Cli, Figure)
{
    const auto r = lgx("bessel figure --diag ratio --nu 20 --n 5 --samples 16");
    ASSERT_EQ(r.status, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 18u);
    EXPECT_EQ(ls[1], "p,ratio");
    for (std::size_t i = 2; i < ls.size(); ++i)
        EXPECT_LE(std::stod(ls[i].substr(ls[i].find(',') + 1)), 1.0);
}

TEST(Cli, NonhomogDemo)
{
    const auto r = lgx("nonhomog demo --u 5,10 --n-max 2");
    ASSERT_EQ(r.status, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 6u);
    EXPECT_EQ(ls[1], "u,n,r,exact_error,bound_r0,bound_shifted");
    EXPECT_EQ(ls[2].rfind("5.000000e+00,1,1,", 0), 0u);
}

TEST(Cli, Oracle)
{
    auto r = lgx("oracle besseli --nu 20 --x 20 --digits 50");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out.rfind("3.18875032885361480155", 0), 0u) << r.out;
    r = lgx("oracle lngamma --x 21 --digits 20");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out.rfind("4.23356164607534850", 0), 0u) << r.out;
    r = lgx("oracle besselk --nu 0.5 --x 2 --digits 20");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out.rfind("1.19937771968061447", 0), 0u) << r.out;
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(lgx("").status, 2);
    EXPECT_EQ(lgx("bessel table --bogus").status, 2);
    EXPECT_EQ(lgx("bessel table --nu -1 --z 1").status, 2);
    EXPECT_EQ(lgx("bessel table --z 1,abc").status, 2);
    EXPECT_EQ(lgx("bessel table --z 0").status, 2);
    EXPECT_EQ(lgx("oracle besseli --nu 1 --x -2").status, 2);
    EXPECT_EQ(lgx("coeffs --psi 1/0").status, 2);
    EXPECT_EQ(lgx("nonhomog demo --lambda 2 --u 1").status, 2);
    EXPECT_EQ(lgx("--help").status, 0);
}
