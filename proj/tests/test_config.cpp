// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "doctest.h"
#include "poissinc/config.hpp"
#include "poissinc/errors.hpp"
#include "poissinc/experiments.hpp"

using namespace poissinc;
namespace fs = std::filesystem;

namespace
{
ExperimentConfig parse(std::string const& text)
{
    std::istringstream in(text);
    return parse_config(in);
}

std::string error_of(std::string const& text)
{
    try
    {
        parse(text);
    }
    catch (ParameterError const& e)
    {
        return e.what();
    }
    return {};
}

std::map<std::string, std::string> read_tree(fs::path const& dir)
{
    std::map<std::string, std::string> out;
    for (auto const& e : fs::directory_iterator(dir))
    {
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        out[e.path().filename().string()] = ss.str();
    }
    return out;
}

fs::path scratch(std::string const& name)
{
    auto const p = fs::temp_directory_path() / ("poissinc_test_" + name);
    fs::remove_all(p);
    return p;
}
}  // namespace

TEST_CASE("required fields")
{
    auto const msg = error_of("");
    CHECK(msg.find("[experiment] kind") != std::string::npos);
    CHECK(msg.find("[experiment] seed") != std::string::npos);
}

TEST_CASE("valid config and defaults")
{
    auto const cfg = parse("[experiment]\nkind = abel\nseed = 0x2a\n[process]\nn = 500\n");
    CHECK(cfg.kind == ExperimentKind::abel);
    CHECK(cfg.seed == 42);
    CHECK(cfg.n == 500);
    CHECK(cfg.replicates == 1000);
    bool listed = false;
    for (auto const& d : cfg.defaulted)
        listed = listed || d == "[experiment] replicates";
    CHECK(listed);
    // canonical text round-trips
    auto const again = parse(cfg.canonical());
    CHECK(again.canonical() == cfg.canonical());
    CHECK(again.n == 500);
}

TEST_CASE("rejections")
{
    CHECK(error_of("[experiment]\nkind = magic\nseed = 1\n").find("norm-growth") != std::string::npos);
    CHECK(error_of("[experiment]\nkind = abel\nseed = 1\nfoo = 2\n").find("foo") != std::string::npos);
    CHECK(error_of("[experiment]\nkind = abel\nseed = 1\n[bogus]\nx = 1\n").find("bogus") != std::string::npos);
    auto const syntax = error_of("[experiment]\nkind = abel\nseed = 1\n[process\n");
    CHECK(syntax.find(":4:") != std::string::npos);
    CHECK(!error_of("[experiment]\nkind = abel\nseed = 1\n[process]\nincrement = exponential(rate=-1)\n").empty());
    CHECK(!error_of("[experiment]\nkind = abel\nseed = 1\n[process]\nn = ten\n").empty());
    CHECK_THROWS_AS(load_config("/nonexistent/poissinc.ini"), ParameterError);
}

TEST_CASE("experiments are reproducible and independent of the worker count")
{
    char const* const kinds[] = {
        "[experiment]\nkind = series\nseed = 7\nreplicates = 4\n[process]\nn = 2000\n",
        "[experiment]\nkind = abel\nseed = 7\nreplicates = 4\n[process]\nn = 2000\n",
        "[experiment]\nkind = permute\nseed = 7\nreplicates = 3\n[process]\nn = 1000\n[series]\npermutations = 3\n",
        "[experiment]\nkind = blocks\nseed = 7\nreplicates = 50\n[series]\nblocks = 20\n",
        "[experiment]\nkind = norm-growth\nseed = 7\nreplicates = 50\n[grids]\nlo_exp = 4\nhi_exp = 8\n",
        "[experiment]\nkind = chf\nseed = 7\nreplicates = 200\n[series]\nfunction = indicator(lo=0,hi=1)\n",
        "[experiment]\nkind = lepage\nseed = 7\nreplicates = 200\n[process]\nn = 50\n[series]\nfunction = "
        "indicator(lo=0,hi=1)\n",
        "[experiment]\nkind = kfun\nseed = 7\n[levy]\nmarker = exponential\n[grids]\ns = 1e3,1e4\n",
        "[experiment]\nkind = improper\nseed = 7\n",
    };
    int i = 0;
    for (char const* text : kinds)
    {
        auto const cfg = parse(text);
        INFO(text);
        auto const a = scratch("a" + std::to_string(i));
        auto const b = scratch("b" + std::to_string(i));
        auto const c = scratch("c" + std::to_string(i));
        auto const ra = run_experiment(cfg, a.string(), 1);
        run_experiment(cfg, b.string(), 1);
        run_experiment(cfg, c.string(), 8);
        auto const ta = read_tree(a);
        CHECK(ta.count("summary.csv") == 1);
        CHECK(ta.size() == ra.files.size());
        CHECK(ta == read_tree(b));
        CHECK(ta == read_tree(c));
        CHECK(ta.at("summary.csv").rfind("# poissinc ", 0) == 0);
        CHECK(!ra.any_fail());
        fs::remove_all(a);
        fs::remove_all(b);
        fs::remove_all(c);
        ++i;
    }
}
