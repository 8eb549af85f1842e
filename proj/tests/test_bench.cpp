#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "ditstar/bench.hpp"

using namespace ditstar;

namespace
{
    BenchSpec tinySpec()
    {
        BenchSpec spec;
        spec.envKind = "np";
        spec.dims = {2};
        spec.planners = {"dit"};
        spec.runs = 1;
        spec.budgets[2] = 5.0;
        spec.iterationBudget = 12000;
        return spec;
    }
}  // namespace

TEST_CASE("default budgets")
{
    CHECK(defaultBudget("rr", 4) == 0.50);
    CHECK(defaultBudget("rr", 8) == 1.00);
    CHECK(defaultBudget("rr", 16) == 4.00);
    CHECK(defaultBudget("np", 4) == 0.12);
    CHECK(defaultBudget("np", 8) == 0.40);
    CHECK(defaultBudget("np", 16) == 0.60);
    CHECK_THROWS(defaultBudget("maze", 4));
    CHECK_THROWS(defaultBudget("np", 3));
}

TEST_CASE("confidence interval ranks")
{
    const auto [lo, hi] = ci99Ranks(100);
    CHECK(lo == 37);
    CHECK(hi == 64);
    for (int m = 1; m <= 200; ++m)
    {
        const auto [l, u] = ci99Ranks(m);
        CHECK(l >= 1);
        CHECK(u <= m);
        CHECK(l <= u);
        CHECK(u == std::max(l, m + 1 - l));  // symmetric, clamped when m is tiny
    }
}

TEST_CASE("summaries")
{
    std::vector<RunRecord> records(3);
    records[0].cFinal = 1.0;
    records[1].cFinal = 2.0;
    records[2].cFinal = 3.0;
    SUBCASE("median of three")
    {
        CHECK(summarize(records, Metric::CFinal).median == 2.0);
        CHECK(summarize(records, Metric::CFinal).successRate == 1.0);
    }
    SUBCASE("all-infinite metric")
    {
        for (auto &r : records)
        {
            r.cFinal = kInf;
        }
        const auto stats = summarize(records, Metric::CFinal);
        CHECK(std::isinf(stats.median));
        CHECK(stats.successRate == 0.0);
    }
    SUBCASE("permutation invariance")
    {
        std::vector<RunRecord> many(101);
        RandomStream rng(55);
        for (auto &r : many)
        {
            r.tInit = rng.uniform01();
            r.cInit = rng.uniform01() < 0.2 ? kInf : rng.uniform01();
        }
        const auto base = summarize(many, Metric::CInit);
        for (int trial = 0; trial < 100; ++trial)
        {
            for (std::size_t i = many.size() - 1; i > 0; --i)
            {
                std::swap(many[i], many[rng.uniformInt(i + 1)]);
            }
            const auto shuffled = summarize(many, Metric::CInit);
            CHECK(shuffled.median == base.median);
            CHECK(shuffled.ci99Lo == base.ci99Lo);
            CHECK(shuffled.ci99Hi == base.ci99Hi);
            CHECK(shuffled.successRate == base.successRate);
        }
    }
}

TEST_CASE("single-cell matrix")
{
    const auto records = runMatrix(tinySpec());
    REQUIRE(records.size() == 1);
    CHECK(records[0].env == "np");
    CHECK(records[0].dim == 2);
    CHECK(records[0].planner == "dit");
    CHECK(std::isfinite(records[0].cFinal));
}

TEST_CASE("csv report")
{
    SUBCASE("empty records")
    {
        CHECK(recordsToCsv({}) == "env,dim,planner,seed,t_init,c_init,c_final\n");
    }
    SUBCASE("seven columns and inf markers")
    {
        RunRecord r;
        r.env = "np";
        r.dim = 4;
        r.planner = "dit";
        r.seed = 3;
        const std::string csv = recordsToCsv({r});
        const std::string row = csv.substr(csv.find('\n') + 1);
        CHECK(std::count(row.begin(), row.end(), ',') == 6);
        CHECK(row == "np,4,dit,3,inf,inf,inf\n");
    }
    SUBCASE("byte-stable across reruns")
    {
        const std::string a = recordsToCsv(runMatrix(tinySpec()));
        const std::string b = recordsToCsv(runMatrix(tinySpec()));
        CHECK(a == b);
        CHECK_FALSE(a.empty());
    }
}

TEST_CASE("json report round trip")
{
    auto spec = tinySpec();
    spec.runs = 2;
    const auto records = runMatrix(spec);
    const auto doc = nlohmann::json::parse(recordsToJson(records));
    REQUIRE(doc.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
    {
        CHECK(doc[i]["env"] == records[i].env);
        CHECK(doc[i]["dim"] == records[i].dim);
        CHECK(doc[i]["planner"] == records[i].planner);
        CHECK(doc[i]["seed"] == records[i].seed);
        if (std::isfinite(records[i].cFinal))
        {
            CHECK(doc[i]["c_final"].get<double>() == records[i].cFinal);
        }
        else
        {
            CHECK(doc[i]["c_final"] == "inf");
        }
        CHECK(doc[i]["trace"].size() == records[i].trace.size());
    }
}

TEST_CASE("paired seed protocol")
{
    auto spec = tinySpec();
    spec.planners = {"dit", "eit"};
    spec.runs = 3;
    const auto records = runMatrix(spec);
    REQUIRE(records.size() == 6);
    for (int run = 0; run < 3; ++run)
    {
        CHECK(records[run].planner == "dit");
        CHECK(records[3 + run].planner == "eit");
        CHECK(records[run].seed == records[3 + run].seed);
    }
}

TEST_CASE("random rectangle instances are distinct and labeled")
{
    BenchSpec spec;
    spec.envKind = "rr";
    spec.dims = {4};
    spec.runs = 1;
    spec.rrInstances = 3;
    spec.iterationBudget = 12000;
    spec.budgets[4] = 5.0;
    const auto records = runMatrix(spec);
    REQUIRE(records.size() == 3);
    CHECK(records[0].env == "rr-0");
    CHECK(records[1].env == "rr-1");
    CHECK(records[2].env == "rr-2");

    const Environment a = makeBenchEnvironment(spec, 4, 0);
    const Environment b = makeBenchEnvironment(spec, 4, 1);
    REQUIRE_FALSE(a.obstacles.empty());
    REQUIRE_FALSE(b.obstacles.empty());
    CHECK(a.obstacles[0].lower != b.obstacles[0].lower);
}

TEST_CASE("svg rendering")
{
    const Environment env = makeNarrowPassage(2);
    SUBCASE("two wall rectangles, no polyline without a path")
    {
        const std::string svg = renderSvg(env, nullptr, nullptr);
        std::size_t rects = 0;
        for (std::size_t pos = svg.find("<rect"); pos != std::string::npos;
             pos = svg.find("<rect", pos + 1))
        {
            ++rects;
        }
        CHECK(rects == 3);  // background + two wall slabs
        CHECK(svg.find("polyline") == std::string::npos);
    }
    SUBCASE("path polyline and clamping")
    {
        const std::vector<StateVec> path{{-0.2, 0.5}, {0.5, 0.61}, {1.4, 0.5}};
        const std::string svg = renderSvg(env, nullptr, &path);
        CHECK(svg.find("polyline") != std::string::npos);
        // Out-of-cube waypoints clamp to the viewport instead of escaping it.
        CHECK(svg.find("\"-") == std::string::npos);
        CHECK(svg.find(",-") == std::string::npos);
    }
}
