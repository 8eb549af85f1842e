#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ditstar/bench.hpp"

namespace
{
    std::string metricName(ditstar::Metric metric)
    {
        switch (metric)
        {
            case ditstar::Metric::TInit:
                return "t_init";
            case ditstar::Metric::CInit:
                return "c_init";
            default:
                return "c_final";
        }
    }

    void printSummary(const std::vector<ditstar::RunRecord> &records)
    {
        for (const auto metric :
             {ditstar::Metric::TInit, ditstar::Metric::CInit, ditstar::Metric::CFinal})
        {
            const auto stats = ditstar::summarize(records, metric);
            std::cout << metricName(metric) << ": median=" << stats.median << " ci99=["
                      << stats.ci99Lo << ", " << stats.ci99Hi << "] success=" << stats.successRate
                      << "\n";
        }
    }
}  // namespace

int main(int argc, char **argv)
{
    CLI::App app{"DIT* benchmark harness"};

    ditstar::BenchSpec spec;
    std::string outDir{"."};
    double budget = 0.0;
    bool svg = false;
    std::string filterMode{"cone"};

    app.add_option("--env", spec.envKind, "Environment family: rr or np")
        ->check(CLI::IsMember({"rr", "np"}));
    app.add_option("--dim", spec.dims, "State space dimensions (repeatable)");
    app.add_option("--planner", spec.planners, "Planners: dit, eit, rrtconnect (repeatable)");
    app.add_option("--runs", spec.runs, "Runs per (env, dim, planner) cell")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget", budget, "Wall-clock budget per run in seconds, 0 uses defaults");
    app.add_option("--seed", spec.baseSeed, "Base seed, run k uses seed base + k");
    app.add_option("--filter-mode", filterMode, "Direction filter: cone or literal")
        ->check(CLI::IsMember({"cone", "literal"}));
    app.add_option("--iters", spec.iterationBudget,
                   "Iteration budget, nonzero makes runs deterministic");
    app.add_option("--rr-instances", spec.rrInstances, "Random-rectangle worlds per dimension")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", outDir, "Output directory for report files");
    app.add_flag("--svg", svg, "Also render an SVG of each environment");

    CLI11_PARSE(app, argc, argv);

    spec.filterMode = filterMode == "literal" ? ditstar::FilterMode::PaperLiteral
                                              : ditstar::FilterMode::ConeKeep;
    if (budget > 0.0)
    {
        for (const int dim : spec.dims)
        {
            spec.budgets[dim] = budget;
        }
    }

    try
    {
        std::filesystem::create_directories(outDir);
        const auto records = ditstar::runMatrix(spec);
        ditstar::exportReport(records, outDir + "/report.csv", "csv");
        ditstar::exportReport(records, outDir + "/report.json", "json");
        if (svg)
        {
            for (const int dim : spec.dims)
            {
                const int instances = spec.envKind == "rr" ? spec.rrInstances : 1;
                for (int instance = 0; instance < instances; ++instance)
                {
                    const auto env = ditstar::makeBenchEnvironment(spec, dim, instance);
                    std::ofstream out(outDir + "/" + spec.envKind + "-d" + std::to_string(dim) +
                                      "-i" + std::to_string(instance) + ".svg");
                    out << ditstar::renderSvg(env, nullptr, nullptr);
                }
            }
        }
        printSummary(records);
        std::cout << "wrote " << records.size() << " records to " << outDir << "\n";
    }
    catch (const std::exception &e)
    {
        std::cerr << "bench: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
