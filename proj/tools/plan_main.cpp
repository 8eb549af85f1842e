#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ditstar/planner.hpp"
#include "ditstar/world.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"Single planning query, one JSON line per solution"};

    std::string envPath;
    std::string configPath;
    double budget = 1.0;
    std::string planner{"dit"};

    app.add_option("--env-file", envPath, "Environment JSON file")->required();
    app.add_option("--config-file", configPath, "Planner configuration JSON file");
    app.add_option("--budget", budget, "Budget in seconds")->check(CLI::PositiveNumber);
    app.add_option("--planner", planner, "dit, eit or rrtconnect")
        ->check(CLI::IsMember({"dit", "eit", "rrtconnect"}));

    CLI11_PARSE(app, argc, argv);

    try
    {
        std::ifstream envIn(envPath);
        if (!envIn)
        {
            throw std::runtime_error("cannot open " + envPath);
        }
        std::stringstream envBuf;
        envBuf << envIn.rdbuf();
        const auto env = ditstar::environmentFromJson(envBuf.str());

        ditstar::PlannerConfig cfg;
        if (!configPath.empty())
        {
            std::ifstream cfgIn(configPath);
            if (!cfgIn)
            {
                throw std::runtime_error("cannot open " + configPath);
            }
            std::stringstream cfgBuf;
            cfgBuf << cfgIn.rdbuf();
            cfg = ditstar::plannerConfigFromJson(cfgBuf.str());
        }

        std::vector<ditstar::SolutionRecord> solutions;
        if (planner == "rrtconnect")
        {
            solutions = ditstar::rrtConnect(env, cfg, budget);
        }
        else
        {
            cfg.mode = planner == "dit" ? ditstar::PlannerMode::Dit : ditstar::PlannerMode::Eit;
            ditstar::Planner instance(env, cfg);
            solutions = instance.plan(budget);
        }
        for (const auto &solution : solutions)
        {
            std::cout << ditstar::solutionRecordToJsonLine(solution) << "\n";
        }
        return solutions.empty() ? 1 : 0;
    }
    catch (const std::exception &e)
    {
        std::cerr << "plan: " << e.what() << "\n";
        return 1;
    }
}
