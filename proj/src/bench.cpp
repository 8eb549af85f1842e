#include "ditstar/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ditstar
{
    double defaultBudget(const std::string &envKind, int dim)
    {
        static const std::map<std::string, std::map<int, double>> kDefaults = {
            {"rr", {{4, 0.50}, {8, 1.00}, {16, 4.00}}},
            {"np", {{4, 0.12}, {8, 0.40}, {16, 0.60}}},
        };
        const auto kindIt = kDefaults.find(envKind);
        if (kindIt == kDefaults.end())
        {
            throw std::invalid_argument("defaultBudget: unknown env kind " + envKind);
        }
        const auto dimIt = kindIt->second.find(dim);
        if (dimIt == kindIt->second.end())
        {
            throw std::invalid_argument("defaultBudget: no default budget for this dimension, pass one");
        }
        return dimIt->second;
    }

    Environment makeBenchEnvironment(const BenchSpec &spec, int dim, int instance)
    {
        if (spec.envKind == "np")
        {
            return makeNarrowPassage(dim);
        }
        if (spec.envKind == "rr")
        {
            const std::uint64_t instanceSeed =
                spec.baseSeed * 1000003u + static_cast<std::uint64_t>(dim) * 7919u +
                static_cast<std::uint64_t>(instance);
            const int count = std::max(1, 10 * dim / 4);
            return makeRandomRectangles(dim, count, instanceSeed, 0.1, 0.5);
        }
        throw std::invalid_argument("makeBenchEnvironment: unknown env kind " + spec.envKind);
    }

    RunRecord runSingle(const Environment &env, const std::string &envLabel,
                        const std::string &planner, std::uint64_t seed, double budget,
                        const BenchSpec &spec)
    {
        RunRecord record;
        record.env = envLabel;
        record.dim = env.dim;
        record.planner = planner;
        record.seed = seed;

        PlannerConfig cfg;
        cfg.seed = seed;
        cfg.direction.filterMode = spec.filterMode;
        cfg.iterationBudget = spec.iterationBudget;
        try
        {
            std::vector<SolutionRecord> solutions;
            if (planner == "rrtconnect")
            {
                solutions = rrtConnect(env, cfg, budget);
            }
            else if (planner == "dit" || planner == "eit")
            {
                cfg.mode = planner == "dit" ? PlannerMode::Dit : PlannerMode::Eit;
                Planner instance(env, cfg);
                solutions = instance.plan(budget);
            }
            else
            {
                throw std::invalid_argument("runSingle: unknown planner " + planner);
            }
            for (const auto &solution : solutions)
            {
                record.trace.emplace_back(solution.t, solution.cost);
            }
            if (!solutions.empty())
            {
                record.tInit = solutions.front().t;
                record.cInit = solutions.front().cost;
                record.cFinal = solutions.back().cost;
            }
        }
        catch (const std::exception &)
        {
            // Per-run failures are recorded as unsuccessful, never aborting the
            // matrix.
        }
        return record;
    }

    std::vector<RunRecord> runMatrix(const BenchSpec &spec)
    {
        if (spec.runs < 1)
        {
            throw std::invalid_argument("runMatrix: runs must be >= 1");
        }
        std::vector<RunRecord> records;
        for (const int dim : spec.dims)
        {
            const auto budgetIt = spec.budgets.find(dim);
            const double budget =
                budgetIt != spec.budgets.end() ? budgetIt->second : defaultBudget(spec.envKind, dim);
            const int instances = spec.envKind == "rr" ? spec.rrInstances : 1;
            for (int instance = 0; instance < instances; ++instance)
            {
                const Environment env = makeBenchEnvironment(spec, dim, instance);
                std::string label = spec.envKind;
                if (spec.envKind == "rr")
                {
                    label += "-" + std::to_string(instance);
                }
                for (const auto &planner : spec.planners)
                {
                    for (int run = 0; run < spec.runs; ++run)
                    {
                        records.push_back(runSingle(env, label, planner,
                                                    spec.baseSeed + static_cast<std::uint64_t>(run),
                                                    budget, spec));
                    }
                }
            }
        }
        return records;
    }

    namespace
    {
        /// P(X <= k) for X ~ Binomial(m, 1/2).
        double binomialCdfHalf(int k, int m)
        {
            double mass = 0.0;
            for (int i = 0; i <= k; ++i)
            {
                mass += std::exp(std::lgamma(m + 1.0) - std::lgamma(i + 1.0) -
                                 std::lgamma(m - i + 1.0) - m * std::log(2.0));
            }
            return mass;
        }

        double metricValue(const RunRecord &record, Metric metric)
        {
            switch (metric)
            {
                case Metric::TInit:
                    return record.tInit;
                case Metric::CInit:
                    return record.cInit;
                default:
                    return record.cFinal;
            }
        }

        std::string formatValue(double v)
        {
            if (std::isinf(v))
            {
                return "inf";
            }
            char buffer[32];
            std::snprintf(buffer, sizeof(buffer), "%.9g", v);
            return buffer;
        }
    }  // namespace

    std::pair<int, int> ci99Ranks(int m)
    {
        if (m < 1)
        {
            throw std::invalid_argument("ci99Ranks: m must be >= 1");
        }
        // Largest lower rank keeping at most 0.005 mass strictly below it; the
        // upper rank mirrors it.
        int lo = 1;
        for (int l = 1; l <= m; ++l)
        {
            if (binomialCdfHalf(l - 1, m) <= 0.005)
            {
                lo = l;
            }
            else
            {
                break;
            }
        }
        const int hi = std::max(lo, m + 1 - lo);
        return {lo, hi};
    }

    SummaryStats summarize(const std::vector<RunRecord> &records, Metric metric)
    {
        if (records.empty())
        {
            throw std::invalid_argument("summarize: no records");
        }
        std::vector<double> values;
        values.reserve(records.size());
        std::size_t finite = 0u;
        for (const auto &record : records)
        {
            const double v = metricValue(record, metric);
            values.push_back(v);
            if (std::isfinite(v))
            {
                ++finite;
            }
        }
        std::sort(values.begin(), values.end());  // +inf orders last

        SummaryStats stats;
        const auto m = static_cast<int>(values.size());
        stats.median = values[static_cast<std::size_t>((m - 1) / 2)];
        const auto [lo, hi] = ci99Ranks(m);
        stats.ci99Lo = values[static_cast<std::size_t>(lo - 1)];
        stats.ci99Hi = values[static_cast<std::size_t>(hi - 1)];
        stats.successRate = static_cast<double>(finite) / static_cast<double>(m);
        return stats;
    }

    std::string recordsToCsv(const std::vector<RunRecord> &records)
    {
        std::ostringstream out;
        out << "env,dim,planner,seed,t_init,c_init,c_final\n";
        for (const auto &record : records)
        {
            out << record.env << ',' << record.dim << ',' << record.planner << ',' << record.seed
                << ',' << formatValue(record.tInit) << ',' << formatValue(record.cInit) << ','
                << formatValue(record.cFinal) << '\n';
        }
        return out.str();
    }

    std::string recordsToJson(const std::vector<RunRecord> &records)
    {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto &record : records)
        {
            nlohmann::json entry;
            entry["env"] = record.env;
            entry["dim"] = record.dim;
            entry["planner"] = record.planner;
            entry["seed"] = record.seed;
            entry["t_init"] = std::isfinite(record.tInit) ? nlohmann::json(record.tInit)
                                                          : nlohmann::json("inf");
            entry["c_init"] = std::isfinite(record.cInit) ? nlohmann::json(record.cInit)
                                                          : nlohmann::json("inf");
            entry["c_final"] = std::isfinite(record.cFinal) ? nlohmann::json(record.cFinal)
                                                            : nlohmann::json("inf");
            nlohmann::json trace = nlohmann::json::array();
            for (const auto &[t, cost] : record.trace)
            {
                trace.push_back({{"t", t}, {"cost", cost}});
            }
            entry["trace"] = std::move(trace);
            doc.push_back(std::move(entry));
        }
        return doc.dump(2);
    }

    void exportReport(const std::vector<RunRecord> &records, const std::string &path,
                      const std::string &format)
    {
        std::string payload;
        if (format == "csv")
        {
            payload = recordsToCsv(records);
        }
        else if (format == "json")
        {
            payload = recordsToJson(records);
        }
        else
        {
            throw std::invalid_argument("exportReport: unknown format " + format);
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
        {
            throw std::runtime_error("exportReport: cannot open " + path);
        }
        out << payload;
        if (!out)
        {
            throw std::runtime_error("exportReport: write failed for " + path);
        }
    }

    namespace
    {
        double clamp01(double v)
        {
            return std::clamp(v, 0.0, 1.0);
        }

        // Unit square mapped to a 600px viewport, y up.
        double svgX(double x)
        {
            return clamp01(x) * 600.0;
        }

        double svgY(double y)
        {
            return (1.0 - clamp01(y)) * 600.0;
        }
    }  // namespace

    std::string renderSvg(const Environment &env,
                          const std::vector<std::pair<StateVec, StateVec>> *treeEdges,
                          const std::vector<StateVec> *path)
    {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 600 600\">\n";
        out << "  <rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\" "
               "stroke=\"black\"/>\n";
        for (const auto &rect : env.obstacles)
        {
            const double x = svgX(rect.lower[0]);
            const double y = svgY(rect.upper[1]);
            const double w = svgX(rect.upper[0]) - x;
            const double h = svgY(rect.lower[1]) - y;
            out << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
                << "\" fill=\"#777777\"/>\n";
        }
        if (treeEdges != nullptr)
        {
            for (const auto &[a, b] : *treeEdges)
            {
                out << "  <line x1=\"" << svgX(a[0]) << "\" y1=\"" << svgY(a[1]) << "\" x2=\""
                    << svgX(b[0]) << "\" y2=\"" << svgY(b[1])
                    << "\" stroke=\"#99bbdd\" stroke-width=\"1\"/>\n";
            }
        }
        if (path != nullptr && !path->empty())
        {
            out << "  <polyline fill=\"none\" stroke=\"#cc3355\" stroke-width=\"3\" points=\"";
            for (const auto &x : *path)
            {
                out << svgX(x[0]) << ',' << svgY(x[1]) << ' ';
            }
            out << "\"/>\n";
        }
        out << "  <circle cx=\"" << svgX(env.start[0]) << "\" cy=\"" << svgY(env.start[1])
            << "\" r=\"6\" fill=\"#118844\"/>\n";
        out << "  <circle cx=\"" << svgX(env.goal[0]) << "\" cy=\"" << svgY(env.goal[1])
            << "\" r=\"6\" fill=\"#7722aa\"/>\n";
        out << "</svg>\n";
        return out.str();
    }
}  // namespace ditstar
