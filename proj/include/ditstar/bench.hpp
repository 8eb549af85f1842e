#ifndef DITSTAR_BENCH_HPP
#define DITSTAR_BENCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ditstar/planner.hpp"
#include "ditstar/world.hpp"

namespace ditstar
{
    struct BenchSpec
    {
        std::string envKind{"np"};  // "rr" | "np"
        std::vector<int> dims{4};
        std::vector<std::string> planners{"dit"};  // dit | eit | rrtconnect
        int runs{20};
        std::map<int, double> budgets;  // dim -> seconds; empty entries use defaults
        std::uint64_t baseSeed{0u};
        FilterMode filterMode{FilterMode::ConeKeep};
        /// Nonzero switches every run to the deterministic iteration budget,
        /// making reports byte-reproducible.
        std::uint64_t iterationBudget{0u};
        int rrInstances{10};
    };

    struct RunRecord
    {
        std::string env;
        int dim{0};
        std::string planner;
        std::uint64_t seed{0u};
        double tInit{kInf};
        double cInit{kInf};
        double cFinal{kInf};
        std::vector<std::pair<double, double>> trace;  // (t, cost)
    };

    enum class Metric
    {
        TInit,
        CInit,
        CFinal
    };

    struct SummaryStats
    {
        double median{kInf};
        double ci99Lo{kInf};
        double ci99Hi{kInf};
        double successRate{0.0};
    };

    /// Default per-dimension budgets for the two benchmark families.
    double defaultBudget(const std::string &envKind, int dim);

    Environment makeBenchEnvironment(const BenchSpec &spec, int dim, int instance);

    /// One planner execution; failures come back as +inf records, they never
    /// throw out of the matrix.
    RunRecord runSingle(const Environment &env, const std::string &envLabel,
                        const std::string &planner, std::uint64_t seed, double budget,
                        const BenchSpec &spec);

    std::vector<RunRecord> runMatrix(const BenchSpec &spec);

    /// Nonparametric 99% CI order-statistic ranks (1-indexed, symmetric,
    /// <= 0.005 binomial mass per side).
    std::pair<int, int> ci99Ranks(int m);

    SummaryStats summarize(const std::vector<RunRecord> &records, Metric metric);

    std::string recordsToCsv(const std::vector<RunRecord> &records);
    std::string recordsToJson(const std::vector<RunRecord> &records);
    void exportReport(const std::vector<RunRecord> &records, const std::string &path,
                      const std::string &format);

    /// SVG rendering of the (dims 0,1) slice: obstacles, start/goal markers,
    /// optional tree edges and solution polyline.
    std::string renderSvg(const Environment &env,
                          const std::vector<std::pair<StateVec, StateVec>> *treeEdges,
                          const std::vector<StateVec> *path);
}  // namespace ditstar

#endif
