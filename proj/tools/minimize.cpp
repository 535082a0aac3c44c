// Command-line front end: parse a problem file, minimize its decomposition
// greedily or explore every reduction exhaustively, and print a report.
//
// Exit codes: 0 success, 2 problem parse error, 3 continuity undecided,
// 4 node budget exhausted.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cadmin/errors.hpp"
#include "cadmin/pipeline.hpp"

namespace {

int run(const std::string& path, const std::string& modeFlag, const std::string& outFlag,
        int budgetFlag, const std::string& traceFile) {
    cadmin::Problem p;
    try {
        p = cadmin::problemFromFile(path);
    } catch (const cadmin::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }
    if (modeFlag == "greedy") p.options.mode = cadmin::SearchMode::Greedy;
    if (modeFlag == "exhaustive") p.options.mode = cadmin::SearchMode::Exhaustive;
    if (budgetFlag > 0) p.options.budgetNodes = budgetFlag;

    cadmin::ReportFormat fmt = cadmin::ReportFormat::Text;
    if (outFlag == "json") fmt = cadmin::ReportFormat::Json;
    if (outFlag == "dot") fmt = cadmin::ReportFormat::Dot;

    try {
        if (p.options.mode == cadmin::SearchMode::Greedy) {
            cadmin::GreedyResult r = cadmin::runGreedy(p);
            std::cout << cadmin::reportGreedy(r, fmt);
            if (!traceFile.empty()) {
                std::ofstream out(traceFile);
                if (!out) {
                    std::cerr << "cannot write trace file '" << traceFile << "'\n";
                    return 1;
                }
                out << cadmin::traceToJson(r.trace).dump(2) << "\n";
            }
            return 0;
        }
        cadmin::ReductionGraph g = cadmin::runExhaustive(p);
        std::cout << cadmin::reportGraph(g, fmt);
        if (!traceFile.empty()) {
            // No single trace exists in exhaustive mode; record the edge list.
            nlohmann::json edges = nlohmann::json::array();
            for (const cadmin::GraphEdge& e : g.edges)
                edges.push_back({{"from", e.from},
                                 {"site", e.site.str()},
                                 {"level", e.site.length()},
                                 {"to", e.to}});
            std::ofstream out(traceFile);
            if (!out) {
                std::cerr << "cannot write trace file '" << traceFile << "'\n";
                return 1;
            }
            out << edges.dump(2) << "\n";
        }
        if (!g.complete) {
            std::cerr << "node budget exhausted; the graph is incomplete\n";
            return 4;
        }
        return 0;
    } catch (const cadmin::ContinuityUndecidedError& e) {
        std::cerr << "continuity undecided: " << e.what() << "\n";
        return 3;
    } catch (const cadmin::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Build a cylindrical decomposition adapted to a family of algebraic "
        "sets and minimize it by merging removable sections"};

    std::string path;
    app.add_option("problem", path, "problem JSON file")->required();

    std::string mode;
    app.add_option("--mode", mode, "search mode (default from the problem file)")
        ->check(CLI::IsMember({"greedy", "exhaustive"}));

    std::string out = "text";
    app.add_option("--out", out, "report format")
        ->check(CLI::IsMember({"text", "json", "dot"}));

    int budget = 0;
    app.add_option("--budget-nodes", budget, "node cap for exhaustive exploration")
        ->check(CLI::PositiveNumber);

    std::string traceFile;
    app.add_option("--trace", traceFile,
                   "write the reduction trace (greedy) or edge list (exhaustive) "
                   "to this file as JSON");

    CLI11_PARSE(app, argc, argv);
    return run(path, mode, out, budget, traceFile);
}
