#include "twl/cells.hpp"
#include "twl/distal.hpp"
#include "twl/errors.hpp"
#include "twl/generator.hpp"
#include "twl/neighborhoods.hpp"
#include "twl/patterns.hpp"
#include "twl/trigraph.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw twl::input_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw twl::input_error("cannot write " + path);
    out << text;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<std::size_t> parse_id_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw twl::input_error("bad id in list: " + item);
        }
    }
    if (out.empty()) throw twl::input_error("empty id list");
    return out;
}

json division_json(const twl::Division& d) {
    return json{{"rowCuts", d.rowCuts}, {"colCuts", d.colCuts}};
}

struct Options {
    std::string mode; // optional positional per subcommand
    std::string inFile, orderFile, setIds, outDir;
    std::size_t t = 0, theta = 8, cap = 0;
    double r = 1.0, eps = 0.1;
    std::uint64_t seed = 1;
    bool mixed = false, grid = false;
    std::string variant = "ck";
    bool tSet = false, capSet = false;
};

twl::Graph load_graph(const Options& o) {
    if (o.inFile.empty()) throw twl::input_error("--in is required");
    return twl::parse_graph(slurp(o.inFile));
}

twl::VertexOrder load_order(const Options& o, std::size_t n) {
    if (o.orderFile.empty()) return twl::VertexOrder::identity(n);
    return twl::parse_order(slurp(o.orderFile), n);
}

std::vector<std::size_t> load_set(const Options& o) {
    if (o.setIds.empty()) throw twl::input_error("--set is required");
    return parse_id_list(o.setIds);
}

json cmd_gen(const Options& o) {
    std::size_t n = o.capSet ? o.cap : 50;
    if (n == 0) throw twl::input_error("instance size must be positive");
    auto inst = twl::gen_certified(o.t, n, o.seed);
    json payload = json::parse(twl::to_json(inst));
    auto rep = twl::verify_sequence(inst.graph, inst.sequence, inst.t);
    payload["maxRedSeen"] = rep.maxRedSeen;
    if (!o.outDir.empty()) {
        std::filesystem::create_directories(o.outDir);
        spit(o.outDir + "/instance.json", payload.dump());
    }
    return payload;
}

json cmd_tww(const Options& o, int& exitCode) {
    if (o.mode == "verify") {
        if (o.inFile.empty()) throw twl::input_error("--in is required");
        auto inst = twl::certified_from_json(slurp(o.inFile));
        std::size_t bound = o.tSet ? o.t : inst.t;
        auto rep = twl::verify_sequence(inst.graph, inst.sequence, bound);
        if (!rep.valid || !rep.withinBound) exitCode = kExitVerification;
        return json{{"valid", rep.valid},
                    {"withinBound", rep.withinBound},
                    {"bound", bound},
                    {"maxRedSeen", rep.maxRedSeen},
                    {"structuralError", rep.structuralError}};
    }
    twl::Graph g = load_graph(o);
    std::size_t limit = o.capSet ? o.cap : 10;
    auto res = twl::exact_twinwidth(g, limit);
    return json{{"tww", res.width}, {"witness", res.witness.merges}};
}

json cmd_minors(const Options& o) {
    if (o.inFile.empty()) throw twl::input_error("--in is required");
    twl::BitMatrix m = twl::parse_matrix(slurp(o.inFile));
    std::size_t cap = o.capSet ? o.cap : 16;
    twl::MinorResult res = o.mixed ? twl::max_mixed_minor(m, cap) : twl::max_grid_minor(m, cap);
    return json{{"kind", o.mixed ? "mixed" : "grid"},
                {"t", res.t},
                {"exact", res.exact},
                {"witness", division_json(res.witness)}};
}

json cmd_corners(const Options& o) {
    if (o.inFile.empty()) throw twl::input_error("--in is required");
    twl::BitMatrix m = twl::parse_matrix(slurp(o.inFile));
    twl::BitMatrix c = twl::corner_matrix(m);
    twl::CornerRowPairs pr = twl::corner_row_pairs(m);
    return json{{"cornerMatrix", twl::serialize_matrix(c)},
                {"p", pr.p},
                {"pairs", pr.pairs},
                {"distinctColumns", pr.distinctColumns},
                {"columnBound", pr.columnBound.get_str()},
                {"ok", pr.ok}};
}

json cmd_nbhd(const Options& o) {
    twl::Graph g = load_graph(o);
    auto A = load_set(o);
    auto fam = twl::neighborhoods_in(g, A);
    json payload{{"count", fam.size()},
                 {"hasEmpty", fam.hasEmpty},
                 {"representatives", twl::representative_set(g, A)}};
    std::size_t cap = o.capSet ? o.cap : 12;
    if (g.num_vertices() <= cap) {
        payload["vc"] = twl::vc_dimension(g, cap);
        std::vector<std::size_t> pi;
        for (std::size_t k = 0; k <= g.num_vertices(); ++k)
            pi.push_back(twl::shatter_function(g, k, cap));
        payload["shatter"] = pi;
    }
    return payload;
}

json cmd_cells(const Options& o, int& exitCode) {
    twl::Graph g = load_graph(o);
    twl::VertexOrder ord = load_order(o, g.num_vertices());
    auto A = load_set(o);
    if (o.mode == "decode") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        twl::CellPartition part = twl::partition_from_json(buf.str());
        json cells = json::array();
        bool all = true;
        for (const auto& cell : part.cells) {
            auto decoded = twl::decode_cell(g, ord, A, cell.descriptor);
            bool match = decoded == cell.members;
            all = all && match;
            cells.push_back(
                {{"stored", cell.members}, {"decoded", decoded}, {"match", match}});
        }
        if (!all) exitCode = kExitVerification;
        return json{{"allMatch", all}, {"cells", cells}};
    }
    twl::CellPartition part = twl::cell_partition(g, ord, A, o.theta, o.tSet ? o.t : 0);
    json payload = json::parse(twl::to_json(part));
    payload["blockCount"] = part.blockCount;
    payload["maxAnchors"] = part.maxAnchors;
    if (!o.outDir.empty()) {
        std::filesystem::create_directories(o.outDir);
        spit(o.outDir + "/partition.json", twl::to_json(part));
    }
    return payload;
}

json cmd_cutting(const Options& o, int& exitCode) {
    twl::Graph g = load_graph(o);
    twl::VertexOrder ord = load_order(o, g.num_vertices());
    auto A = load_set(o);
    auto cut = twl::cutting(g, ord, A, o.r, o.seed);
    auto chk = twl::verify_cutting(g, A, cut.parts, cut.r);
    if (!chk.ok) exitCode = kExitVerification;
    std::size_t maxCrossing = 0;
    for (std::size_t c : cut.crossingCounts) maxCrossing = std::max(maxCrossing, c);
    return json{{"r", cut.r},
                {"parts", cut.parts.size()},
                {"maxCrossing", maxCrossing},
                {"retries", cut.retries},
                {"sampleSize", cut.sampleSize},
                {"crossingCounts", cut.crossingCounts},
                {"partition", cut.parts},
                {"verified", chk.ok}};
}

json cmd_regularity(const Options& o, int& exitCode) {
    twl::Graph g = load_graph(o);
    auto reg = twl::regularity(g, o.eps, o.seed);
    auto chk = twl::verify_regularity(g, reg.parts, reg.epsilon);
    if (!chk.ok) exitCode = kExitVerification;
    double n = static_cast<double>(g.num_vertices());
    return json{{"epsilon", reg.epsilon},
                {"K", reg.parts.size()},
                {"defect", reg.defect},
                {"defectRatio", n > 0 ? static_cast<double>(reg.defect) / (n * n) : 0.0},
                {"retries", reg.retries},
                {"sampleSize", reg.sampleSize},
                {"goodPairs", reg.goodPairs.size()},
                {"verified", chk.ok}};
}

// The suite driver: generates a deterministic corpus of certified
// instances, runs every verifier over a parameter grid, and archives the
// measured curves as CSV next to a JSON summary.
json cmd_suite(const Options& o, int& exitCode) {
    std::vector<std::size_t> families =
        o.setIds.empty() ? std::vector<std::size_t>{0, 1, 2} : parse_id_list(o.setIds);
    std::size_t perFamily = o.capSet ? o.cap : 4;
    if (perFamily == 0) throw twl::input_error("empty suite config");
    std::string outDir = o.outDir.empty() ? "suite_out" : o.outDir;
    std::filesystem::create_directories(outDir);

    std::vector<std::string> failures;
    std::ostringstream epsCsv, cutCsv, ratioCsv;
    epsCsv << "t,n,epsilon,K,defectRatio,retries\n";
    cutCsv << "t,n,r,parts,maxCrossing,retries\n";
    ratioCsv << "t,n,setSize,distinct,ratio\n";
    double maxRatio = 0.0;
    std::mt19937_64 rng(o.seed);

    std::size_t idx = 0;
    for (std::size_t t : families) {
        for (std::size_t i = 0; i < perFamily; ++i, ++idx) {
            std::size_t n = 20 + 15 * i;
            twl::CertifiedInstance inst;
            try {
                inst = twl::gen_certified(t, n, o.seed + idx * 1000 + t);
            } catch (const twl::resource_limit_error& e) {
                failures.push_back("gen t=" + std::to_string(t) + " n=" + std::to_string(n) +
                                   ": " + e.what());
                continue;
            }
            auto rep = twl::verify_sequence(inst.graph, inst.sequence, t);
            if (!rep.valid || !rep.withinBound)
                failures.push_back("verify_sequence t=" + std::to_string(t) +
                                   " n=" + std::to_string(n));

            // Neighborhood-ratio table over random non-empty sets.
            for (int trial = 0; trial < 3; ++trial) {
                std::size_t k = 1 + rng() % n;
                std::vector<std::size_t> pool(n);
                for (std::size_t v = 0; v < n; ++v) pool[v] = v;
                std::shuffle(pool.begin(), pool.end(), rng);
                pool.resize(k);
                std::size_t distinct = twl::distinct_neighborhoods(inst.graph, pool);
                double ratio = static_cast<double>(distinct) / static_cast<double>(k);
                maxRatio = std::max(maxRatio, ratio);
                ratioCsv << t << ',' << n << ',' << k << ',' << distinct << ',' << ratio << '\n';
            }

            // Cutting curve over A = all vertices.
            std::vector<std::size_t> A(n);
            for (std::size_t v = 0; v < n; ++v) A[v] = v;
            double rs[] = {1.0, std::ceil(std::sqrt(static_cast<double>(n))),
                           static_cast<double>(n)};
            for (double r : rs) {
                auto cut = twl::cutting(inst.graph, inst.order, A, r, o.seed + idx);
                auto chk = twl::verify_cutting(inst.graph, A, cut.parts, r);
                std::size_t maxC = 0;
                for (std::size_t c : cut.crossingCounts) maxC = std::max(maxC, c);
                if (!chk.ok)
                    failures.push_back("cutting t=" + std::to_string(t) +
                                       " n=" + std::to_string(n) + " r=" + std::to_string(r));
                cutCsv << t << ',' << n << ',' << r << ',' << cut.parts.size() << ',' << maxC
                       << ',' << cut.retries << '\n';
            }

            // Regularity curve.
            for (double eps : {0.2, 0.1, 0.05}) {
                auto reg = twl::regularity(inst.graph, eps, o.seed + idx);
                auto chk = twl::verify_regularity(inst.graph, reg.parts, eps);
                if (!chk.ok)
                    failures.push_back("regularity t=" + std::to_string(t) +
                                       " n=" + std::to_string(n) + " eps=" + std::to_string(eps));
                double nn = static_cast<double>(n);
                epsCsv << t << ',' << n << ',' << eps << ',' << reg.parts.size() << ','
                       << static_cast<double>(reg.defect) / (nn * nn) << ',' << reg.retries
                       << '\n';
            }

            // Cell round trip on a random set.
            std::vector<std::size_t> S;
            for (std::size_t v = 0; v < n; ++v)
                if (rng() & 1) S.push_back(v);
            if (S.empty()) S.push_back(0);
            auto part = twl::cell_partition(inst.graph, inst.order, S, 8);
            for (const auto& cell : part.cells) {
                auto decoded = twl::decode_cell(inst.graph, inst.order, S, cell.descriptor);
                if (decoded != cell.members) {
                    failures.push_back("cells round trip t=" + std::to_string(t) +
                                       " n=" + std::to_string(n));
                    break;
                }
            }
        }
    }

    spit(outDir + "/regularity_curve.csv", epsCsv.str());
    spit(outDir + "/cutting_curve.csv", cutCsv.str());
    spit(outDir + "/neighborhood_ratio.csv", ratioCsv.str());

    json payload{{"families", families},
                 {"instancesPerFamily", perFamily},
                 {"maxNeighborhoodRatio", maxRatio},
                 {"failures", failures},
                 {"ok", failures.empty()},
                 {"artifacts", {outDir + "/regularity_curve.csv", outDir + "/cutting_curve.csv",
                                outDir + "/neighborhood_ratio.csv"}}};
    spit(outDir + "/summary.json", payload.dump(2));
    if (!failures.empty()) exitCode = kExitVerification;
    return payload;
}

int run(int argc, char** argv) {
    if (const char* workers = std::getenv("TWL_WORKERS")) {
#ifdef _OPENMP
        int w = std::atoi(workers);
        if (w > 0) omp_set_num_threads(w);
#else
        (void)workers;
#endif
    }

    CLI::App app{"twin-width and matrix-pattern toolbox"};
    app.require_subcommand(1);
    Options o;

    std::map<std::string, CLI::App*> subs;
    for (const char* name : {"gen", "tww", "minors", "corners", "nbhd", "cells", "cutting",
                             "regularity", "suite"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("mode", o.mode, "optional mode (tww: exact|verify, cells: encode|decode)");
        sub->add_option("--in", o.inFile, "input file");
        sub->add_option("--order", o.orderFile, "vertex order file");
        sub->add_option("--set", o.setIds, "comma-separated vertex ids");
        sub->add_option("--t", o.t)->each([&](const std::string&) { o.tSet = true; });
        sub->add_option("--theta", o.theta);
        sub->add_option("--r", o.r);
        sub->add_option("--eps", o.eps);
        sub->add_option("--seed", o.seed);
        sub->add_option("--cap", o.cap)->each([&](const std::string&) { o.capSet = true; });
        sub->add_option("--variant", o.variant)->check(CLI::IsMember({"classic", "ck"}));
        sub->add_option("--out", o.outDir);
        sub->add_flag("--mixed", o.mixed);
        sub->add_flag("--grid", o.grid);
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << e.what() << "\n";
        return kExitInput;
    }

    auto t0 = std::chrono::steady_clock::now();
    int exitCode = kExitOk;
    json payload;
    std::string cmd;
    try {
        for (auto& [name, sub] : subs)
            if (sub->parsed()) cmd = name;
        if (cmd == "gen") payload = cmd_gen(o);
        else if (cmd == "tww") payload = cmd_tww(o, exitCode);
        else if (cmd == "minors") payload = cmd_minors(o);
        else if (cmd == "corners") payload = cmd_corners(o);
        else if (cmd == "nbhd") payload = cmd_nbhd(o);
        else if (cmd == "cells") payload = cmd_cells(o, exitCode);
        else if (cmd == "cutting") payload = cmd_cutting(o, exitCode);
        else if (cmd == "regularity") payload = cmd_regularity(o, exitCode);
        else if (cmd == "suite") payload = cmd_suite(o, exitCode);
        else {
            std::cerr << "unknown subcommand\n";
            return kExitInput;
        }
    } catch (const twl::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const twl::resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const twl::descriptor_error& e) {
        std::cerr << "descriptor rejected: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

    json report;
    std::ostringstream echo;
    for (int i = 1; i < argc; ++i) echo << (i > 1 ? " " : "") << argv[i];
    report["command"] = echo.str();
    json digests = json::object();
    for (const std::string& f : {o.inFile, o.orderFile})
        if (!f.empty()) digests[f] = fnv1a(slurp(f));
    report["inputs"] = digests;
    report["seed"] = o.seed;
    report["elapsedMs"] = ms;
    report["payload"] = payload;
    std::cout << report.dump() << "\n";
    return exitCode;
}

} // namespace

int main(int argc, char** argv) {
    return run(argc, argv);
}
