#include "twl/generator.hpp"

#include "twl/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <random>

namespace twl {

namespace {

enum class Status { none, black, red };

// One attempt at growing a red-free n-vertex trigraph from a single vertex
// by splits with red degree <= t throughout.
std::optional<CertifiedInstance> try_generate(std::size_t t, std::size_t n, std::mt19937_64& rng) {
    std::vector<std::pair<std::size_t, std::size_t>> splits; // (parent, child)

    // Plain adjacency tables; the Trigraph class assumes a fixed live
    // universe shrinking under contraction, not a growing one.
    std::vector<Bitset> black(n, Bitset(n)), red(n, Bitset(n));
    std::size_t live = 1;

    std::uniform_real_distribution<double> coin(0.0, 1.0);

    auto redIncident = [&]() {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < live; ++v)
            if (red[v].any()) out.push_back(v);
        return out;
    };

    while (live < n) {
        std::vector<std::size_t> redVerts = redIncident();
        // Once the remaining splits barely cover the red-incident vertices,
        // stop seeding red and spend splits on resolving it.
        bool force = live + redVerts.size() + 1 >= n;
        double progress = static_cast<double>(live) / static_cast<double>(n);

        std::size_t parent;
        if (force && !redVerts.empty()) {
            parent = redVerts[rng() % redVerts.size()];
        } else {
            parent = rng() % live;
        }
        std::size_t child = live; // fresh id

        // Distribute the parent's edges over (parent, child).
        std::vector<std::pair<std::size_t, std::pair<Status, Status>>> plan;
        std::size_t parentRed = 0, childRed = 0;
        for (std::size_t x = 0; x < live; ++x) {
            if (x == parent) continue;
            if (black[parent].test(x)) {
                plan.push_back({x, {Status::black, Status::black}});
            } else if (red[parent].test(x)) {
                // x currently counts one red edge (to parent); keeping red on
                // both sides raises x's degree by one.
                double resolveP = force ? 1.0 : progress * progress;
                bool resolve = coin(rng) < resolveP;
                std::pair<Status, Status> pick;
                if (resolve) {
                    pick = (rng() & 1) ? std::make_pair(Status::black, Status::none)
                                       : std::make_pair(Status::none, Status::black);
                } else {
                    static const std::pair<Status, Status> options[] = {
                        {Status::black, Status::none}, {Status::none, Status::black},
                        {Status::black, Status::red},  {Status::red, Status::black},
                        {Status::red, Status::none},   {Status::none, Status::red},
                        {Status::red, Status::red},
                    };
                    pick = options[rng() % 7];
                    std::size_t xRed = red[x].count() - 1; // minus the edge to parent
                    std::size_t gain = (pick.first == Status::red ? 1u : 0u) +
                                       (pick.second == Status::red ? 1u : 0u);
                    bool fits = xRed + gain <= t &&
                                parentRed + (pick.first == Status::red ? 1u : 0u) <= t &&
                                childRed + (pick.second == Status::red ? 1u : 0u) <= t;
                    if (!fits)
                        pick = (rng() & 1) ? std::make_pair(Status::black, Status::none)
                                           : std::make_pair(Status::none, Status::black);
                }
                if (pick.first == Status::red) ++parentRed;
                if (pick.second == Status::red) ++childRed;
                plan.push_back({x, pick});
            }
        }
        // The edge between the two children is free: it vanishes when they
        // are contracted back. A red one seeds divergence.
        Status between = Status::none;
        if (rng() & 1) between = Status::black;
        if (t > 0 && !force && parentRed < t && childRed < t &&
            coin(rng) < 0.45 * (1.0 - progress) + 0.15)
            between = Status::red;

        // Apply the split.
        for (auto& [x, pick] : plan) {
            black[parent].reset(x);
            black[x].reset(parent);
            red[parent].reset(x);
            red[x].reset(parent);
            auto put = [&](std::size_t endpoint, Status s) {
                if (s == Status::black) {
                    black[endpoint].set(x);
                    black[x].set(endpoint);
                } else if (s == Status::red) {
                    red[endpoint].set(x);
                    red[x].set(endpoint);
                }
            };
            put(parent, pick.first);
            put(child, pick.second);
        }
        if (between == Status::black) {
            black[parent].set(child);
            black[child].set(parent);
        } else if (between == Status::red) {
            red[parent].set(child);
            red[child].set(parent);
        }
        splits.emplace_back(parent, child);
        ++live;
    }

    for (std::size_t v = 0; v < n; ++v)
        if (red[v].any()) return std::nullopt; // unresolved red edges; retry

    Graph g(n);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = black[v].find_next(v); u != Bitset::npos; u = black[v].find_next(u))
            g.add_edge(v, u);

    ContractionSequence seq;
    for (auto it = splits.rbegin(); it != splits.rend(); ++it)
        seq.merges.emplace_back(it->first, it->second);

    SequenceReport rep = verify_sequence(g, seq, t);
    if (!rep.valid || !rep.withinBound)
        throw invariant_violation_error("generated sequence failed verification: " +
                                        (rep.structuralError.empty() ? "red degree bound"
                                                                     : rep.structuralError));
    CertifiedInstance inst;
    inst.graph = std::move(g);
    inst.sequence = std::move(seq);
    inst.order = order_from_sequence(inst.graph, inst.sequence);
    inst.t = t;
    return inst;
}

} // namespace

CertifiedInstance gen_certified(std::size_t t, std::size_t n, std::uint64_t seed,
                                std::size_t retryBudget) {
    if (n == 0) throw input_error("target size must be at least 1");
    std::mt19937_64 rng(seed);
    for (std::size_t attempt = 0; attempt < retryBudget; ++attempt) {
        auto inst = try_generate(t, n, rng);
        if (inst) return std::move(*inst);
    }
    throw resource_limit_error("gen_certified: could not resolve red edges within " +
                               std::to_string(retryBudget) + " attempts");
}

std::string to_json(const CertifiedInstance& inst) {
    nlohmann::json j;
    j["n"] = inst.graph.num_vertices();
    j["edges"] = inst.graph.edge_list();
    j["sequence"] = inst.sequence.merges;
    j["order"] = inst.order.perm();
    j["t"] = inst.t;
    return j.dump();
}

CertifiedInstance certified_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("instance JSON: ") + e.what());
    }
    CertifiedInstance inst;
    try {
        std::size_t n = j.at("n").get<std::size_t>();
        Graph g(n);
        for (const auto& e : j.at("edges")) g.add_edge(e.at(0), e.at(1));
        inst.graph = std::move(g);
        for (const auto& m : j.at("sequence"))
            inst.sequence.merges.emplace_back(m.at(0), m.at(1));
        inst.order = VertexOrder(j.at("order").get<std::vector<std::size_t>>());
        inst.t = j.at("t").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("instance JSON: ") + e.what());
    }
    return inst;
}

} // namespace twl
