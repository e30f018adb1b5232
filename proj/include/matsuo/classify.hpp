#pragma once

// Type-D configurations: one axis a and double axes b+c, d+e. Enumeration,
// closure dimensions bucketed by canonical diagram, and reports.

#include "matsuo/axial.hpp"

#include <cstdlib>
#include <functional>
#include <random>
#include <thread>

namespace matsuo {

struct TypeDConfig {
    int a = 0;
    std::pair<int, int> bc, de;

    std::array<int, 5> support() const { return {a, bc.first, bc.second, de.first, de.second}; }
    std::vector<Generator> generators(const FischerSpace& sp) const {
        return {Generator::single(sp, a), Generator::pair(sp, bc.first, bc.second), Generator::pair(sp, de.first, de.second)};
    }
    nlohmann::json to_json(const FischerSpace& sp) const {
        return {{"a", sp.label(a)},
                {"bc", {sp.label(bc.first), sp.label(bc.second)}},
                {"de", {sp.label(de.first), sp.label(de.second)}}};
    }
};

struct Sampling {
    bool full = true;
    std::size_t count = 0;
    std::uint64_t seed = 0;

    static Sampling exhaustive() { return {}; }
    static Sampling random(std::size_t count, std::uint64_t seed) { return {false, count, seed}; }
};

inline constexpr std::size_t kFullEnumerationLimit = 40;

/// Pairs p < q of distinct non-collinear points.
inline std::vector<std::pair<int, int>> orthogonal_pairs(const FischerSpace& sp) {
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(sp.size());
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
            if (!sp.collinear(p, q)) out.emplace_back(p, q);
    return out;
}

/// Configurations up to b<->c, d<->e and the pair swap: pairs are stored
/// ordered and bc precedes de. On a connected space a is the first point.
inline std::vector<TypeDConfig> enumerate_configs(const FischerSpace& sp, const Sampling& sampling,
                                                  const std::function<bool(const Diagram&)>& filter = nullptr) {
    const auto pairs = orthogonal_pairs(sp);
    std::vector<int> anchors;
    if (sp.connected())
        anchors.push_back(0);
    else
        for (std::size_t p = 0; p < sp.size(); ++p) anchors.push_back(static_cast<int>(p));
    auto valid = [&](int a, const std::pair<int, int>& x, const std::pair<int, int>& y) {
        const std::array<int, 5> v{a, x.first, x.second, y.first, y.second};
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i + 1; j < 5; ++j)
                if (v[i] == v[j]) return false;
        return true;
    };
    auto keep = [&](const TypeDConfig& c) { return !filter || filter(sp.diagram_of(c.a, c.bc, c.de)); };
    std::vector<TypeDConfig> out;
    if (sampling.full) {
        if (sp.size() > kFullEnumerationLimit)
            throw space_error("full enumeration is limited to " + std::to_string(kFullEnumerationLimit) +
                              " points; " + sp.id() + " has " + std::to_string(sp.size()) + ", use sampling");
        for (int a : anchors)
            for (std::size_t i = 0; i < pairs.size(); ++i)
                for (std::size_t j = i + 1; j < pairs.size(); ++j)
                    if (valid(a, pairs[i], pairs[j])) {
                        TypeDConfig c{a, pairs[i], pairs[j]};
                        if (keep(c)) out.push_back(c);
                    }
        return out;
    }
    if (pairs.size() < 2) return out;
    std::mt19937_64 rng(sampling.seed);
    std::uniform_int_distribution<std::size_t> pick_pair(0, pairs.size() - 1), pick_anchor(0, anchors.size() - 1);
    std::size_t attempts = 0;
    const std::size_t max_attempts = 1000 * (sampling.count + 1);
    while (out.size() < sampling.count && attempts++ < max_attempts) {
        const int a = anchors[pick_anchor(rng)];
        std::size_t i = pick_pair(rng), j = pick_pair(rng);
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        if (!valid(a, pairs[i], pairs[j])) continue;
        TypeDConfig c{a, pairs[i], pairs[j]};
        if (keep(c)) out.push_back(c);
    }
    return out;
}

/// Generator blocks joined when their supports meet the same diagram component.
inline std::vector<std::vector<std::size_t>> component_partition(const Diagram& d) {
    const auto comps = d.components();
    std::array<int, 5> comp_of{};
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int v : comps[c]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    // generator -> vertices: a = {0}, b+c = {1,2}, d+e = {3,4}
    const std::array<std::vector<int>, 3> verts{{{0}, {1, 2}, {3, 4}}};
    std::array<std::size_t, 3> parent{0, 1, 2};
    auto root = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };
    for (std::size_t g = 0; g < 3; ++g)
        for (std::size_t h = g + 1; h < 3; ++h) {
            bool meet = false;
            for (int u : verts[g])
                for (int v : verts[h]) meet = meet || comp_of[static_cast<std::size_t>(u)] == comp_of[static_cast<std::size_t>(v)];
            if (meet) parent[root(h)] = root(g);
        }
    std::map<std::size_t, std::vector<std::size_t>> blocks;
    for (std::size_t g = 0; g < 3; ++g) blocks[root(g)].push_back(g);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [r, b] : blocks) out.push_back(b);
    return out;
}

inline const std::set<std::size_t>& theorem_dimensions() {
    static const std::set<std::size_t> dims{7, 9, 12, 13, 20, 29, 30, 39, 42, 89, 90};
    return dims;
}

struct ConfigResult {
    std::string code;
    bool connected = false;
    std::size_t dim = 0;
    bool primitive = false;
    std::optional<bool> direct_sum;  ///< only for disconnected diagrams
};

template <class S>
ConfigResult evaluate_config(const std::shared_ptr<const MatsuoAlgebra<S>>& alg, const ScalarMode& mode,
                             const TypeDConfig& c) {
    const FischerSpace& sp = alg->space();
    const Diagram d = sp.diagram_of(c.a, c.bc, c.de);
    ConfigResult r;
    r.code = canonical_diagram(d);
    r.connected = d.connected();
    const auto gens = c.generators(sp);
    const auto A = close<S>(alg, gens, mode);
    r.dim = A.dimension();
    r.primitive = true;
    for (const auto& g : gens) r.primitive = r.primitive && check_primitive(A, g.template dense<S>(sp.size()));
    if (!r.connected) r.direct_sum = is_direct_sum(A, component_partition(d));
    return r;
}

inline std::size_t worker_count() {
    if (const char* env = std::getenv("MATSUO_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

struct ClassifyOptions {
    Rational eta0 = 7;
    Sampling sampling;
    bool recertify = true;
    bool allow_critical = false;
    std::size_t threads = 0;  ///< 0 reads MATSUO_THREADS
};

struct DimStats {
    std::size_t count = 0, primitive_count = 0;
    std::size_t sample = 0;  ///< config ordinal
    std::optional<std::size_t> symbolic_dim;
};

struct Bucket {
    std::string code;
    bool connected = false;
    std::size_t examined = 0;
    std::size_t direct_sum_failures = 0;
    std::map<std::size_t, DimStats> dims;
};

struct ClassificationReport {
    SpacePtr space;
    ClassifyOptions options;
    std::vector<TypeDConfig> configs;
    std::map<std::string, Bucket> buckets;

    /// Connected buckets with a primitive-only dimension outside the known sets.
    std::vector<std::string> unclassified() const {
        std::vector<std::string> out;
        for (const auto& [code, b] : buckets) {
            if (!b.connected) continue;
            for (const auto& [dim, st] : b.dims)
                if (st.primitive_count && !theorem_dimensions().count(dim)) {
                    out.push_back(code);
                    break;
                }
        }
        return out;
    }

    bool all_direct_sums() const {
        for (const auto& [code, b] : buckets)
            if (b.direct_sum_failures) return false;
        return true;
    }

    bool certified() const {
        for (const auto& [code, b] : buckets)
            for (const auto& [dim, st] : b.dims)
                if (st.symbolic_dim && *st.symbolic_dim != dim) return false;
        return true;
    }

    bool realizes_connected(std::size_t dim) const {
        for (const auto& [code, b] : buckets)
            if (b.connected) {
                auto it = b.dims.find(dim);
                if (it != b.dims.end() && it->second.primitive_count) return true;
            }
        return false;
    }

    /// Invariants the command line treats as fatal.
    bool ok() const { return all_direct_sums() && certified() && unclassified().size() <= 2; }

    nlohmann::json to_json() const {
        const FischerSpace& sp = *space;
        nlohmann::json bs = nlohmann::json::array();
        for (const auto& [code, b] : buckets) {
            nlohmann::json dims = nlohmann::json::array();
            for (const auto& [dim, st] : b.dims) {
                nlohmann::json e{{"dim", dim},
                                 {"count", st.count},
                                 {"primitive_count", st.primitive_count},
                                 {"sample_config", configs[st.sample].to_json(sp)}};
                if (st.symbolic_dim) e["symbolic_dim"] = *st.symbolic_dim;
                dims.push_back(e);
            }
            const Diagram d = diagram_from_bits(code);
            nlohmann::json adj = nlohmann::json::array();
            for (const auto& row : d.adjacency) {
                nlohmann::json r = nlohmann::json::array();
                for (bool x : row) r.push_back(x ? 1 : 0);
                adj.push_back(r);
            }
            nlohmann::json bj{{"diagram_code", code},
                              {"adjacency", adj},
                              {"connected", b.connected},
                              {"examined", b.examined},
                              {"dims", dims}};
            if (!b.connected) bj["direct_sum_failures"] = b.direct_sum_failures;
            const auto unc = unclassified();
            if (std::find(unc.begin(), unc.end(), code) != unc.end()) bj["label"] = "unclassified (D8/D9 candidate)";
            bs.push_back(bj);
        }
        nlohmann::json j{{"ambient", sp.id()},
                         {"mode", "eta=" + to_string(options.eta0)},
                         {"sampling", options.sampling.full ? "full" : "seeded-random"},
                         {"configs", configs.size()},
                         {"buckets", bs},
                         {"unclassified_codes", unclassified()},
                         {"all_direct_sums", all_direct_sums()},
                         {"symbolically_certified", certified()}};
        if (!options.sampling.full) {
            j["seed"] = options.sampling.seed;
            j["sample_count"] = options.sampling.count;
        }
        return j;
    }

    std::string to_csv() const {
        std::string out = "diagram_code,connected,examined,dim,count,primitive_count,symbolic_dim\n";
        for (const auto& [code, b] : buckets)
            for (const auto& [dim, st] : b.dims)
                out += code + "," + (b.connected ? "1" : "0") + "," + std::to_string(b.examined) + "," +
                       std::to_string(dim) + "," + std::to_string(st.count) + "," + std::to_string(st.primitive_count) +
                       "," + (st.symbolic_dim ? std::to_string(*st.symbolic_dim) : "") + "\n";
        return out;
    }
};

inline ClassificationReport classify(const SpacePtr& sp, const ClassifyOptions& opt = {}) {
    ClassificationReport rep;
    rep.space = sp;
    rep.options = opt;
    const auto mode = ScalarMode::evaluated(opt.eta0, opt.allow_critical);
    check_mode(*sp, mode);
    rep.configs = enumerate_configs(*sp, opt.sampling);
    const std::size_t n = rep.configs.size();
    std::vector<ConfigResult> results(n);
    const std::size_t threads = std::max<std::size_t>(1, std::min(opt.threads ? opt.threads : worker_count(), n));
    auto work = [&](std::size_t tid) {
        auto alg = make_algebra<Rational>(sp, mode);
        for (std::size_t k = tid; k < n; k += threads) results[k] = evaluate_config(alg, mode, rep.configs[k]);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (std::size_t k = 0; k < n; ++k) {
        const auto& r = results[k];
        auto& b = rep.buckets[r.code];
        b.code = r.code;
        b.connected = r.connected;
        ++b.examined;
        if (r.direct_sum && !*r.direct_sum) ++b.direct_sum_failures;
        auto [it, fresh] = b.dims.try_emplace(r.dim);
        if (fresh) it->second.sample = k;
        ++it->second.count;
        if (r.primitive) ++it->second.primitive_count;
    }
    if (opt.recertify) {
        auto alg = make_algebra<EtaScalar>(sp, ScalarMode::symbolic_mode());
        for (auto& [code, b] : rep.buckets)
            for (auto& [dim, st] : b.dims)
                st.symbolic_dim = close<EtaScalar>(alg, rep.configs[st.sample].generators(*sp), ScalarMode::symbolic_mode())
                                      .dimension();
    }
    return rep;
}

}  // namespace matsuo
