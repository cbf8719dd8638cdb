#include "lstar/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace lstar::oracle {

Diagram Diagram::reflected() const {
    Diagram r;
    r.n = n;
    r.arcs.reserve(arcs.size());
    for (auto [i, j] : arcs) r.arcs.emplace_back(n + 1 - j, n + 1 - i);
    std::sort(r.arcs.begin(), r.arcs.end());
    return r;
}

namespace {

// Darts are indexed 2*edge + end.  Edges: backbone (v, v+1) first, then
// arcs in list order.  End 0 is the smaller endpoint.
struct DartMap {
    int n_edges = 0;
    std::vector<int> sigma;  // counterclockwise successor at the vertex
    std::vector<int> alpha;  // opposite dart of the same edge
};

DartMap build_darts(const Diagram& d) {
    const int nb = d.n > 0 ? d.n - 1 : 0;
    const int ne = nb + static_cast<int>(d.arcs.size());
    DartMap m;
    m.n_edges = ne;
    m.sigma.assign(static_cast<std::size_t>(2 * ne), -1);
    m.alpha.assign(static_cast<std::size_t>(2 * ne), -1);

    // Per-vertex darts in counterclockwise order: east backbone, arc, west
    // backbone.  (Vertex on the line, arcs in the upper half-plane.)
    std::vector<std::vector<int>> rot(static_cast<std::size_t>(d.n) + 1);
    auto east_dart = [&](int v) { return 2 * (v - 1); };      // edge (v, v+1), end 0
    auto west_dart = [&](int v) { return 2 * (v - 2) + 1; };  // edge (v-1, v), end 1
    std::vector<int> arc_dart(static_cast<std::size_t>(d.n) + 1, -1);
    for (std::size_t a = 0; a < d.arcs.size(); ++a) {
        int e = nb + static_cast<int>(a);
        arc_dart[static_cast<std::size_t>(d.arcs[a].first)] = 2 * e;
        arc_dart[static_cast<std::size_t>(d.arcs[a].second)] = 2 * e + 1;
    }
    for (int v = 1; v <= d.n; ++v) {
        auto& r = rot[static_cast<std::size_t>(v)];
        if (v < d.n) r.push_back(east_dart(v));
        if (arc_dart[static_cast<std::size_t>(v)] >= 0)
            r.push_back(arc_dart[static_cast<std::size_t>(v)]);
        if (v > 1) r.push_back(west_dart(v));
        for (std::size_t k = 0; k < r.size(); ++k)
            m.sigma[static_cast<std::size_t>(r[k])] = r[(k + 1) % r.size()];
    }
    for (int e = 0; e < ne; ++e) {
        m.alpha[static_cast<std::size_t>(2 * e)] = 2 * e + 1;
        m.alpha[static_cast<std::size_t>(2 * e + 1)] = 2 * e;
    }
    return m;
}

}  // namespace

GenusReport genus(const Diagram& d) {
    GenusReport rep;
    rep.discs = d.n;
    rep.ribbons = (d.n > 0 ? d.n - 1 : 0) + static_cast<int>(d.arcs.size());
    if (d.n <= 1) {
        // A lone disc (or nothing) has one boundary circle per disc.
        rep.boundaries = d.n;
        rep.euler = rep.discs - rep.ribbons + rep.boundaries;
        rep.genus = d.n == 0 ? 0 : (2 - rep.euler) / 2;
        return rep;
    }
    DartMap m = build_darts(d);
    std::vector<char> seen(static_cast<std::size_t>(2 * m.n_edges), 0);
    int cycles = 0;
    for (int start = 0; start < 2 * m.n_edges; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        ++cycles;
        int dart = start;
        while (!seen[static_cast<std::size_t>(dart)]) {
            seen[static_cast<std::size_t>(dart)] = 1;
            dart = m.sigma[static_cast<std::size_t>(m.alpha[static_cast<std::size_t>(dart)])];
        }
    }
    rep.boundaries = cycles;
    rep.euler = rep.discs - rep.ribbons + rep.boundaries;
    rep.genus = (2 - rep.euler) / 2;
    return rep;
}

bool is_irreducible(const Diagram& d) {
    if (d.n <= 0) return false;
    if (d.n == 1) return true;
    // cut k is covered iff some arc (i,j) has i <= k < j
    std::vector<char> covered(static_cast<std::size_t>(d.n), 0);
    for (auto [i, j] : d.arcs)
        for (int k = i; k < j; ++k) covered[static_cast<std::size_t>(k)] = 1;
    for (int k = 1; k <= d.n - 1; ++k)
        if (!covered[static_cast<std::size_t>(k)]) return false;
    return true;
}

namespace {

struct Enumerator {
    int n;
    bool forbid_one_arcs;
    const std::function<void(const Diagram&)>* visit;
    Diagram cur;
    std::vector<char> used;

    void run() {
        cur.n = n;
        used.assign(static_cast<std::size_t>(n) + 1, 0);
        rec(1);
    }

    void rec(int i) {
        while (i <= n && used[static_cast<std::size_t>(i)]) ++i;
        if (i > n) {
            (*visit)(cur);
            return;
        }
        // i isolated
        rec(i + 1);
        // i paired to some j > i
        int first_j = forbid_one_arcs ? i + 2 : i + 1;
        for (int j = first_j; j <= n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 1;
            cur.arcs.emplace_back(i, j);
            rec(i + 1);
            cur.arcs.pop_back();
            used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 0;
        }
    }
};

}  // namespace

void enumerate_diagrams(int n, bool forbid_one_arcs,
                        const std::function<void(const Diagram&)>& visit) {
    if (n < 0 || n > kMaxEnumerationVertices)
        throw cap_exceeded("enumerate_diagrams: n exceeds the hard cap of 16");
    if (n == 0) {
        visit(Diagram{});
        return;
    }
    Enumerator e{n, forbid_one_arcs, &visit, {}, {}};
    e.run();
}

std::int64_t count_structures(int n, int g, bool irreducible_only) {
    if (n < 0 || n > kMaxCountVertices)
        throw cap_exceeded("count_structures: n exceeds the hard cap of 14");
    std::int64_t count = 0;
    enumerate_diagrams(n, /*forbid_one_arcs=*/true, [&](const Diagram& d) {
        if (genus(d).genus != g) return;
        if (irreducible_only && !is_irreducible(d)) return;
        ++count;
    });
    return count;
}

std::vector<std::int64_t> count_structures_by_arcs(int n, int g, bool irreducible_only) {
    if (n < 0 || n > kMaxCountVertices)
        throw cap_exceeded("count_structures_by_arcs: n exceeds the hard cap of 14");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n / 2) + 1, 0);
    enumerate_diagrams(n, /*forbid_one_arcs=*/true, [&](const Diagram& d) {
        if (genus(d).genus != g) return;
        if (irreducible_only && !is_irreducible(d)) return;
        ++counts[d.arcs.size()];
    });
    return counts;
}

std::int64_t count_matchings(int n_arcs, int g) {
    int n = 2 * n_arcs;
    if (n < 0 || n > kMaxCountVertices)
        throw cap_exceeded("count_matchings: 2*n_arcs exceeds the hard cap of 14");
    std::int64_t count = 0;
    // Perfect matchings: the first unused vertex must pair; 1-arcs allowed.
    struct Rec {
        int n;
        std::vector<char> used;
        Diagram cur;
        std::int64_t* count;
        int g;
        void rec(int i) {
            while (i <= n && used[static_cast<std::size_t>(i)]) ++i;
            if (i > n) {
                if (genus(cur).genus == g) ++*count;
                return;
            }
            for (int j = i + 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 1;
                cur.arcs.emplace_back(i, j);
                rec(i + 1);
                cur.arcs.pop_back();
                used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 0;
            }
        }
    };
    Rec r{n, std::vector<char>(static_cast<std::size_t>(n) + 1, 0), Diagram{n, {}}, &count, g};
    if (n == 0) return g == 0 ? 1 : 0;
    r.rec(1);
    return count;
}

namespace {

// Loop-model score of a non-crossing arc list: find each arc's tightest
// enclosing arc, count direct children, score by loop type.
double loop_score(const std::vector<std::pair<int, int>>& arcs, const EnergyModel& model) {
    std::size_t k = arcs.size();
    std::vector<int> children(k, 0);
    for (std::size_t b = 0; b < k; ++b) {
        int parent = -1;
        for (std::size_t a = 0; a < k; ++a) {
            if (a == b) continue;
            if (arcs[a].first < arcs[b].first && arcs[b].second < arcs[a].second)
                if (parent < 0 || arcs[a].first > arcs[static_cast<std::size_t>(parent)].first)
                    parent = static_cast<int>(a);
        }
        if (parent >= 0) ++children[static_cast<std::size_t>(parent)];
    }
    double total = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
        if (children[a] == 0)
            total += model.hairpin_score;
        else if (children[a] == 1)
            total += model.interior_score;
        else
            total += model.multi_score;
    }
    return total;
}

}  // namespace

double score_structure(const Diagram& d, const std::string& seq, const EnergyModel& model) {
    validate_sequence(seq);
    if (d.n != static_cast<int>(seq.size()))
        throw contract_violation("score_structure: diagram/sequence length mismatch");
    for (auto [i, j] : d.arcs)
        if (!model.pairable(seq, i - 1, j - 1)) return kNegInf;

    if (model.kind == EnergyModel::Kind::arc_based)
        return model.arc_score * static_cast<double>(d.arcs.size());

    for (std::size_t a = 0; a < d.arcs.size(); ++a)
        for (std::size_t b = a + 1; b < d.arcs.size(); ++b) {
            auto [i1, j1] = d.arcs[a];
            auto [i2, j2] = d.arcs[b];
            bool i2_in = i1 < i2 && i2 < j1;
            bool j2_in = i1 < j2 && j2 < j1;
            if (i2_in != j2_in)
                throw contract_violation("loop model scoring requires a non-crossing structure");
        }
    return loop_score(d.arcs, model);
}

namespace {

// Enumerate structures over the window [lo..hi] of seq (0-based, inclusive)
// whose arcs respect the pairing rule, pruning subtrees whose partial
// diagram already exceeds g_max, and report the best score.  Arcs are
// opened at the leftmost unused vertex, so the arc list stays sorted.
struct WindowMfe {
    const std::string& seq;
    int lo, g_max;
    const EnergyModel& model;
    Diagram cur;
    std::vector<char> used;
    double best = 0.0;  // the empty structure always scores 0

    WindowMfe(const std::string& s, int l, int h, int g, const EnergyModel& m)
        : seq(s), lo(l), g_max(g), model(m) {
        cur.n = h - l + 1;
        used.assign(static_cast<std::size_t>(cur.n) + 1, 0);
    }

    double run() {
        rec(1);
        return best;
    }

    void rec(int i) {
        while (i <= cur.n && used[static_cast<std::size_t>(i)]) ++i;
        if (i > cur.n) {
            double s = model.kind == EnergyModel::Kind::arc_based
                           ? model.arc_score * static_cast<double>(cur.arcs.size())
                           : loop_score(cur.arcs, model);
            if (s > best) best = s;
            return;
        }
        rec(i + 1);
        for (int j = i + 2; j <= cur.n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            if (!model.pairable(seq, lo + i - 1, lo + j - 1)) continue;
            cur.arcs.emplace_back(i, j);
            if (genus(cur).genus <= g_max) {
                used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 1;
                rec(i + 1);
                used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 0;
            }
            cur.arcs.pop_back();
        }
    }
};

}  // namespace

ScoreTable mfe_exhaustive(const std::string& seq, int g_max, const EnergyModel& model) {
    validate_sequence(seq);
    int n = static_cast<int>(seq.size());
    if (n > kMaxFoldVertices)
        throw cap_exceeded("mfe_exhaustive: sequence longer than the hard cap of 12");
    if (model.kind == EnergyModel::Kind::loop_based && g_max != 0)
        throw contract_violation("loop model scores are defined for genus 0 only");
    ScoreTable t;
    t.n = n;
    t.v.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            WindowMfe w(seq, i - 1, j - 1, g_max, model);
            t.at(i, j) = w.run();
        }
    return t;
}

std::vector<std::pair<int, int>> candidates_exhaustive(const ScoreTable& table) {
    std::vector<std::pair<int, int>> cands;
    for (int i = 1; i <= table.n; ++i)
        for (int j = i; j <= table.n; ++j) {
            double best_split = kNegInf;
            for (int k = i; k < j; ++k)
                best_split = std::max(best_split, table.get(i, k) + table.get(k + 1, j));
            if (table.get(i, j) > best_split) cands.emplace_back(i, j);
        }
    return cands;
}

}  // namespace lstar::oracle
