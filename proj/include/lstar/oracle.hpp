#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "lstar/energy.hpp"
#include "lstar/errors.hpp"

namespace lstar::oracle {

/// Hard caps for the exhaustive routines; exceeding them is an error,
/// never a silent truncation.
inline constexpr int kMaxEnumerationVertices = 16;
inline constexpr int kMaxCountVertices = 14;
inline constexpr int kMaxFoldVertices = 12;

/// Partial matching over the backbone 1..n, arcs (i,j) with i < j kept in
/// lexicographic order; each vertex lies on at most one arc.
struct Diagram {
    int n = 0;
    std::vector<std::pair<int, int>> arcs;

    bool empty() const { return arcs.empty(); }
    /// Relabel i -> n+1-i.
    Diagram reflected() const;
};

/// Disc/ribbon/boundary counts of the fattened diagram and the genus of
/// the closed surface obtained by filling the boundary components.
struct GenusReport {
    int discs = 0;       // v
    int ribbons = 0;     // e
    int boundaries = 0;  // r
    int euler = 0;       // chi = v - e + r
    int genus = 0;       // g = 1 - chi/2
};

/// Trace the boundary components of the fattened diagram; backbone on a
/// line, arcs in the upper half-plane, counterclockwise rotation at each
/// vertex.
GenusReport genus(const Diagram& d);

/// True iff no cut point k in [1, n-1] splits the diagram without cutting
/// an arc.  The single vertex is irreducible (no cut position exists).
bool is_irreducible(const Diagram& d);

/// Visit every diagram over [1..n] exactly once, in lexicographic order of
/// the arc list.  forbid_one_arcs excludes arcs (i, i+1).
void enumerate_diagrams(int n, bool forbid_one_arcs,
                        const std::function<void(const Diagram&)>& visit);

/// Exact count of structures (1-arc-free diagrams) over n vertices with
/// the given genus; optionally restricted to irreducible ones.
std::int64_t count_structures(int n, int g, bool irreducible_only);

/// Same count broken down by arc count; index ell runs 0..n/2.
std::vector<std::int64_t> count_structures_by_arcs(int n, int g, bool irreducible_only);

/// Number of genus-g perfect matchings with n_arcs arcs (2*n_arcs vertices);
/// 1-arcs are allowed in matchings.
std::int64_t count_matchings(int n_arcs, int g);

/// Score of a structure under the model; for the loop model the diagram
/// must be non-crossing (loops are only defined for secondary structures).
double score_structure(const Diagram& d, const std::string& seq, const EnergyModel& model);

/// Upper-triangular score table indexed 1-based, i <= j.
struct ScoreTable {
    int n = 0;
    std::vector<double> v;  // row-major n*n

    double& at(int i, int j) { return v[static_cast<std::size_t>((i - 1) * n + (j - 1))]; }
    double get(int i, int j) const { return v[static_cast<std::size_t>((i - 1) * n + (j - 1))]; }
};

/// For every interval [i,j], the maximum model score over all structures of
/// genus <= g_max on that interval.  Brute force; length capped at 12.
ScoreTable mfe_exhaustive(const std::string& seq, int g_max, const EnergyModel& model);

/// All intervals [i,j] whose optimal score strictly exceeds every split
/// L(i,k) + L(k+1,j), k in [i, j-1].  Length-1 intervals are vacuously
/// candidates (no split exists).
std::vector<std::pair<int, int>> candidates_exhaustive(const ScoreTable& table);

}  // namespace lstar::oracle
