#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lstar/energy.hpp"
#include "lstar/oracle.hpp"

namespace lstar::fold {

/// Candidate intervals [i,k] sharing the left endpoint i, in increasing k,
/// stored as parallel arrays so the split kernel can consume them directly.
/// val holds the interval's optimal score L(i,k).
struct CandidateList {
    std::vector<std::int32_t> pos;
    std::vector<double> val;

    std::size_t size() const { return pos.size(); }
};

/// DP matrices of one fold.  Indices are 0-based; matrices are row-major
/// n*n with the upper triangle in use.  LT mirrors L transposed so column
/// reads in the split rule are contiguous.
struct FoldTable {
    int n = 0;
    EnergyModel model;
    bool sparsified = false;

    std::vector<double> L, V, W, LT;
    std::vector<double> M1, M2;  // loop model only
    std::vector<CandidateList> cand;

    /// Number of (candidate, j) resp. (k, j) visits of the split rule.
    std::uint64_t split_visits = 0;

    double l(int i, int j) const { return L[static_cast<std::size_t>(i) * n + j]; }
    double v(int i, int j) const { return V[static_cast<std::size_t>(i) * n + j]; }
    double w(int i, int j) const { return W[static_cast<std::size_t>(i) * n + j]; }
    double m1(int i, int j) const { return M1[static_cast<std::size_t>(i) * n + j]; }
    double m2(int i, int j) const { return M2[static_cast<std::size_t>(i) * n + j]; }
};

/// Histogram of candidates by interval length; x_m[m] counts candidates of
/// length m (x_m[0] unused).  Length-1 intervals are vacuously candidates.
struct CandidateStats {
    std::vector<std::int64_t> x_m;
    std::int64_t total = 0;
    double omega = 0.0;
    double ratio = 0.0;
};

struct FoldResult {
    FoldTable table;
    oracle::Diagram structure;
    std::string dot_bracket;
    double score = 0.0;
    CandidateStats stats;
};

/// Fold seq under the model; the sparsified flag selects whether the split
/// rule maximizes over all k or over the candidate list only.  Both modes
/// produce bitwise identical tables.
FoldResult fold(const std::string& seq, const EnergyModel& model, bool sparsified);

/// One optimal structure from a completed table.  Deterministic: pairing
/// is preferred over splitting, splits take the smallest k, interior
/// pairs the lexicographically smallest (p,q).
oracle::Diagram backtrack(const FoldTable& table);

CandidateStats candidate_stats(const FoldTable& table);

std::string to_dot_bracket(const oracle::Diagram& d);

}  // namespace lstar::fold
