// DP folding with Lambda*-sparsification, both energy models.
//
// Recursions (0-based, intervals [i,j]):
//   L(i,i) = 0
//   L(i,j) = max{ V(i,j), W(i,j) }
//   V(i,j) arc model:  L(i+1,j-1) + arc_score          if (i,j) pairable
//   V(i,j) loop model: max{ hairpin_score,
//                           max_{i<p, q<j, q>=p+2} V(p,q) + interior_score,
//                           multi_score + M2(i+1,j-1) } if (i,j) pairable
//   W(i,j) = max_{i<=k<j} L(i,k) + L(k+1,j)            (full)
//          = max_{[i,k] candidate, k<j} L(i,k) + L(k+1,j)  (sparsified)
//   M1(a,b) = best score of >= 1 closed components in [a,b], unpaired free
//   M2(a,b) = same with >= 2 components
//
// Candidate criterion: [i,j] with V(i,j) > W(i,j), strictly; length-1
// intervals are candidates by definition (no split exists).  Candidate
// lists carry L(i,k) = V(i,k), so the sparsified split is a gather over
// the transposed score matrix.

#include "lstar/fold.hpp"

#include <algorithm>

#include "lstar/kernels.hpp"

namespace lstar::fold {

namespace {

std::size_t flat(int n, int i, int j) { return static_cast<std::size_t>(i) * n + j; }

// number of leading candidates with pos < j (pos is sorted ascending)
std::size_t prefix_below(const CandidateList& c, int j) {
    return static_cast<std::size_t>(
        std::lower_bound(c.pos.begin(), c.pos.end(), j) - c.pos.begin());
}

}  // namespace

FoldResult fold(const std::string& seq, const EnergyModel& model, bool sparsified) {
    validate_sequence(seq);
    const int n = static_cast<int>(seq.size());
    const auto& kern = kernels::ops();
    const bool loop = model.kind == EnergyModel::Kind::loop_based;

    FoldTable t;
    t.n = n;
    t.model = model;
    t.sparsified = sparsified;
    std::size_t cells = static_cast<std::size_t>(n) * n;
    t.L.assign(cells, kNegInf);
    t.V.assign(cells, kNegInf);
    t.W.assign(cells, kNegInf);
    t.LT.assign(cells, kNegInf);
    if (loop) {
        t.M1.assign(cells, kNegInf);
        t.M2.assign(cells, kNegInf);
    }
    t.cand.resize(static_cast<std::size_t>(n));

    for (int i = 0; i < n; ++i) {
        t.L[flat(n, i, i)] = 0.0;
        t.LT[flat(n, i, i)] = 0.0;
        t.cand[static_cast<std::size_t>(i)].pos.push_back(i);
        t.cand[static_cast<std::size_t>(i)].val.push_back(0.0);
    }

    for (int len = 2; len <= n; ++len) {
        for (int i = 0; i + len - 1 < n; ++i) {
            int j = i + len - 1;

            // V
            double v = kNegInf;
            if (model.pairable(seq, i, j)) {
                if (!loop) {
                    v = t.L[flat(n, i + 1, j - 1)] + model.arc_score;
                } else {
                    v = model.hairpin_score;
                    // interior: best nested pair (p,q), any gap widths
                    // (optionally capped), scanned as row maxima of V
                    double best_inner = kNegInf;
                    int cap = model.interior_span_cap;
                    for (int p = i + 1; p + 2 <= j - 1; ++p) {
                        int gap_left = p - i - 1;
                        if (cap > 0 && gap_left > cap) break;
                        int q_lo = p + 2;
                        if (cap > 0) q_lo = std::max(q_lo, j - 1 - (cap - gap_left));
                        if (q_lo > j - 1) continue;
                        double row = kern.max_reduce(&t.V[flat(n, p, q_lo)],
                                                     static_cast<std::size_t>(j - q_lo));
                        if (row > best_inner) best_inner = row;
                    }
                    double interior = best_inner + model.interior_score;
                    if (interior > v) v = interior;
                    if (len >= 3) {
                        double multi = model.multi_score + t.M2[flat(n, i + 1, j - 1)];
                        if (multi > v) v = multi;
                    }
                }
            }
            t.V[flat(n, i, j)] = v;

            // M1/M2 over [i,j]; uses V(k,j) for k >= i, including this cell
            if (loop) {
                double m1 = t.M1[flat(n, i, j - 1)];
                double m2 = t.M2[flat(n, i, j - 1)];
                for (int k = i; k + 2 <= j; ++k) {
                    double vk = t.V[flat(n, k, j)];
                    if (!(vk > kNegInf)) continue;
                    double prefix1 = k > i ? std::max(t.M1[flat(n, i, k - 1)], 0.0) : 0.0;
                    double cand1 = prefix1 + vk;
                    if (cand1 > m1) m1 = cand1;
                    if (k > i) {
                        double cand2 = t.M1[flat(n, i, k - 1)] + vk;
                        if (cand2 > m2) m2 = cand2;
                    }
                }
                t.M1[flat(n, i, j)] = m1;
                t.M2[flat(n, i, j)] = m2;
            }

            // W: the Lambda* split rule
            double w;
            if (sparsified) {
                const auto& c = t.cand[static_cast<std::size_t>(i)];
                std::size_t count = prefix_below(c, j);
                w = kern.max_plus_indexed(c.val.data(), c.pos.data(), count,
                                          &t.LT[flat(n, j, 1)]);
                t.split_visits += count;
            } else {
                w = kern.max_plus(&t.L[flat(n, i, i)], &t.LT[flat(n, j, i + 1)],
                                  static_cast<std::size_t>(j - i));
                t.split_visits += static_cast<std::uint64_t>(j - i);
            }
            t.W[flat(n, i, j)] = w;

            double l = v > w ? v : w;
            t.L[flat(n, i, j)] = l;
            t.LT[flat(n, j, i)] = l;
            if (v > w) {
                t.cand[static_cast<std::size_t>(i)].pos.push_back(j);
                t.cand[static_cast<std::size_t>(i)].val.push_back(l);
            }
        }
    }

    FoldResult result;
    result.score = t.L[flat(n, 0, n - 1)];
    result.structure = backtrack(t);
    result.dot_bracket = to_dot_bracket(result.structure);
    result.stats = candidate_stats(t);
    result.table = std::move(t);
    return result;
}

namespace {

struct Tracer {
    const FoldTable& t;
    oracle::Diagram d;

    double v(int i, int j) const { return t.v(i, j); }
    double l(int i, int j) const { return t.l(i, j); }

    void pair(int i, int j) { d.arcs.emplace_back(i + 1, j + 1); }  // 1-based out

    void trace_l(int i, int j) {
        if (j <= i) return;
        if (t.v(i, j) == t.l(i, j)) {
            trace_v(i, j);
            return;
        }
        for (int k = i; k < j; ++k) {
            if (t.l(i, k) + t.l(k + 1, j) == t.l(i, j)) {
                trace_l(i, k);
                trace_l(k + 1, j);
                return;
            }
        }
        throw error("backtrack: no split reproduces L");
    }

    void trace_v(int i, int j) {
        pair(i, j);
        if (t.model.kind == EnergyModel::Kind::arc_based) {
            trace_l(i + 1, j - 1);
            return;
        }
        double target = t.v(i, j);
        if (target == t.model.hairpin_score) return;  // inner part unpaired
        int cap = t.model.interior_span_cap;
        for (int p = i + 1; p + 2 <= j - 1; ++p) {
            int gap_left = p - i - 1;
            if (cap > 0 && gap_left > cap) break;
            int q_lo = p + 2;
            if (cap > 0) q_lo = std::max(q_lo, j - 1 - (cap - gap_left));
            for (int q = q_lo; q <= j - 1; ++q) {
                if (t.v(p, q) + t.model.interior_score == target) {
                    trace_v(p, q);
                    return;
                }
            }
        }
        if (t.model.multi_score + t.m2(i + 1, j - 1) == target) {
            trace_m2(i + 1, j - 1);
            return;
        }
        throw error("backtrack: no branch reproduces V");
    }

    void trace_m2(int a, int b) {
        double target = t.m2(a, b);
        if (b > a && t.m2(a, b - 1) == target) {
            trace_m2(a, b - 1);
            return;
        }
        for (int k = a + 1; k + 2 <= b; ++k) {
            double vk = t.v(k, b);
            if (!(vk > kNegInf)) continue;
            if (t.m1(a, k - 1) + vk == target) {
                trace_m1(a, k - 1);
                trace_v(k, b);
                return;
            }
        }
        throw error("backtrack: no decomposition reproduces M2");
    }

    void trace_m1(int a, int b) {
        double target = t.m1(a, b);
        if (b > a && t.m1(a, b - 1) == target) {
            trace_m1(a, b - 1);
            return;
        }
        for (int k = a; k + 2 <= b; ++k) {
            double vk = t.v(k, b);
            if (!(vk > kNegInf)) continue;
            double prefix = k > a ? std::max(t.m1(a, k - 1), 0.0) : 0.0;
            if (prefix + vk == target) {
                // prefer the unpaired reading of a zero-score prefix
                if (k > a && t.m1(a, k - 1) == prefix && t.m1(a, k - 1) > 0.0)
                    trace_m1(a, k - 1);
                trace_v(k, b);
                return;
            }
        }
        throw error("backtrack: no decomposition reproduces M1");
    }
};

}  // namespace

oracle::Diagram backtrack(const FoldTable& table) {
    Tracer tracer{table, oracle::Diagram{table.n, {}}};
    if (table.n > 1) tracer.trace_l(0, table.n - 1);
    std::sort(tracer.d.arcs.begin(), tracer.d.arcs.end());
    return tracer.d;
}

CandidateStats candidate_stats(const FoldTable& table) {
    CandidateStats s;
    s.x_m.assign(static_cast<std::size_t>(table.n) + 1, 0);
    for (int i = 0; i < table.n; ++i)
        for (std::int32_t j : table.cand[static_cast<std::size_t>(i)].pos) {
            ++s.x_m[static_cast<std::size_t>(j - i + 1)];
            ++s.total;
        }
    s.omega = 0.5 * table.n * (table.n + 1.0);
    s.ratio = static_cast<double>(s.total) / s.omega;
    return s;
}

std::string to_dot_bracket(const oracle::Diagram& d) {
    std::string s(static_cast<std::size_t>(d.n), '.');
    for (auto [i, j] : d.arcs) {
        s[static_cast<std::size_t>(i - 1)] = '(';
        s[static_cast<std::size_t>(j - 1)] = ')';
    }
    return s;
}

}  // namespace lstar::fold
