#pragma once

#include <limits>
#include <string>

#include "lstar/errors.hpp"

namespace lstar {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Scoring model shared by the DP engines and the exhaustive oracle.
///
/// arc_based: every compatible base pair contributes arc_score.
/// loop_based: each loop closed by an arc contributes by its type:
/// hairpin (no nested arcs), interior (exactly one nested component,
/// stacks and bulges included), multi (two or more nested components).
struct EnergyModel {
    enum class Kind { arc_based, loop_based };

    Kind kind = Kind::arc_based;
    double arc_score = 1.0;
    double hairpin_score = -0.5;
    double interior_score = 1.0;
    double multi_score = -5.0;
    // Minimum number of unpaired bases enclosed by a hairpin arc; the
    // value 1 is exactly the no-1-arc rule (j - i >= 2 to pair).
    int min_hairpin_unpaired = 1;
    // Cap on the total unpaired span (both flanks) of an interior loop in
    // the DP engine; 0 means uncapped.
    int interior_span_cap = 0;

    static EnergyModel arc(double score = 1.0) {
        EnergyModel m;
        m.kind = Kind::arc_based;
        m.arc_score = score;
        return m;
    }

    static EnergyModel loop() {
        EnergyModel m;
        m.kind = Kind::loop_based;
        return m;
    }

    /// Watson-Crick pairs plus the G-U wobble.
    static bool can_pair(char a, char b) {
        switch (a) {
            case 'A': return b == 'U';
            case 'U': return b == 'A' || b == 'G';
            case 'G': return b == 'C' || b == 'U';
            case 'C': return b == 'G';
            default: return false;
        }
    }

    /// Positions are 0-based; enforces compatibility and the minimum
    /// hairpin gap (no 1-arcs for the default gap of 1).
    bool pairable(const std::string& seq, int i, int j) const {
        return j - i >= min_hairpin_unpaired + 1 &&
               can_pair(seq[static_cast<std::size_t>(i)], seq[static_cast<std::size_t>(j)]);
    }
};

/// Throws bad_sequence unless seq is a nonempty word over {A,C,G,U}.
inline void validate_sequence(const std::string& seq) {
    if (seq.empty()) throw bad_sequence("empty sequence");
    for (char c : seq)
        if (c != 'A' && c != 'C' && c != 'G' && c != 'U')
            throw bad_sequence(std::string("invalid character '") + c + "' in sequence");
}

}  // namespace lstar
