#pragma once

// Full analysis of a single complex: homology table, canonical piece
// multiset, the maximal bands of avoided weights, and the skeleton bounds
// (least n with membership in w_{<=n}, greatest m with membership in
// w_{>=m}). Rendered as text or JSON; the JSON embeds the complex in the
// cli file format, so reports round-trip through the parser.
//
// Homology and the piece multiset need a ring with Smith normal form; over
// the dual numbers the corresponding *_known flags are false and those
// sections are omitted. Avoided bands and skeleton bounds are decided
// through homotopy systems and work over every ring.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weightkit/decompose.hpp"

namespace weightkit {

// Maximal run of avoided weights; a missing endpoint is unbounded.
struct WeightBand {
    std::optional<int> m, n;
    std::string to_string() const;
};

struct AnalysisReport {
    std::string name;
    Complex subject;

    bool homology_known = false;
    std::vector<std::pair<int, FgModule>> homology;  // nonzero H_j, descending j

    bool pieces_known = false;
    std::vector<ElementaryPiece> pieces;                     // sorted multiset
    std::vector<std::pair<int, int>> contractible_pairs;     // lower degree -> count
    bool consistent = false;  // pieces reproduce the homology table

    std::vector<WeightBand> avoided;  // ascending; covers all of Z when contractible

    bool contractible = false;
    std::optional<int> least_upper;    // least n with subject in w_{<=n}
    std::optional<int> greatest_lower; // greatest m with subject in w_{>=m}

    std::vector<std::string> certificates;  // filled on demand
};

// Decides every field by direct computation; with_certificates re-runs the
// avoided-band and membership decisions and records one verified line each.
AnalysisReport analyze(const Complex& M, const std::string& name,
                       bool with_certificates = false);

std::string report_to_text(const AnalysisReport& rep);
std::string report_to_json(const AnalysisReport& rep);

// The ring token used by the file format ("Z", "Q", "F 5", "Zeps 3").
std::string ring_token(const CoeffRing& R);

}  // namespace weightkit
