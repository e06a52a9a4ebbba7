#include "weightkit/report.hpp"

#include <map>
#include <sstream>

#include "json.hpp"

#include "weightkit/errors.hpp"
#include "weightkit/homotopy.hpp"
#include "weightkit/io.hpp"
#include "weightkit/weights.hpp"

namespace weightkit {

namespace {

// Weight window carrying the complex's support: weight i <-> degree -i.
int weight_min(const Complex& M) { return -M.hi(); }
int weight_max(const Complex& M) { return -M.lo; }

// Homology table rebuilt from elementary pieces: a free piece at j is one
// free rank, a torsion piece (j, d) presents R/d in H_j.
std::vector<std::pair<int, FgModule>> homology_of_pieces(const CoeffRing& R,
                                                         const std::vector<ElementaryPiece>& pieces) {
    std::map<int, int> rank;
    std::map<int, std::vector<long long>> orders;
    for (const ElementaryPiece& p : pieces) {
        if (p.kind == ElementaryPiece::Kind::Free) ++rank[p.j];
        else orders[p.j].push_back(p.d);
    }
    std::vector<std::pair<int, FgModule>> table;
    std::map<int, bool> seen;
    for (auto& [j, r] : rank) seen[j] = true;
    for (auto& [j, o] : orders) seen[j] = true;
    for (auto it = seen.rbegin(); it != seen.rend(); ++it) {
        int j = it->first;
        FgModule h = fg_from_orders(R, rank.count(j) ? rank[j] : 0,
                                    orders.count(j) ? orders[j] : std::vector<long long>{});
        if (!h.is_zero()) table.push_back({j, h});
    }
    return table;
}

std::string range_label(int a, int b) {
    return std::to_string(a) + ".." + std::to_string(b);
}

}  // namespace

std::string WeightBand::to_string() const {
    std::string lhs = m ? std::to_string(*m) : "";
    std::string rhs = n ? std::to_string(*n) : "";
    return lhs + ".." + rhs;
}

std::string ring_token(const CoeffRing& R) {
    switch (R.tag) {
        case RingTag::Integers: return "Z";
        case RingTag::Rationals: return "Q";
        case RingTag::PrimeField: return "F " + std::to_string(R.p);
        case RingTag::DualNumbers: return "Zeps " + std::to_string(R.p);
    }
    throw Error("unknown ring tag");
}

AnalysisReport analyze(const Complex& M, const std::string& name, bool with_certificates) {
    AnalysisReport rep;
    rep.name = name;
    rep.subject = M;
    const CoeffRing& R = M.ring;

    if (R.has_snf()) {
        rep.homology_known = true;
        if (!M.is_zero_complex()) {
            for (int j = weight_max(M); j >= weight_min(M); --j) {
                FgModule h = homology(M, j);
                if (!h.is_zero()) rep.homology.push_back({j, h});
            }
        }
        rep.pieces_known = true;
        CanonicalDecomposition dec = canonical_decompose(M);
        rep.pieces = dec.pieces;
        for (auto& [deg, count] : dec.contractible_count)
            rep.contractible_pairs.push_back({deg, count});
        rep.consistent = homology_of_pieces(R, rep.pieces) == rep.homology;
        if (!rep.consistent)
            throw InvariantViolation("piece multiset does not reproduce the homology table");
    }

    rep.contractible = M.is_zero_complex() || is_null_homotopic(id_map(M)).has_value();

    if (rep.contractible) {
        rep.avoided.push_back(WeightBand{});
    } else {
        const int wmin = weight_min(M), wmax = weight_max(M);
        // Outside the scanned window every weight is avoided: below it both
        // homology rows vanish, above it the row below the band is zero.
        std::vector<char> av;
        av.push_back(1);  // sentinel for weights < wmin
        for (int j = wmin; j <= wmax + 1; ++j)
            av.push_back(without_weights(M, j, j).has_value() ? 1 : 0);
        av.push_back(1);  // sentinel for weights > wmax + 1
        const int base = wmin - 1;
        size_t k = 0;
        while (k < av.size()) {
            if (!av[k]) { ++k; continue; }
            size_t start = k;
            while (k < av.size() && av[k]) ++k;
            WeightBand band;
            if (start > 0) band.m = base + static_cast<int>(start);
            if (k < av.size()) band.n = base + static_cast<int>(k) - 1;
            rep.avoided.push_back(band);
        }

        for (int n = wmin; n <= wmax; ++n)
            if (stupid_membership(M, Side::le, n)) { rep.least_upper = n; break; }
        for (int m = wmax; m >= wmin; --m)
            if (stupid_membership(M, Side::ge, m)) { rep.greatest_lower = m; break; }
        if (!rep.least_upper || !rep.greatest_lower)
            throw InvariantViolation("literal skeleton membership missed at the support edge");
    }

    if (with_certificates) {
        if (rep.contractible) {
            if (!M.is_zero_complex() && !is_null_homotopic(id_map(M)))
                throw InvariantViolation("contractibility witness vanished on re-check");
            rep.certificates.push_back("identity null-homotopic, witness verified");
        } else {
            const int wmin = weight_min(M), wmax = weight_max(M);
            for (const WeightBand& band : rep.avoided) {
                // Clamp unbounded sides to the scanned window edge; beyond it
                // the truncations involved are zero and the kill is trivial.
                int a = band.m ? *band.m : wmin - 1;
                int b = band.n ? *band.n : wmax + 2;
                if (!without_weights(M, a, b))
                    throw InvariantViolation("avoided band failed on re-check");
                rep.certificates.push_back("weights " + band.to_string() + ": id kills " +
                                           range_label(a, b) + ", composite null-homotopy verified");
            }
            int n = *rep.least_upper;
            bool edge_le = n == wmin || !stupid_membership(M, Side::le, n - 1);
            if (!stupid_membership(M, Side::le, n) || !edge_le)
                throw InvariantViolation("least upper skeleton bound failed on re-check");
            rep.certificates.push_back("w<=" + std::to_string(n) +
                                       " membership verified, none at " + std::to_string(n - 1));
            int m = *rep.greatest_lower;
            bool edge_ge = m == wmax || !stupid_membership(M, Side::ge, m + 1);
            if (!stupid_membership(M, Side::ge, m) || !edge_ge)
                throw InvariantViolation("greatest lower skeleton bound failed on re-check");
            rep.certificates.push_back("w>=" + std::to_string(m) +
                                       " membership verified, none at " + std::to_string(m + 1));
        }
    }
    return rep;
}

std::string report_to_text(const AnalysisReport& rep) {
    std::ostringstream out;
    const Complex& M = rep.subject;
    out << "complex " << rep.name << " over " << ring_token(M.ring);
    if (M.is_zero_complex()) {
        out << ", zero complex\n";
    } else {
        out << ", degrees " << M.lo << ".." << M.hi() << ", dims";
        for (int i = M.lo; i <= M.hi(); ++i) out << " " << M.dim(i);
        out << "\n";
    }
    if (rep.contractible) out << "contractible: yes\n";
    if (!rep.homology_known) {
        out << "homology: not computed over this ring\n";
    } else if (rep.homology.empty()) {
        out << "homology: 0\n";
    } else {
        out << "homology:\n";
        for (const auto& [j, h] : rep.homology)
            out << "  H_" << j << " = " << h.to_string() << "\n";
    }
    if (!rep.pieces_known) {
        out << "pieces: not computed over this ring\n";
    } else {
        out << "pieces:";
        if (rep.pieces.empty()) out << " (none)";
        for (const ElementaryPiece& p : rep.pieces) out << " " << p.to_string();
        out << "\n";
        if (!rep.contractible_pairs.empty()) {
            out << "contractible pairs:";
            for (const auto& [deg, count] : rep.contractible_pairs)
                out << " " << count << " at degree " << deg;
            out << "\n";
        }
    }
    out << "avoided weights:";
    for (size_t k = 0; k < rep.avoided.size(); ++k)
        out << (k ? ", " : " ") << rep.avoided[k].to_string();
    if (rep.avoided.empty()) out << " (none)";
    out << "\n";
    if (rep.least_upper) {
        out << "skeleton: least n with w<=n membership = " << *rep.least_upper
            << ", greatest m with w>=m membership = " << *rep.greatest_lower << "\n";
    } else {
        out << "skeleton: member of every class\n";
    }
    for (const std::string& c : rep.certificates) out << "certificate: " << c << "\n";
    return out.str();
}

std::string report_to_json(const AnalysisReport& rep) {
    nlohmann::json j;
    const Complex& M = rep.subject;
    j["name"] = rep.name;
    j["ring"] = ring_token(M.ring);
    if (M.is_zero_complex()) {
        j["degrees"] = nullptr;
    } else {
        j["degrees"] = {M.lo, M.hi()};
    }
    std::vector<int> dims;
    for (int i = M.lo; i <= M.hi(); ++i) dims.push_back(M.dim(i));
    j["dims"] = dims;
    j["homology_known"] = rep.homology_known;
    j["homology"] = nlohmann::json::array();
    for (const auto& [jj, h] : rep.homology) {
        nlohmann::json row;
        row["j"] = jj;
        row["module"] = h.to_string();
        row["rank"] = h.rank;
        row["torsion"] = h.torsion;
        j["homology"].push_back(row);
    }
    j["pieces_known"] = rep.pieces_known;
    j["pieces"] = nlohmann::json::array();
    for (const ElementaryPiece& p : rep.pieces) {
        nlohmann::json row;
        row["kind"] = p.kind == ElementaryPiece::Kind::Free ? "free" : "torsion";
        row["j"] = p.j;
        if (p.kind == ElementaryPiece::Kind::Torsion) row["d"] = p.d;
        j["pieces"].push_back(row);
    }
    j["contractible_pairs"] = nlohmann::json::array();
    for (const auto& [deg, count] : rep.contractible_pairs)
        j["contractible_pairs"].push_back({{"degree", deg}, {"count", count}});
    j["consistent"] = rep.consistent;
    j["avoided"] = nlohmann::json::array();
    for (const WeightBand& band : rep.avoided) {
        nlohmann::json row;
        row["m"] = band.m ? nlohmann::json(*band.m) : nlohmann::json(nullptr);
        row["n"] = band.n ? nlohmann::json(*band.n) : nlohmann::json(nullptr);
        j["avoided"].push_back(row);
    }
    j["contractible"] = rep.contractible;
    j["skeleton"]["least_le"] =
        rep.least_upper ? nlohmann::json(*rep.least_upper) : nlohmann::json(nullptr);
    j["skeleton"]["greatest_ge"] =
        rep.greatest_lower ? nlohmann::json(*rep.greatest_lower) : nlohmann::json(nullptr);
    j["certificates"] = rep.certificates;
    FileContent echo;
    echo.ring = M.ring;
    echo.complexes.push_back({rep.name, M});
    j["echo"] = serialize_file(echo);
    return j.dump(2);
}

}  // namespace weightkit
