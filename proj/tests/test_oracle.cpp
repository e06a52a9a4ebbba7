#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "weightkit/errors.hpp"
#include "weightkit/homotopy.hpp"
#include "weightkit/io.hpp"
#include "weightkit/oracle.hpp"

using namespace weightkit;

namespace {

const CoeffRing Z = CoeffRing::integers();
const CoeffRing F2 = CoeffRing::prime_field(2);

GenParams params(CoeffRing R, int lo, int hi, int mx, uint64_t seed) {
    GenParams p;
    p.ring = R;
    p.degree_lo = lo;
    p.degree_hi = hi;
    p.max_dim = mx;
    p.seed = seed;
    return p;
}

// Independent F_2 count of complexes on a fixed dimension vector: matrices
// live in bitmasks, products in raw xor/and loops, nothing shared with the
// library's Matrix.
bool raw_composite_zero(unsigned later, unsigned earlier, int p, int q, int r) {
    // earlier: q x p bits row-major, later: r x q
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < p; ++j) {
            int s = 0;
            for (int k = 0; k < q; ++k)
                s ^= static_cast<int>((later >> (i * q + k)) & 1u & ((earlier >> (k * p + j)) & 1u));
            if (s != 0) return false;
        }
    }
    return true;
}

long long raw_count(const std::vector<int>& dims) {
    // enumerate all differential tuples with adjacent products zero
    long long total = 0;
    std::vector<unsigned> chosen(dims.size() > 0 ? dims.size() - 1 : 0, 0);
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k + 1 >= dims.size()) {
            ++total;
            return;
        }
        int c = dims[k], r = dims[k + 1];
        unsigned count = 1u << (r * c);
        for (unsigned m = 0; m < count; ++m) {
            if (k > 0 && !raw_composite_zero(m, chosen[k - 1], dims[k - 1], c, r)) continue;
            chosen[k] = m;
            rec(k + 1);
        }
    };
    if (dims.size() <= 1) return 1;
    rec(0);
    return total;
}

long long raw_total(int span, int max_dim) {
    std::vector<int> dims(static_cast<size_t>(span), 0);
    long long total = 0;
    while (true) {
        total += raw_count(dims);
        size_t j = 0;
        while (j < dims.size() && dims[j] == max_dim) dims[j++] = 0;
        if (j == dims.size()) break;
        ++dims[j];
    }
    return total;
}

}  // namespace

TEST_CASE("complex generation is deterministic and in bounds") {
    GenParams p = params(F2, -1, 1, 2, 12345);
    Complex M = gen_complex(p);
    CHECK(gen_complex(p) == M);
    CHECK(M.lo >= -1);
    if (!M.is_zero_complex()) CHECK(M.hi() <= 1);
    for (int d : M.dims) CHECK(d <= 2);

    // different seeds explore different complexes
    bool varied = false;
    for (uint64_t s = 0; s < 20 && !varied; ++s)
        varied = !(gen_complex(params(F2, -1, 1, 2, s)) == M);
    CHECK(varied);

    // every ring draws valid complexes (make_complex re-checks d.d = 0)
    for (CoeffRing R : {Z, CoeffRing::rationals(), F2, CoeffRing::dual_numbers(3)}) {
        for (uint64_t s = 0; s < 40; ++s) {
            Complex C = gen_complex(params(R, -2, 1, 3, s));
            CHECK(make_complex(C.ring, C.lo, C.dims, C.diffs) == C);
        }
    }

    GenParams z = params(F2, -1, 1, 0, 7);
    CHECK(gen_complex(z).is_zero_complex());

    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) != derive_seed(2, 2));
    CHECK(derive_seed(5, 9) == derive_seed(5, 9));
}

TEST_CASE("generated chain maps satisfy the chain condition") {
    for (CoeffRing R : {Z, CoeffRing::rationals(), F2, CoeffRing::dual_numbers(2)}) {
        for (uint64_t s = 100; s < 130; ++s) {
            ChainMap g = gen_chain_map(params(R, -2, 1, 3, s));
            CHECK(make_chain_map(g.src, g.tgt, g.clo, g.comps) == g);
        }
    }
    GenParams p = params(Z, -1, 1, 2, 55);
    CHECK(gen_chain_map(p) == gen_chain_map(p));

    // disjoint supports force the zero map
    Complex A = ring_in_degree(Z, -3);
    Complex B = ring_in_degree(Z, 4);
    CHECK(gen_map_between(A, B, 1, 3).is_zero_map());
    CHECK_THROWS_AS(gen_map_between(A, ring_in_degree(F2, 0), 1, 3), RingMismatch);

    // nonzero maps do come out: identity-shaped pair has nontrivial maps
    bool nonzero = false;
    for (uint64_t s = 0; s < 12 && !nonzero; ++s)
        nonzero = !gen_map_between(A, A, s, 3).is_zero_map();
    CHECK(nonzero);
}

TEST_CASE("generator parameter validation") {
    CHECK_THROWS_AS(gen_complex(params(F2, 2, 1, 2, 0)), InvalidRange);
    CHECK_THROWS_AS(gen_complex(params(F2, -3, 3, 2, 0)), InvalidRange);  // span 7
    CHECK_THROWS_AS(gen_complex(params(F2, 0, 0, 5, 0)), InvalidRange);
    CHECK_THROWS_AS(gen_complex(params(F2, 0, 0, -1, 0)), InvalidRange);
    GenParams bad = params(Z, 0, 0, 2, 0);
    bad.entry_bound = 0;
    CHECK_THROWS_AS(gen_complex(bad), InvalidRange);
    // the bound is ignored over finite rings
    GenParams fine = params(F2, 0, 0, 2, 0);
    fine.entry_bound = 0;
    CHECK(gen_complex(fine).hi() <= 0);
}

TEST_CASE("exhaustive enumeration of small F_2 complexes") {
    // degrees {-1, 0}, dims <= 1: the zero complex, two lines, and the two
    // possible differentials on (1, 1)
    std::vector<Complex> five = enumerate_small(F2, -1, 0, 1);
    CHECK(five.size() == 5);
    int zero = 0, lines = 0, pairs_zero = 0, pairs_iso = 0;
    for (const Complex& M : five) {
        if (M.is_zero_complex()) ++zero;
        else if (M.dims == std::vector<int>{1}) ++lines;
        else if (M.dims == std::vector<int>{1, 1} && M.diff(-1).is_zero()) ++pairs_zero;
        else if (M.dims == std::vector<int>{1, 1}) ++pairs_iso;
    }
    CHECK(zero == 1);
    CHECK(lines == 2);
    CHECK(pairs_zero == 1);
    CHECK(pairs_iso == 1);

    CHECK(enumerate_small(F2, 3, 3, 0).size() == 1);
    CHECK(enumerate_small(F2, 3, 3, 0)[0].is_zero_complex());

    // counts match an independent bitmask enumeration
    CHECK(static_cast<long long>(enumerate_small(F2, -1, 0, 2).size()) == raw_total(2, 2));
    CHECK(static_cast<long long>(enumerate_small(F2, -1, 1, 2).size()) == raw_total(3, 2));
    CHECK(static_cast<long long>(enumerate_small(F2, 0, 2, 1).size()) == raw_total(3, 1));

    // no duplicates: the trimmed forms still tell every pair apart
    std::vector<Complex> all = enumerate_small(F2, -1, 1, 2);
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) CHECK(all[i] != all[j]);

    CHECK_THROWS_AS(enumerate_small(Z, -1, 0, 1), UnsupportedRing);
    CHECK_THROWS_AS(enumerate_small(CoeffRing::prime_field(3), -1, 0, 1), UnsupportedRing);
    CHECK_THROWS_AS(enumerate_small(F2, -1, 3, 1), InvalidRange);
    CHECK_THROWS_AS(enumerate_small(F2, 0, 0, 3), InvalidRange);
    CHECK_THROWS_AS(enumerate_small(F2, 1, 0, 1), InvalidRange);
}

TEST_CASE("battery registry and reports") {
    CHECK_THROWS_AS(run_battery("nonexistent", 10, 1), UnknownBattery);

    std::vector<std::string> names = battery_names();
    CHECK(names.size() == 12);
    CHECK(std::is_sorted(names.begin(), names.end()));
    CHECK(std::count(names.begin(), names.end(), "kill-equivalence") == 1);
    CHECK(std::count(names.begin(), names.end(), "hom-formula") == 1);

    BatteryReport rep = run_battery("gen-validate", 30, 42);
    CHECK(rep.name == "gen-validate");
    CHECK(rep.pass);
    CHECK(rep.failures == 0);
    CHECK(rep.trials > 30);  // extra rings on top of the F_2 stream
    CHECK(rep.checks >= rep.trials);

    // replayable: identical runs produce identical reports
    BatteryReport again = run_battery("gen-validate", 30, 42);
    CHECK(again.trials == rep.trials);
    CHECK(again.checks == rep.checks);
    CHECK(again.notes == rep.notes);

    nlohmann::json j = nlohmann::json::parse(rep.to_json());
    CHECK(j["name"] == "gen-validate");
    CHECK(j["pass"] == true);
    CHECK(j["trials"].get<long long>() == rep.trials);
    CHECK(j["failure_dumps"].is_array());
}

TEST_CASE("every battery passes a small run") {
    for (const std::string& name : battery_names()) {
        CAPTURE(name);
        BatteryReport rep = run_battery(name, 12, 2026);
        CHECK(rep.pass);
        CHECK(rep.failures == 0);
        CHECK(rep.checks > 0);
    }
}

TEST_CASE("failure dumps replay through the file parser") {
    // force a failure by checking a wrong expectation through the public
    // machinery: run a battery whose notes embed dumps when probing finds
    // something; instead, exercise the dump format directly off a report
    // round trip by feeding a known battery and checking notes stay textual
    BatteryReport rep = run_battery("weak-vs-homotopy", 1, 9);
    CHECK(rep.pass);
    REQUIRE(!rep.notes.empty());
    CHECK(rep.notes.back().find("gap") != std::string::npos);

    // the search battery reports its counterexample dumps in notes; any dump
    // it emits must re-parse
    BatteryReport probe = run_battery("kill-range-vs-pointwise", 60, 11);
    CHECK(probe.pass);
    for (const std::string& note : probe.notes) {
        if (note.rfind("# ", 0) == 0) {
            FileContent fc = parse_file(note);
            CHECK(find_complex(fc, "M") != nullptr);
            CHECK(find_complex(fc, "N") != nullptr);
            CHECK(find_map(fc, "g") != nullptr);
        }
    }
}
