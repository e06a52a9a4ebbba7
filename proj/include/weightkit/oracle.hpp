#pragma once

// Self-checking at desk scale: deterministic generators for complexes and
// chain maps, a small exhaustive enumerator over F_2, and named property
// batteries that re-verify the library's decision procedures against each
// other on thousands of generated instances. A failing check comes back as
// a replayable input file (the cli text format) plus the seed that
// produced it.

#include <cstdint>
#include <string>
#include <vector>

#include "weightkit/complex.hpp"

namespace weightkit {

// Generator knobs. Entries are drawn from [-entry_bound, entry_bound] over
// Z and Q; the bound is ignored over finite coefficient rings. Dimensions
// are drawn from [0, max_dim] per degree. Differentials are built degree
// by degree inside the kernel of the previous transpose, so d.d = 0 holds
// on every draw instead of by rejection.
struct GenParams {
    CoeffRing ring = CoeffRing::prime_field(2);
    int degree_lo = -1;
    int degree_hi = 1;  // span at most 6
    int max_dim = 2;    // at most 4
    long long entry_bound = 3;
    uint64_t seed = 0;
};
// Throws InvalidRange when a knob is out of its documented range.
void validate(const GenParams& params);

// The i-th derived stream of a master seed; used for per-trial seeds so a
// failing trial replays in isolation.
uint64_t derive_seed(uint64_t seed, uint64_t i);

Complex gen_complex(const GenParams& params);

// A fresh source, target and a random chain map between them.
ChainMap gen_chain_map(const GenParams& params);
// Random point of the solution space of the chain condition: kernel basis
// of the assembled block system, random coordinates.
ChainMap gen_map_between(const Complex& src, const Complex& tgt, uint64_t seed,
                         long long entry_bound);

// Every complex over F_2 with degrees in [degree_lo, degree_hi] and all
// dimensions at most max_dim, differentials enumerated under d.d = 0.
// Requires span <= 3 and max_dim <= 2; other rings are not enumerable here.
std::vector<Complex> enumerate_small(CoeffRing ring, int degree_lo, int degree_hi,
                                     int max_dim);

struct BatteryReport {
    std::string name;
    long long trials = 0;    // generated instances
    long long checks = 0;    // individual assertions evaluated
    long long failures = 0;  // assertions that came out false
    bool pass = false;
    std::vector<std::string> failure_dumps;  // replayable, capped
    std::vector<std::string> notes;

    std::string to_json() const;
};

std::vector<std::string> battery_names();

// Runs the named battery with roughly `budget` generated instances under
// the given master seed. Unknown names throw UnknownBattery.
BatteryReport run_battery(const std::string& name, long long budget, uint64_t seed);

constexpr uint64_t default_oracle_seed = 0x77656967687473ULL;

}  // namespace weightkit
