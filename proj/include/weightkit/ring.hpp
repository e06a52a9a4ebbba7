#pragma once

// Coefficient rings and their element arithmetic.
//
// Four rings are supported: Z, Q, F_p, and the dual numbers F_p[e]/e^2.
// An element is a pair of int64 whose meaning depends on the ring:
//   Integers     a            (b unused, kept 0)
//   Rationals    a/b          (reduced, b > 0)
//   PrimeField   a in [0,p)   (b unused, kept 0)
//   DualNumbers  a + b*e      (both in [0,p))
// All arithmetic goes through __int128 intermediates and throws
// OverflowError if a result leaves int64; at the intended scale
// (entries of a few digits, matrices of a few hundred rows) the guard
// never fires, but it turns silent wraparound into a loud failure.

#include <cstdint>
#include <numeric>
#include <string>

#include "weightkit/errors.hpp"

namespace weightkit {

enum class RingTag { Integers, Rationals, PrimeField, DualNumbers };

struct CoeffRing {
    RingTag tag = RingTag::Integers;
    long long p = 0;  // modulus for PrimeField / DualNumbers

    static CoeffRing integers() { return {RingTag::Integers, 0}; }
    static CoeffRing rationals() { return {RingTag::Rationals, 0}; }
    static CoeffRing prime_field(long long p);
    static CoeffRing dual_numbers(long long p);

    bool is_field() const { return tag == RingTag::Rationals || tag == RingTag::PrimeField; }
    // Rings where Smith normal form (and hence homology, decomposition,
    // hom groups) is available.
    bool has_snf() const { return tag != RingTag::DualNumbers; }
    bool modular() const { return tag == RingTag::PrimeField || tag == RingTag::DualNumbers; }

    bool operator==(const CoeffRing& o) const { return tag == o.tag && p == o.p; }
    bool operator!=(const CoeffRing& o) const { return !(*this == o); }

    std::string name() const;
};

struct Elem {
    long long a = 0;
    long long b = 0;
    bool operator==(const Elem& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Elem& o) const { return !(*this == o); }
};

namespace detail {

inline long long chk_add(long long x, long long y) {
    long long r;
    if (__builtin_add_overflow(x, y, &r)) throw OverflowError("int64 addition overflow");
    return r;
}

inline long long chk_sub(long long x, long long y) {
    long long r;
    if (__builtin_sub_overflow(x, y, &r)) throw OverflowError("int64 subtraction overflow");
    return r;
}

inline long long chk_mul(long long x, long long y) {
    long long r;
    if (__builtin_mul_overflow(x, y, &r)) throw OverflowError("int64 multiplication overflow");
    return r;
}

inline long long narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("value exceeds int64");
    return static_cast<long long>(v);
}

inline long long mod_reduce(long long v, long long p) {
    long long r = v % p;
    if (r < 0) r += p;
    return r;
}

// Modular inverse via extended Euclid; caller guarantees gcd(v, p) = 1.
long long mod_inverse(long long v, long long p);

}  // namespace detail

// --- canonical form -------------------------------------------------------

Elem canon(const CoeffRing& R, Elem x);

inline Elem elem_zero(const CoeffRing& R) {
    switch (R.tag) {
        case RingTag::Rationals: return {0, 1};
        default: return {0, 0};
    }
}

inline Elem elem_one(const CoeffRing& R) {
    switch (R.tag) {
        case RingTag::Rationals: return {1, 1};
        default: return {1, 0};
    }
}

Elem elem_from_int(const CoeffRing& R, long long v);

// --- arithmetic ------------------------------------------------------------

Elem add(const CoeffRing& R, const Elem& x, const Elem& y);
Elem sub(const CoeffRing& R, const Elem& x, const Elem& y);
Elem mul(const CoeffRing& R, const Elem& x, const Elem& y);
Elem neg(const CoeffRing& R, const Elem& x);

bool is_zero(const CoeffRing& R, const Elem& x);
// Units: +-1 in Z; nonzero in Q and F_p; a + b*e with a != 0 in F_p[e].
bool is_unit(const CoeffRing& R, const Elem& x);
Elem inv(const CoeffRing& R, const Elem& x);  // requires is_unit

// Exact division; requires divides(R, d, x).
bool divides(const CoeffRing& R, const Elem& d, const Elem& x);
Elem exact_div(const CoeffRing& R, const Elem& x, const Elem& d);

// --- text form --------------------------------------------------------------
// Tokens match the input file grammar: "-3", "2/3", "4", "2+3e".

std::string elem_to_string(const CoeffRing& R, const Elem& x);
Elem parse_elem(const CoeffRing& R, const std::string& token);  // throws Error on bad token

}  // namespace weightkit
