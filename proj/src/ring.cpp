#include "weightkit/ring.hpp"

#include <cctype>
#include <cstdlib>

namespace weightkit {

namespace {

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

CoeffRing CoeffRing::prime_field(long long p) {
    if (!is_prime(p)) throw Error("prime field modulus must be prime, got " + std::to_string(p));
    return {RingTag::PrimeField, p};
}

CoeffRing CoeffRing::dual_numbers(long long p) {
    if (!is_prime(p)) throw Error("dual number modulus must be prime, got " + std::to_string(p));
    return {RingTag::DualNumbers, p};
}

std::string CoeffRing::name() const {
    switch (tag) {
        case RingTag::Integers: return "Z";
        case RingTag::Rationals: return "Q";
        case RingTag::PrimeField: return "F" + std::to_string(p);
        case RingTag::DualNumbers: return "Z" + std::to_string(p) + "eps";
    }
    return "?";
}

namespace detail {

long long mod_inverse(long long v, long long p) {
    long long r0 = p, r1 = mod_reduce(v, p);
    long long t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        long long t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw Error("element not invertible mod " + std::to_string(p));
    return mod_reduce(t0, p);
}

}  // namespace detail

Elem canon(const CoeffRing& R, Elem x) {
    switch (R.tag) {
        case RingTag::Integers:
            x.b = 0;
            return x;
        case RingTag::Rationals: {
            if (x.b == 0) throw Error("rational with zero denominator");
            if (x.a == 0) return {0, 1};
            if (x.b < 0) { x.a = detail::chk_sub(0, x.a); x.b = detail::chk_sub(0, x.b); }
            long long g = std::gcd(std::llabs(x.a), x.b);
            return {x.a / g, x.b / g};
        }
        case RingTag::PrimeField:
            return {detail::mod_reduce(x.a, R.p), 0};
        case RingTag::DualNumbers:
            return {detail::mod_reduce(x.a, R.p), detail::mod_reduce(x.b, R.p)};
    }
    return x;
}

Elem elem_from_int(const CoeffRing& R, long long v) {
    switch (R.tag) {
        case RingTag::Rationals: return {v, 1};
        case RingTag::PrimeField: return {detail::mod_reduce(v, R.p), 0};
        case RingTag::DualNumbers: return {detail::mod_reduce(v, R.p), 0};
        default: return {v, 0};
    }
}

namespace {

// Reduce a rational given as __int128 numerator/denominator, then narrow.
Elem make_rational(__int128 num, __int128 den) {
    if (den == 0) throw Error("rational with zero denominator");
    if (num == 0) return {0, 1};
    if (den < 0) { num = -num; den = -den; }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    num /= a;
    den /= a;
    return {detail::narrow(num), detail::narrow(den)};
}

}  // namespace

Elem add(const CoeffRing& R, const Elem& x, const Elem& y) {
    switch (R.tag) {
        case RingTag::Integers: return {detail::chk_add(x.a, y.a), 0};
        case RingTag::Rationals: {
            __int128 num = (__int128)x.a * y.b + (__int128)y.a * x.b;
            __int128 den = (__int128)x.b * y.b;
            return make_rational(num, den);
        }
        case RingTag::PrimeField: return {detail::mod_reduce(x.a + y.a, R.p), 0};
        case RingTag::DualNumbers:
            return {detail::mod_reduce(x.a + y.a, R.p), detail::mod_reduce(x.b + y.b, R.p)};
    }
    return {};
}

Elem sub(const CoeffRing& R, const Elem& x, const Elem& y) { return add(R, x, neg(R, y)); }

Elem mul(const CoeffRing& R, const Elem& x, const Elem& y) {
    switch (R.tag) {
        case RingTag::Integers: return {detail::chk_mul(x.a, y.a), 0};
        case RingTag::Rationals:
            return make_rational((__int128)x.a * y.a, (__int128)x.b * y.b);
        case RingTag::PrimeField:
            return {detail::narrow((__int128)x.a * y.a % R.p), 0};
        case RingTag::DualNumbers: {
            // (a1 + b1 e)(a2 + b2 e) = a1 a2 + (a1 b2 + b1 a2) e
            long long a = detail::narrow((__int128)x.a * y.a % R.p);
            long long b = detail::narrow(((__int128)x.a * y.b + (__int128)x.b * y.a) % R.p);
            return {a, b};
        }
    }
    return {};
}

Elem neg(const CoeffRing& R, const Elem& x) {
    switch (R.tag) {
        case RingTag::Integers: return {detail::chk_sub(0, x.a), 0};
        case RingTag::Rationals: return {detail::chk_sub(0, x.a), x.b};
        case RingTag::PrimeField: return {detail::mod_reduce(-x.a, R.p), 0};
        case RingTag::DualNumbers:
            return {detail::mod_reduce(-x.a, R.p), detail::mod_reduce(-x.b, R.p)};
    }
    return {};
}

bool is_zero(const CoeffRing& R, const Elem& x) {
    if (R.tag == RingTag::DualNumbers) return x.a == 0 && x.b == 0;
    return x.a == 0;
}

bool is_unit(const CoeffRing& R, const Elem& x) {
    switch (R.tag) {
        case RingTag::Integers: return x.a == 1 || x.a == -1;
        case RingTag::Rationals:
        case RingTag::PrimeField: return x.a != 0;
        case RingTag::DualNumbers: return x.a != 0;
    }
    return false;
}

Elem inv(const CoeffRing& R, const Elem& x) {
    switch (R.tag) {
        case RingTag::Integers:
            if (x.a == 1 || x.a == -1) return x;
            throw Error("integer " + std::to_string(x.a) + " is not a unit");
        case RingTag::Rationals:
            if (x.a == 0) throw Error("division by zero rational");
            return canon(R, {x.b, x.a});
        case RingTag::PrimeField:
            return {detail::mod_inverse(x.a, R.p), 0};
        case RingTag::DualNumbers: {
            // (a + be)^-1 = a^-1 - a^-2 b e
            if (x.a == 0) throw Error("dual number with nilpotent part only is not a unit");
            long long ai = detail::mod_inverse(x.a, R.p);
            long long b = detail::mod_reduce(-(__int128)ai % R.p * ai % R.p * x.b % R.p, R.p);
            return {ai, b};
        }
    }
    return {};
}

bool divides(const CoeffRing& R, const Elem& d, const Elem& x) {
    switch (R.tag) {
        case RingTag::Integers:
            if (d.a == 0) return x.a == 0;
            return x.a % d.a == 0;
        case RingTag::Rationals:
        case RingTag::PrimeField:
            return d.a != 0 || x.a == 0;
        case RingTag::DualNumbers:
            if (d.a != 0) return true;                       // unit
            if (d.b != 0) return x.a == 0;                   // (e) divides (eps multiples)
            return x.a == 0 && x.b == 0;                     // d = 0
    }
    return false;
}

Elem exact_div(const CoeffRing& R, const Elem& x, const Elem& d) {
    switch (R.tag) {
        case RingTag::Integers:
            if (d.a == 0 || x.a % d.a != 0) throw Error("inexact integer division");
            return {x.a / d.a, 0};
        case RingTag::Rationals:
        case RingTag::PrimeField:
            return mul(R, x, inv(R, d));
        case RingTag::DualNumbers:
            if (d.a != 0) return mul(R, x, inv(R, d));
            if (d.b != 0 && x.a == 0) {
                // x = b_x e, d = b_d e: quotient b_x / b_d (mod p), e-part free; pick 0.
                return {detail::narrow((__int128)x.b * detail::mod_inverse(d.b, R.p) % R.p), 0};
            }
            throw Error("inexact dual number division");
    }
    return {};
}

std::string elem_to_string(const CoeffRing& R, const Elem& x) {
    switch (R.tag) {
        case RingTag::Rationals:
            if (x.b == 1) return std::to_string(x.a);
            return std::to_string(x.a) + "/" + std::to_string(x.b);
        case RingTag::DualNumbers:
            if (x.b == 0) return std::to_string(x.a);
            return std::to_string(x.a) + "+" + std::to_string(x.b) + "e";
        default:
            return std::to_string(x.a);
    }
}

namespace {

long long parse_int(const std::string& s, size_t& pos) {
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) throw Error("expected integer in '" + s + "'");
    return std::stoll(s.substr(start, pos - start));
}

}  // namespace

Elem parse_elem(const CoeffRing& R, const std::string& token) {
    if (token.empty()) throw Error("empty matrix entry");
    size_t pos = 0;
    long long first = parse_int(token, pos);
    if (pos == token.size()) return canon(R, elem_from_int(R, first));

    if (token[pos] == '/' && R.tag == RingTag::Rationals) {
        ++pos;
        long long den = parse_int(token, pos);
        if (pos != token.size()) throw Error("trailing characters in rational '" + token + "'");
        return canon(R, {first, den});
    }
    if (R.tag == RingTag::DualNumbers) {
        // forms: "a+be", "a-be", and the pure-nilpotent shorthand "be"
        if (token[pos] == 'e' && pos + 1 == token.size())
            return canon(R, {0, first});
        if (token[pos] == '+' || token[pos] == '-') {
            long long second = parse_int(token, pos);
            if (pos + 1 == token.size() && token[pos] == 'e')
                return canon(R, {first, second});
        }
        throw Error("bad dual number '" + token + "'");
    }
    throw Error("bad entry '" + token + "' for ring " + R.name());
}

}  // namespace weightkit
