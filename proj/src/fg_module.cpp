#include "weightkit/fg_module.hpp"

#include <algorithm>
#include <numeric>

#include "weightkit/errors.hpp"

namespace weightkit {

namespace {

std::string ring_symbol(const CoeffRing& ring) {
    switch (ring.tag) {
        case RingTag::Integers: return "Z";
        case RingTag::Rationals: return "Q";
        case RingTag::PrimeField: return "F" + std::to_string(ring.p);
        case RingTag::DualNumbers: return "F" + std::to_string(ring.p) + "[e]";
    }
    return "?";
}

}  // namespace

std::string FgModule::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    const std::string sym = ring_symbol(ring);
    if (rank == 1) {
        out = sym;
    } else if (rank > 1) {
        out = sym + "^" + std::to_string(rank);
    }
    for (long long d : torsion) {
        if (!out.empty()) out += " + ";
        out += sym + "/" + std::to_string(d);
    }
    return out;
}

FgModule fg_zero(CoeffRing ring) { return FgModule{ring, 0, {}}; }

FgModule fg_free(CoeffRing ring, int rank) {
    if (rank < 0) throw InvalidRange("negative rank for free module");
    return FgModule{ring, rank, {}};
}

FgModule fg_from_orders(CoeffRing ring, int rank, const std::vector<long long>& orders) {
    if (rank < 0) throw InvalidRange("negative rank in fg_from_orders");
    std::vector<long long> finite;
    for (long long o : orders) {
        if (o < 0) throw InvalidRange("negative order in fg_from_orders");
        if (o == 0) {
            ++rank;
        } else if (o > 1) {
            finite.push_back(o);
        }
        // o == 1 kills the generator outright.
    }
    if (ring.is_field()) {
        // Every nonzero order is a unit, so only the free summands survive.
        return FgModule{ring, rank, {}};
    }
    if (ring.tag != RingTag::Integers) {
        throw UnsupportedRing("fg_from_orders needs Z or a field");
    }
    if (finite.empty()) return FgModule{ring, rank, {}};
    // Canonicalize to an invariant-factor chain via the SNF of diag(orders).
    const int k = static_cast<int>(finite.size());
    Matrix diag = Matrix::zero(ring, k, k);
    for (int i = 0; i < k; ++i) diag.set(i, i, elem_from_int(ring, finite[static_cast<size_t>(i)]));
    SnfResult s = snf_full(diag);
    std::vector<long long> tors;
    for (int i = 0; i < k; ++i) {
        long long d = s.D.at(i, i).a;
        if (d > 1) tors.push_back(d);
    }
    return FgModule{ring, rank, tors};
}

FgModule fg_direct_sum(const FgModule& a, const FgModule& b) {
    if (!(a.ring == b.ring)) throw RingMismatch("direct sum over different rings");
    std::vector<long long> orders = a.torsion;
    orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    return fg_from_orders(a.ring, a.rank + b.rank, orders);
}

FgModule fg_hom(const FgModule& A, const FgModule& B) {
    if (!(A.ring == B.ring)) throw RingMismatch("hom over different rings");
    const CoeffRing& R = A.ring;
    if (R.is_field()) {
        return fg_free(R, A.rank * B.rank);
    }
    if (R.tag != RingTag::Integers) {
        throw UnsupportedRing("fg_hom needs Z or a field");
    }
    // Hom(Z, Z) = Z, Hom(Z, Z/e) = Z/e, Hom(Z/d, Z) = 0,
    // Hom(Z/d, Z/e) = Z/gcd(d, e).
    std::vector<long long> orders;
    for (int i = 0; i < A.rank; ++i) {
        for (long long e : B.torsion) orders.push_back(e);
    }
    for (long long d : A.torsion) {
        for (long long e : B.torsion) orders.push_back(std::gcd(d, e));
    }
    return fg_from_orders(R, A.rank * B.rank, orders);
}

Subquotient::Subquotient(const Matrix& gens, const Matrix& rels)
    : ring_(gens.ring()),
      basis_(column_space_basis(gens)),
      gen_transform_(Matrix::identity(gens.ring(), 0)),
      gen_transform_inv_(Matrix::identity(gens.ring(), 0)) {
    if (!(rels.ring() == ring_)) throw RingMismatch("subquotient relations ring");
    if (rels.rows() != gens.rows()) {
        throw DimensionMismatch("subquotient relations live in a different ambient module");
    }
    const int k = basis_.cols();
    auto coords = solve_linear(basis_, rels);
    if (!coords) throw InvariantViolation("subquotient relation outside generator span");
    SnfResult s = snf_full(*coords);
    gen_transform_ = s.U;
    gen_transform_inv_ = s.Uinv;
    // Diagonal entries: units first, then invariant factors, then zeros.
    // Canonical generator order: free parts first, then torsion ascending.
    std::vector<long long> tors;
    std::vector<int> tors_rows;
    for (int i = s.rank; i < k; ++i) coord_rows_.push_back(i);
    const int free_rank = k - s.rank;
    for (int i = 0; i < s.rank; ++i) {
        Elem d = s.D.at(i, i);
        if (is_unit(ring_, d)) continue;
        tors.push_back(d.a);
        tors_rows.push_back(i);
    }
    coord_rows_.insert(coord_rows_.end(), tors_rows.begin(), tors_rows.end());
    module_ = FgModule{ring_, free_rank, tors};
}

Matrix Subquotient::class_of(const Matrix& v) const {
    if (!(v.ring() == ring_)) throw RingMismatch("class_of ring");
    if (v.rows() != basis_.rows()) throw DimensionMismatch("class_of ambient dimension");
    auto coords = solve_linear(basis_, v);
    if (!coords) throw InvariantViolation("vector not in the subquotient's generator span");
    Matrix y = mul(gen_transform_, *coords);
    Matrix out = Matrix::zero(ring_, module_.gens(), v.cols());
    for (int t = 0; t < module_.gens(); ++t) {
        long long order = module_.gen_order(t);
        for (int j = 0; j < v.cols(); ++j) {
            Elem e = y.at(coord_rows_[static_cast<size_t>(t)], j);
            if (order > 0) {
                e.a = ((e.a % order) + order) % order;
                e.b = 0;
            }
            out.set(t, j, e);
        }
    }
    return out;
}

Matrix Subquotient::lift_generator(int i) const {
    if (i < 0 || i >= module_.gens()) throw InvalidRange("lift_generator index");
    const int k = basis_.cols();
    Matrix e = Matrix::zero(ring_, k, 1);
    e.set(coord_rows_[static_cast<size_t>(i)], 0, elem_one(ring_));
    return mul(basis_, mul(gen_transform_inv_, e));
}

FgModuleMap make_fg_module_map(const FgModule& src, const FgModule& tgt, Matrix action) {
    if (!(src.ring == tgt.ring)) throw RingMismatch("module map over different rings");
    if (!(action.ring() == src.ring)) throw RingMismatch("module map action ring");
    if (action.rows() != tgt.gens() || action.cols() != src.gens()) {
        throw DimensionMismatch("module map action shape");
    }
    const CoeffRing& R = src.ring;
    for (int j = 0; j < src.gens(); ++j) {
        long long o = src.gen_order(j);
        if (o == 0) continue;
        for (int i = 0; i < tgt.gens(); ++i) {
            long long e = tgt.gen_order(i);
            Elem a = action.at(i, j);
            long long scaled = detail::narrow(static_cast<__int128>(o) * a.a);
            bool ok = (e == 0) ? (scaled == 0) : (scaled % e == 0);
            if (!ok) {
                throw InvariantViolation("module map not well defined on a torsion generator");
            }
        }
    }
    // Reduce torsion rows to canonical representatives.
    for (int i = 0; i < tgt.gens(); ++i) {
        long long e = tgt.gen_order(i);
        if (e == 0) continue;
        for (int j = 0; j < src.gens(); ++j) {
            Elem a = action.at(i, j);
            a.a = ((a.a % e) + e) % e;
            a.b = 0;
            action.set(i, j, a);
        }
    }
    return FgModuleMap{src, tgt, action};
}

FgModuleMap fg_map_zero(const FgModule& src, const FgModule& tgt) {
    return make_fg_module_map(src, tgt, Matrix::zero(src.ring, tgt.gens(), src.gens()));
}

FgModuleMap compose(const FgModuleMap& g, const FgModuleMap& f) {
    if (f.tgt != g.src) throw SourceTargetMismatch("composing module maps with mismatched middle");
    return make_fg_module_map(f.src, g.tgt, mul(g.action, f.action));
}

}  // namespace weightkit
