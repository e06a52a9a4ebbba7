#include "weightkit/homotopy.hpp"

#include <algorithm>

#include "weightkit/errors.hpp"
#include "weightkit/linalg.hpp"

namespace weightkit {

namespace {

Matrix stored_or_zero(const std::vector<Matrix>& mats, int lo, int i, const Complex& src,
                      const Complex& tgt) {
    int k = i - lo;
    if (k >= 0 && k < static_cast<int>(mats.size())) return mats[static_cast<size_t>(k)];
    return Matrix::zero(src.ring, tgt.dim(i - 1), src.dim(i));
}

// Degrees where a homotopy-direction component M^i -> N^{i-1} has content.
std::vector<int> homotopy_degrees(const Complex& M, const Complex& N) {
    std::vector<int> degs;
    int a = std::max(M.lo, N.lo + 1);
    int b = std::min(M.hi(), N.hi() + 1);
    for (int i = a; i <= b; ++i) {
        if (M.dim(i) > 0 && N.dim(i - 1) > 0) degs.push_back(i);
    }
    return degs;
}

// Degrees where a chain-map component M^i -> N^i has content.
std::vector<int> component_degrees(const Complex& M, const Complex& N) {
    std::vector<int> degs;
    int a = std::max(M.lo, N.lo);
    int b = std::min(M.hi(), N.hi());
    for (int i = a; i <= b; ++i) {
        if (M.dim(i) > 0 && N.dim(i) > 0) degs.push_back(i);
    }
    return degs;
}

int index_of(const std::vector<int>& degs, const std::vector<int>& ids, int degree) {
    for (size_t t = 0; t < degs.size(); ++t) {
        if (degs[t] == degree) return ids[t];
    }
    return -1;
}

bool in_interval(int i, Bound k, Bound l) {
    if (k.finite && i < k.v) return false;
    if (k.is_pos_inf()) return false;
    if (l.finite && i > l.v) return false;
    if (l.is_neg_inf()) return false;
    return true;
}

}  // namespace

Matrix HomotopyWitness::comp(int i) const { return stored_or_zero(x, lo, i, src, tgt); }
Matrix WeakHomotopyWitness::xcomp(int i) const { return stored_or_zero(x, lo, i, src, tgt); }
Matrix WeakHomotopyWitness::ycomp(int i) const { return stored_or_zero(y, lo, i, src, tgt); }

bool witness_verifies(const ChainMap& f, const HomotopyWitness& w) {
    if (w.src != f.src || w.tgt != f.tgt) return false;
    int a = std::min(f.src.lo, f.tgt.lo);
    int b = std::max(f.src.hi(), f.tgt.hi());
    for (int i = a; i <= b; ++i) {
        Matrix rhs = add(mul(f.tgt.diff(i - 1), w.comp(i)), mul(w.comp(i + 1), f.src.diff(i)));
        if (f.comp(i) != rhs) return false;
    }
    return true;
}

bool witness_verifies(const ChainMap& f, const ChainMap& g, const WeakHomotopyWitness& w,
                      Bound k, Bound l) {
    if (w.src != f.src || w.tgt != f.tgt) return false;
    if (w.m0.src != f.src || w.m0.tgt != f.tgt) return false;
    int a = std::min(f.src.lo, f.tgt.lo);
    int b = std::max(f.src.hi(), f.tgt.hi());
    for (int i = a; i <= b; ++i) {
        if (in_interval(i, k, l) && !w.m0.comp(i).is_zero()) return false;
        Matrix lhs = sub(sub(f.comp(i), g.comp(i)), w.m0.comp(i));
        Matrix rhs = add(mul(f.tgt.diff(i - 1), w.xcomp(i)), mul(w.ycomp(i + 1), f.src.diff(i)));
        if (lhs != rhs) return false;
    }
    return true;
}

std::optional<HomotopyWitness> is_null_homotopic(const ChainMap& f) {
    const Complex& M = f.src;
    const Complex& N = f.tgt;
    BlockSystem sys(M.ring);
    std::vector<int> hdegs = homotopy_degrees(M, N);
    std::vector<int> hids;
    for (int i : hdegs) hids.push_back(sys.add_unknown(N.dim(i - 1), M.dim(i)));
    for (int i : component_degrees(M, N)) {
        int eq = sys.add_equation(N.dim(i), M.dim(i));
        sys.set_rhs(eq, f.comp(i));
        int hi = index_of(hdegs, hids, i);
        int hi1 = index_of(hdegs, hids, i + 1);
        if (hi >= 0) sys.add_term(eq, hi, N.diff(i - 1), Matrix::identity(M.ring, M.dim(i)));
        if (hi1 >= 0) sys.add_term(eq, hi1, Matrix::identity(M.ring, N.dim(i)), M.diff(i));
    }
    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    HomotopyWitness w;
    w.src = M;
    w.tgt = N;
    if (!hdegs.empty()) {
        w.lo = hdegs.front();
        // Unknowns were registered on consecutive content degrees; fill the
        // gaps so the stored range is contiguous.
        for (int i = hdegs.front(); i <= hdegs.back(); ++i) {
            int id = index_of(hdegs, hids, i);
            if (id >= 0) {
                w.x.push_back((*sol)[static_cast<size_t>(id)]);
            } else {
                w.x.push_back(Matrix::zero(M.ring, N.dim(i - 1), M.dim(i)));
            }
        }
    }
    if (!witness_verifies(f, w)) throw InvariantViolation("null-homotopy witness failed recomposition");
    return w;
}

namespace {

// Contiguous chain-map components from solved unknowns, gaps zero-filled.
ChainMap collect_map(const Complex& src, const Complex& tgt, const std::vector<int>& degs,
                     const std::vector<int>& ids, const std::vector<Matrix>& sol) {
    std::vector<Matrix> comps;
    int clo = degs.empty() ? 0 : degs.front();
    if (!degs.empty()) {
        for (int i = degs.front(); i <= degs.back(); ++i) {
            int id = index_of(degs, ids, i);
            if (id >= 0) {
                comps.push_back(sol[static_cast<size_t>(id)]);
            } else {
                comps.push_back(Matrix::zero(src.ring, tgt.dim(i), src.dim(i)));
            }
        }
    }
    return make_chain_map(src, tgt, clo, std::move(comps));
}

HomotopyWitness collect_witness(const Complex& src, const Complex& tgt,
                                const std::vector<int>& degs, const std::vector<int>& ids,
                                const std::vector<Matrix>& sol) {
    HomotopyWitness w;
    w.src = src;
    w.tgt = tgt;
    if (!degs.empty()) {
        w.lo = degs.front();
        for (int i = degs.front(); i <= degs.back(); ++i) {
            int id = index_of(degs, ids, i);
            if (id >= 0) {
                w.x.push_back(sol[static_cast<size_t>(id)]);
            } else {
                w.x.push_back(Matrix::zero(src.ring, tgt.dim(i - 1), src.dim(i)));
            }
        }
    }
    return w;
}

// Chain-map conditions d u - u d = 0 for an unknown collection src -> tgt.
void add_chain_conditions(BlockSystem& sys, const Complex& src, const Complex& tgt,
                          const std::vector<int>& degs, const std::vector<int>& ids) {
    const CoeffRing& R = src.ring;
    int a = std::min(src.lo, tgt.lo) - 1;
    int b = std::max(src.hi(), tgt.hi());
    for (int i = a; i <= b; ++i) {
        if (tgt.dim(i + 1) == 0 || src.dim(i) == 0) continue;
        int ui = index_of(degs, ids, i);
        int ui1 = index_of(degs, ids, i + 1);
        if (ui < 0 && ui1 < 0) continue;
        int eq = sys.add_equation(tgt.dim(i + 1), src.dim(i));
        if (ui >= 0) sys.add_term(eq, ui, tgt.diff(i), Matrix::identity(R, src.dim(i)));
        if (ui1 >= 0) {
            sys.add_term(eq, ui1, Matrix::identity(R, tgt.dim(i + 1)), src.diff(i),
                         neg(R, elem_one(R)));
        }
    }
}

}  // namespace

std::optional<LiftResult> homotopy_lift(const ChainMap& p, const ChainMap& along) {
    if (p.tgt != along.tgt) throw SourceTargetMismatch("lift needs maps into the same target");
    const Complex& A = p.src;
    const Complex& B = along.src;
    const Complex& T = p.tgt;
    const CoeffRing& R = A.ring;
    BlockSystem sys(R);
    std::vector<int> udegs = component_degrees(A, B);
    std::vector<int> uids;
    for (int i : udegs) uids.push_back(sys.add_unknown(B.dim(i), A.dim(i)));
    std::vector<int> xdegs = homotopy_degrees(A, T);
    std::vector<int> xids;
    for (int i : xdegs) xids.push_back(sys.add_unknown(T.dim(i - 1), A.dim(i)));
    add_chain_conditions(sys, A, B, udegs, uids);
    // along^i u^i + d x^i + x^{i+1} d = p^i.
    for (int i : component_degrees(A, T)) {
        int eq = sys.add_equation(T.dim(i), A.dim(i));
        sys.set_rhs(eq, p.comp(i));
        int ui = index_of(udegs, uids, i);
        int xi = index_of(xdegs, xids, i);
        int xi1 = index_of(xdegs, xids, i + 1);
        if (ui >= 0) sys.add_term(eq, ui, along.comp(i), Matrix::identity(R, A.dim(i)));
        if (xi >= 0) sys.add_term(eq, xi, T.diff(i - 1), Matrix::identity(R, A.dim(i)));
        if (xi1 >= 0) sys.add_term(eq, xi1, Matrix::identity(R, T.dim(i)), A.diff(i));
    }
    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    LiftResult out;
    out.map = collect_map(A, B, udegs, uids, *sol);
    out.homotopy = collect_witness(A, T, xdegs, xids, *sol);
    if (!witness_verifies(sub(p, compose(along, out.map)), out.homotopy)) {
        throw InvariantViolation("lift witness failed recomposition");
    }
    return out;
}

std::optional<LiftResult> homotopy_extend(const ChainMap& p, const ChainMap& along) {
    if (p.src != along.src) throw SourceTargetMismatch("extend needs maps out of the same source");
    const Complex& A = p.src;
    const Complex& B = along.tgt;
    const Complex& T = p.tgt;
    const CoeffRing& R = A.ring;
    BlockSystem sys(R);
    std::vector<int> udegs = component_degrees(B, T);
    std::vector<int> uids;
    for (int i : udegs) uids.push_back(sys.add_unknown(T.dim(i), B.dim(i)));
    std::vector<int> xdegs = homotopy_degrees(A, T);
    std::vector<int> xids;
    for (int i : xdegs) xids.push_back(sys.add_unknown(T.dim(i - 1), A.dim(i)));
    add_chain_conditions(sys, B, T, udegs, uids);
    // u^i along^i + d x^i + x^{i+1} d = p^i.
    for (int i : component_degrees(A, T)) {
        int eq = sys.add_equation(T.dim(i), A.dim(i));
        sys.set_rhs(eq, p.comp(i));
        int ui = index_of(udegs, uids, i);
        int xi = index_of(xdegs, xids, i);
        int xi1 = index_of(xdegs, xids, i + 1);
        if (ui >= 0) sys.add_term(eq, ui, Matrix::identity(R, T.dim(i)), along.comp(i));
        if (xi >= 0) sys.add_term(eq, xi, T.diff(i - 1), Matrix::identity(R, A.dim(i)));
        if (xi1 >= 0) sys.add_term(eq, xi1, Matrix::identity(R, T.dim(i)), A.diff(i));
    }
    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    LiftResult out;
    out.map = collect_map(B, T, udegs, uids, *sol);
    out.homotopy = collect_witness(A, T, xdegs, xids, *sol);
    if (!witness_verifies(sub(p, compose(out.map, along)), out.homotopy)) {
        throw InvariantViolation("extension witness failed recomposition");
    }
    return out;
}

namespace {

// Shared engine for weakly_homotopic / sim_interval: solve
// f - g - m0 = d x + y d with m0 a chain map vanishing on [k, l].
// want_m0 = false forces m0 = 0 identically.
std::optional<WeakHomotopyWitness> weak_solve(const ChainMap& f, const ChainMap& g, Bound k,
                                              Bound l, bool want_m0) {
    if (f.src != g.src || f.tgt != g.tgt) throw SourceTargetMismatch("weak homotopy needs parallel maps");
    const Complex& M = f.src;
    const Complex& N = f.tgt;
    const CoeffRing& R = M.ring;
    BlockSystem sys(R);

    std::vector<int> hdegs = homotopy_degrees(M, N);
    std::vector<int> xids, yids;
    for (int i : hdegs) {
        xids.push_back(sys.add_unknown(N.dim(i - 1), M.dim(i)));
        yids.push_back(sys.add_unknown(N.dim(i - 1), M.dim(i)));
    }
    std::vector<int> cdegs = component_degrees(M, N);
    std::vector<int> mids;
    for (int i : cdegs) {
        if (want_m0 && !in_interval(i, k, l)) {
            mids.push_back(sys.add_unknown(N.dim(i), M.dim(i)));
        } else {
            mids.push_back(-1);
        }
    }
    auto m_at = [&](int degree) {
        for (size_t t = 0; t < cdegs.size(); ++t) {
            if (cdegs[t] == degree) return mids[t];
        }
        return -1;
    };

    // Homotopy equations: (f-g)^i = m0^i + d x^i + y^{i+1} d.
    for (int i : cdegs) {
        int eq = sys.add_equation(N.dim(i), M.dim(i));
        sys.set_rhs(eq, sub(f.comp(i), g.comp(i)));
        int xi = index_of(hdegs, xids, i);
        int yi1 = index_of(hdegs, yids, i + 1);
        if (xi >= 0) sys.add_term(eq, xi, N.diff(i - 1), Matrix::identity(R, M.dim(i)));
        if (yi1 >= 0) sys.add_term(eq, yi1, Matrix::identity(R, N.dim(i)), M.diff(i));
        int mi = m_at(i);
        if (mi >= 0)
            sys.add_term(eq, mi, Matrix::identity(R, N.dim(i)), Matrix::identity(R, M.dim(i)));
    }
    // Chain-map conditions on m0: d m0^i - m0^{i+1} d = 0.
    if (want_m0) {
        int a = std::min(M.lo, N.lo) - 1;
        int b = std::max(M.hi(), N.hi());
        for (int i = a; i <= b; ++i) {
            if (N.dim(i + 1) == 0 || M.dim(i) == 0) continue;
            int mi = m_at(i);
            int mi1 = m_at(i + 1);
            if (mi < 0 && mi1 < 0) continue;
            int eq = sys.add_equation(N.dim(i + 1), M.dim(i));
            if (mi >= 0) sys.add_term(eq, mi, N.diff(i), Matrix::identity(R, M.dim(i)));
            if (mi1 >= 0)
                sys.add_term(eq, mi1, Matrix::identity(R, N.dim(i + 1)), M.diff(i),
                             neg(R, elem_one(R)));
        }
    }

    auto sol = sys.solve();
    if (!sol) return std::nullopt;

    WeakHomotopyWitness w;
    w.src = M;
    w.tgt = N;
    if (!hdegs.empty()) {
        w.lo = hdegs.front();
        for (int i = hdegs.front(); i <= hdegs.back(); ++i) {
            int xi = index_of(hdegs, xids, i);
            if (xi >= 0) {
                int yi = index_of(hdegs, yids, i);
                w.x.push_back((*sol)[static_cast<size_t>(xi)]);
                w.y.push_back((*sol)[static_cast<size_t>(yi)]);
            } else {
                w.x.push_back(Matrix::zero(R, N.dim(i - 1), M.dim(i)));
                w.y.push_back(Matrix::zero(R, N.dim(i - 1), M.dim(i)));
            }
        }
    }
    std::vector<Matrix> m0_comps;
    int clo = cdegs.empty() ? 0 : cdegs.front();
    if (!cdegs.empty()) {
        for (int i = cdegs.front(); i <= cdegs.back(); ++i) {
            int mi = m_at(i);
            if (mi >= 0) {
                m0_comps.push_back((*sol)[static_cast<size_t>(mi)]);
            } else {
                m0_comps.push_back(Matrix::zero(R, N.dim(i), M.dim(i)));
            }
        }
    }
    w.m0 = make_chain_map(M, N, clo, std::move(m0_comps));
    if (!witness_verifies(f, g, w, k, l)) {
        throw InvariantViolation("weak homotopy witness failed recomposition");
    }
    return w;
}

}  // namespace

std::optional<WeakHomotopyWitness> weakly_homotopic(const ChainMap& f, const ChainMap& g) {
    return weak_solve(f, g, Bound::neg_inf(), Bound::pos_inf(), false);
}

std::optional<WeakHomotopyWitness> sim_interval(const ChainMap& f, const ChainMap& g, Bound k,
                                                Bound l) {
    if (k.is_pos_inf() || l.is_neg_inf()) throw InvalidRange("empty interval bounds");
    if (k.finite && l.finite && k.v > l.v) throw InvalidRange("interval lower bound above upper");
    if (!k.finite && !l.finite && k.is_neg_inf() == l.is_neg_inf()) {
        throw InvalidRange("degenerate infinite interval");
    }
    return weak_solve(f, g, k, l, true);
}

std::optional<WeakHomotopyWitness> stupid_membership(const Complex& M, Side side, int n) {
    ChainMap id = id_map(M);
    ChainMap zero = zero_map(M, M);
    if (side == Side::le) {
        return sim_interval(id, zero, Bound::neg_inf(), Bound::at(-n - 1));
    }
    return sim_interval(id, zero, Bound::at(-n + 1), Bound::pos_inf());
}

}  // namespace weightkit
