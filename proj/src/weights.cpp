#include "weightkit/weights.hpp"

#include <algorithm>
#include <map>

#include "weightkit/errors.hpp"

namespace weightkit {

namespace {

// Identity blocks on the support overlap. Only valid between complexes that
// carry the same ranks there (brutal truncations of a common total do).
ChainMap degreewise_identity(const Complex& src, const Complex& tgt) {
    int a = std::max(src.lo, tgt.lo);
    int b = std::min(src.hi(), tgt.hi());
    if (a > b) return zero_map(src, tgt);
    std::vector<Matrix> comps;
    for (int i = a; i <= b; ++i) {
        if (src.dim(i) != tgt.dim(i)) {
            throw DimensionMismatch("identity embedding needs equal ranks on the overlap");
        }
        comps.push_back(Matrix::identity(src.ring, src.dim(i)));
    }
    return make_chain_map(src, tgt, a, comps);
}

void validate_choice(const WeightChoice& c, const Complex& total) {
    if (c.incl.src != c.part || c.incl.tgt != total) {
        throw SourceTargetMismatch("weight choice map must run from its part into the object");
    }
    if (!stupid_membership(c.part, Side::le, c.bound)) {
        throw InvalidChoice("weight choice part is not in w_{<=bound}");
    }
    if (!stupid_membership(cone(c.incl).cone, Side::ge, c.bound + 1)) {
        throw InvalidChoice("weight choice cone is not in w_{>=bound+1}");
    }
}

// The summand list of dec.decomposed in its direct-sum order: sorted pieces
// first, then the contractible pairs ascending by lower degree.
std::vector<Complex> catalog_parts(const CoeffRing& R, const CanonicalDecomposition& dec) {
    std::vector<Complex> parts;
    for (const ElementaryPiece& p : dec.pieces) parts.push_back(piece_complex(R, p));
    for (const auto& [deg, count] : dec.contractible_count) {
        for (int t = 0; t < count; ++t) {
            parts.push_back(make_complex(R, deg, {1, 1}, {Matrix::identity(R, 1)}));
        }
    }
    return parts;
}

}  // namespace

TruncationTriangle stupid_truncate(const Complex& M, int n) {
    TruncationTriangle t;
    t.total = M;
    t.bound = n;
    int cut = -n;  // lower keeps degrees >= cut
    int llo = std::max(M.lo, cut);
    if (M.is_zero_complex() || llo > M.hi()) {
        t.lower = zero_complex(M.ring);
    } else {
        std::vector<int> dims;
        std::vector<Matrix> diffs;
        for (int i = llo; i <= M.hi(); ++i) dims.push_back(M.dim(i));
        for (int i = llo; i < M.hi(); ++i) diffs.push_back(M.diff(i));
        t.lower = make_complex(M.ring, llo, std::move(dims), std::move(diffs));
    }
    int uhi = std::min(M.hi(), cut - 1);
    if (M.is_zero_complex() || uhi < M.lo) {
        t.upper = zero_complex(M.ring);
    } else {
        std::vector<int> dims;
        std::vector<Matrix> diffs;
        for (int i = M.lo; i <= uhi; ++i) dims.push_back(M.dim(i));
        for (int i = M.lo; i < uhi; ++i) diffs.push_back(M.diff(i));
        t.upper = make_complex(M.ring, M.lo, std::move(dims), std::move(diffs));
    }
    t.incl = degreewise_identity(t.lower, M);
    t.proj = degreewise_identity(M, t.upper);
    return t;
}

std::optional<TruncationDiagram> extend_truncation_diagram(const ChainMap& g,
                                                           const TruncationTriangle& row_src,
                                                           const TruncationTriangle& row_tgt) {
    if (row_src.total != g.src || row_tgt.total != g.tgt) {
        throw SourceTargetMismatch("truncation rows must sit on the endpoints of the morphism");
    }
    auto lower = homotopy_lift(compose(g, row_src.incl), row_tgt.incl);
    if (!lower) return std::nullopt;
    auto upper = homotopy_extend(compose(row_tgt.proj, g), row_src.proj);
    if (!upper) return std::nullopt;
    TruncationDiagram d;
    d.g = g;
    d.row_src = row_src;
    d.row_tgt = row_tgt;
    d.h = std::move(lower->map);
    d.lower_homotopy = std::move(lower->homotopy);
    d.j = std::move(upper->map);
    d.upper_homotopy = std::move(upper->homotopy);
    return d;
}

std::optional<KillCertificate> kills_weights(const ChainMap& g, int m, int n, KillCondition mode) {
    if (m > n) throw InvalidRange("kills_weights needs m <= n");
    TruncationTriangle src_row = stupid_truncate(g.src, n);
    TruncationTriangle tgt_row = stupid_truncate(g.tgt, m - 1);
    KillCertificate cert;
    cert.condition = mode;
    cert.m = m;
    cert.n = n;
    switch (mode) {
        case KillCondition::composite: {
            auto w = is_null_homotopic(compose(tgt_row.proj, compose(g, src_row.incl)));
            if (!w) return std::nullopt;
            cert.composite_null = std::move(*w);
            return cert;
        }
        case KillCondition::factor_lower: {
            auto lift = homotopy_lift(compose(g, src_row.incl), tgt_row.incl);
            if (!lift) return std::nullopt;
            cert.h = std::move(lift->map);
            cert.lower_homotopy = std::move(lift->homotopy);
            return cert;
        }
        case KillCondition::factor_upper: {
            auto ext = homotopy_extend(compose(tgt_row.proj, g), src_row.proj);
            if (!ext) return std::nullopt;
            cert.j = std::move(ext->map);
            cert.upper_homotopy = std::move(ext->homotopy);
            return cert;
        }
        case KillCondition::completion: {
            WeightChoice src_choice{src_row.lower, src_row.incl, n};
            WeightChoice tgt_choice{tgt_row.lower, tgt_row.incl, m - 1};
            return kills_weights(g, m, n, src_choice, tgt_choice);
        }
    }
    throw InvariantViolation("unknown kill condition");
}

std::optional<KillCertificate> kills_weights(const ChainMap& g, int m, int n,
                                             const WeightChoice& src_choice,
                                             const WeightChoice& tgt_choice) {
    if (m > n) throw InvalidRange("kills_weights needs m <= n");
    if (src_choice.bound != n || tgt_choice.bound != m - 1) {
        throw InvalidRange("completion wants an n-choice on the source and an (m-1)-choice on the target");
    }
    validate_choice(src_choice, g.src);
    validate_choice(tgt_choice, g.tgt);
    auto lift = homotopy_lift(compose(g, src_choice.incl), tgt_choice.incl);
    if (!lift) return std::nullopt;
    ConeTriangle src_cone = cone(src_choice.incl);
    ConeTriangle tgt_cone = cone(tgt_choice.incl);
    auto ext = homotopy_extend(compose(tgt_cone.inclusion, g), src_cone.inclusion);
    if (!ext) return std::nullopt;
    KillCertificate cert;
    cert.condition = KillCondition::completion;
    cert.m = m;
    cert.n = n;
    cert.h = std::move(lift->map);
    cert.lower_homotopy = std::move(lift->homotopy);
    cert.j = std::move(ext->map);
    cert.upper_homotopy = std::move(ext->homotopy);
    return cert;
}

std::optional<KillCertificate> without_weights(const Complex& M, int m, int n) {
    if (m > n) throw InvalidRange("without_weights needs m <= n");
    auto cert = kills_weights(id_map(M), m, n);
    // Independent route: the weight complex of M is M itself, so avoiding
    // weights m..n reads as id ~ 0 on cohomological degrees [-n, -m].
    auto interval = sim_interval(id_map(M), zero_map(M, M), Bound::at(-n), Bound::at(-m));
    if (cert.has_value() != interval.has_value()) {
        throw InvariantViolation("membership routes disagree on a weight range");
    }
    return cert;
}

std::optional<AvoidingDecomposition> avoiding_decomposition(const Complex& M, int m, int n) {
    if (m > n) throw InvalidRange("avoiding_decomposition needs m <= n");
    if (!M.ring.has_snf()) {
        throw UnsupportedRing("avoiding decompositions need canonical decomposition; only detection is offered over dual numbers");
    }
    const CoeffRing& R = M.ring;
    CanonicalDecomposition dec = canonical_decompose(M);
    std::vector<Complex> parts = catalog_parts(R, dec);
    // A free piece at j occupies weight j, a torsion piece weights j, j+1.
    std::vector<size_t> xpick, ypick;
    for (size_t t = 0; t < dec.pieces.size(); ++t) {
        const ElementaryPiece& p = dec.pieces[t];
        int wlo = p.j;
        int whi = p.kind == ElementaryPiece::Kind::Torsion ? p.j + 1 : p.j;
        if (whi <= m - 1) {
            xpick.push_back(t);
        } else if (wlo >= n + 1) {
            ypick.push_back(t);
        } else {
            return std::nullopt;
        }
    }
    AvoidingDecomposition out;
    out.m = m;
    out.n = n;
    std::vector<Complex> xparts, yparts;
    for (size_t t : xpick) xparts.push_back(parts[t]);
    for (size_t t : ypick) yparts.push_back(parts[t]);
    out.x = xparts.empty() ? zero_complex(R) : direct_sum(xparts);
    out.y = yparts.empty() ? zero_complex(R) : direct_sum(yparts);
    ChainMap x_to_dec = zero_map(out.x, dec.decomposed);
    for (size_t t = 0; t < xpick.size(); ++t) {
        x_to_dec = add(x_to_dec, compose(summand_inclusion(parts, xpick[t]),
                                         summand_projection(xparts, t)));
    }
    out.x_incl = compose(dec.iso_inv, x_to_dec);
    ChainMap dec_to_y = zero_map(dec.decomposed, out.y);
    for (size_t t = 0; t < ypick.size(); ++t) {
        dec_to_y = add(dec_to_y, compose(summand_inclusion(yparts, t),
                                         summand_projection(parts, ypick[t])));
    }
    out.y_proj = compose(dec_to_y, dec.iso);
    if (!stupid_membership(out.x, Side::le, m - 1) || !stupid_membership(out.y, Side::ge, n + 1)) {
        throw InvariantViolation("avoiding decomposition parts failed membership certification");
    }

    // Compare cone(x_incl) with Y: [y_proj, 0] is a strict chain map because
    // y_proj kills the X summands, and it is a homotopy equivalence.
    ConeTriangle ct = cone(out.x_incl);
    int a = std::max(ct.cone.lo, out.y.lo);
    int b = std::min(ct.cone.hi(), out.y.hi());
    ChainMap u;
    if (a > b) {
        u = zero_map(ct.cone, out.y);
    } else {
        std::vector<Matrix> comps;
        for (int i = a; i <= b; ++i) {
            Matrix c = Matrix::zero(R, out.y.dim(i), ct.cone.dim(i));
            c.set_block(0, 0, out.y_proj.comp(i));
            comps.push_back(c);
        }
        u = make_chain_map(ct.cone, out.y, a, comps);
    }
    auto section = homotopy_lift(id_map(out.y), u);
    if (!section) throw InvariantViolation("cone comparison has no section");
    auto cone_side = is_null_homotopic(sub(id_map(ct.cone), compose(section->map, u)));
    if (!cone_side) throw InvariantViolation("cone comparison inverse is one-sided");
    out.cone_compare = u;
    out.cone_compare_inv = section->map;
    out.compare_y_id = section->homotopy;
    out.compare_cone_id = std::move(*cone_side);
    out.connecting = compose(ct.projection, out.cone_compare_inv);
    return out;
}

Complex weight_complex_via_tower(const Complex& M) {
    return weight_complex_via_tower(M, std::vector<WeightChoice>{});
}

Complex weight_complex_via_tower(const Complex& M, const std::vector<WeightChoice>& choices) {
    if (M.is_zero_complex()) {
        if (!choices.empty()) throw InvalidChoice("tower choices supplied for the zero complex");
        return M;
    }
    if (!choices.empty() && !M.ring.has_snf()) {
        throw UnsupportedRing("tower extraction with supplied choices needs canonical decomposition");
    }
    const CoeffRing& R = M.ring;
    int nmin = -M.hi();
    int nmax = -M.lo;
    std::map<int, const WeightChoice*> by_bound;
    for (const WeightChoice& c : choices) {
        if (c.bound < nmin || c.bound > nmax) {
            throw InvalidChoice("tower choice bound outside the weight range of the object");
        }
        if (!by_bound.emplace(c.bound, &c).second) throw InvalidChoice("duplicate tower choice bound");
        validate_choice(c, M);
    }

    int count = nmax - nmin + 1;
    std::vector<int> rdim(static_cast<size_t>(count), 0);
    std::vector<Matrix> emat(static_cast<size_t>(count), Matrix::zero(R, 0, 0));
    Complex xprev = zero_complex(R);
    ChainMap fprev = zero_map(xprev, M);
    bool prev_default = true;
    ChainMap prev_cone_incl;  // X_{k-1} -> cone(c_{k-1})
    ChainMap prev_pi;         // cone(c_{k-1}) -> F_{k-1}

    for (int k = nmin; k <= nmax; ++k) {
        const WeightChoice* ch = nullptr;
        auto it = by_bound.find(k);
        if (it != by_bound.end()) ch = it->second;
        Complex xk;
        ChainMap fk;
        if (ch) {
            xk = ch->part;
            fk = ch->incl;
        } else {
            TruncationTriangle t = stupid_truncate(M, k);
            xk = t.lower;
            fk = t.incl;
        }
        bool stage_default = ch == nullptr;
        bool plain = stage_default && prev_default;
        // Connecting map of the tower; for two brutal truncations it is the
        // honest subcomplex inclusion, otherwise a lift through fk.
        ChainMap ck;
        if (plain) {
            ck = degreewise_identity(xprev, xk);
        } else {
            auto lift = homotopy_lift(fprev, fk);
            if (!lift) throw InvariantViolation("tower connecting map does not lift");
            ck = lift->map;
        }
        ConeTriangle tri = cone(ck);

        // Heart representative F_k of cone(c_k) with an equivalence pi onto it.
        Complex heart;
        ChainMap pi;
        if (plain) {
            int r = M.dim(-k);
            heart = r == 0 ? zero_complex(R) : make_complex(R, -k, {r}, {});
            if (r == 0) {
                pi = zero_map(tri.cone, heart);
            } else {
                Matrix c = Matrix::zero(R, r, tri.cone.dim(-k));
                c.set_block(0, 0, Matrix::identity(R, r));
                pi = make_chain_map(tri.cone, heart, -k, {c});
            }
        } else {
            CanonicalDecomposition dec = canonical_decompose(tri.cone);
            int r = 0;
            for (const ElementaryPiece& p : dec.pieces) {
                if (p.kind != ElementaryPiece::Kind::Free || p.j != k) {
                    throw InvariantViolation("tower cone is not pure of its stage weight");
                }
                ++r;
            }
            heart = r == 0 ? zero_complex(R) : make_complex(R, -k, {r}, {});
            if (r == 0) {
                pi = zero_map(tri.cone, heart);
            } else {
                // The free pieces occupy the first r coordinates in degree -k.
                Matrix sel = Matrix::zero(R, r, dec.decomposed.dim(-k));
                sel.set_block(0, 0, Matrix::identity(R, r));
                pi = make_chain_map(tri.cone, heart, -k, {mul(sel, dec.iso.comp(-k))});
            }
        }
        ChainMap v;
        if (heart.is_zero_complex()) {
            v = zero_map(heart, tri.cone);
            if (!is_null_homotopic(id_map(tri.cone))) {
                throw InvariantViolation("tower cone with empty heart is not contractible");
            }
        } else {
            auto section = homotopy_lift(id_map(heart), pi);
            if (!section) throw InvariantViolation("tower heart projection has no section");
            v = section->map;
            if (!is_null_homotopic(sub(id_map(tri.cone), compose(v, pi)))) {
                throw InvariantViolation("tower heart projection is not an equivalence");
            }
        }
        rdim[static_cast<size_t>(k - nmin)] = heart.is_zero_complex() ? 0 : heart.dims[0];
        if (k > nmin) {
            // e_k = pi_{k-1}[1] . incl_{k-1}[1] . delta_k . v_k : F_k -> F_{k-1}[1];
            // its one component is the weight-complex differential at degree -k.
            ChainMap D = compose(shift_map(prev_cone_incl, 1), tri.projection);
            ChainMap e = compose(shift_map(prev_pi, 1), compose(D, v));
            emat[static_cast<size_t>(k - nmin)] = e.comp(-k);
        }
        prev_cone_incl = tri.inclusion;
        prev_pi = pi;
        prev_default = stage_default;
        xprev = xk;
        fprev = fk;
    }

    std::vector<int> tdims;
    std::vector<Matrix> tdiffs;
    for (int k = nmax; k >= nmin; --k) {
        tdims.push_back(rdim[static_cast<size_t>(k - nmin)]);
        if (k > nmin) tdiffs.push_back(emat[static_cast<size_t>(k - nmin)]);
    }
    return make_complex(R, -nmax, std::move(tdims), std::move(tdiffs));
}

}  // namespace weightkit
