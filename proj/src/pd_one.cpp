#include "weightkit/pd_one.hpp"

#include <algorithm>
#include <numeric>

#include "weightkit/errors.hpp"

namespace weightkit {

namespace {

void need_snf(const CoeffRing& R, const char* what) {
    if (!R.has_snf()) throw UnsupportedRing(std::string(what) + " needs Z or a field");
}

Matrix kron(const Matrix& A, const Matrix& B) {
    const CoeffRing& R = A.ring();
    Matrix out = Matrix::zero(R, A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) {
            for (int r = 0; r < B.rows(); ++r) {
                for (int c = 0; c < B.cols(); ++c) {
                    out.set(i * B.rows() + r, j * B.cols() + c, mul(R, A.at(i, j), B.at(r, c)));
                }
            }
        }
    }
    return out;
}

// M with every term replaced by `copies` parallel copies.
Complex scale_copies(const Complex& M, int copies) {
    if (M.is_zero_complex() || copies == 0) return zero_complex(M.ring);
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int i = M.lo; i <= M.hi(); ++i) dims.push_back(M.dim(i) * copies);
    for (int i = M.lo; i < M.hi(); ++i) diffs.push_back(kron(M.diff(i), Matrix::identity(M.ring, copies)));
    return make_complex(M.ring, M.lo, std::move(dims), std::move(diffs));
}

// Presentation matrix of the torsion relations: gens(G) x #torsion.
Matrix presentation(const CoeffRing& R, const FgModule& G) {
    int t = G.gens();
    int s = static_cast<int>(G.torsion.size());
    Matrix D = Matrix::zero(R, t, s);
    for (int k = 0; k < s; ++k) D.set(G.rank + k, k, elem_from_int(R, G.torsion[static_cast<size_t>(k)]));
    return D;
}

// Terms Hom(M^{-k}, R) in degree k, differentials transposed.
Complex dual_complex(const Complex& M) {
    if (M.is_zero_complex()) return M;
    int lo = -M.hi();
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int k = lo; k <= -M.lo; ++k) dims.push_back(M.dim(-k));
    for (int k = lo; k < -M.lo; ++k) diffs.push_back(M.diff(-k - 1).transpose());
    return make_complex(M.ring, lo, std::move(dims), std::move(diffs));
}

ChainMap dual_map(const ChainMap& f) {
    Complex ds = dual_complex(f.tgt);
    Complex dt = dual_complex(f.src);
    int a = std::max(ds.lo, dt.lo);
    int b = std::min(ds.hi(), dt.hi());
    if (a > b) return zero_map(ds, dt);
    std::vector<Matrix> comps;
    for (int k = a; k <= b; ++k) comps.push_back(f.comp(-k).transpose());
    return make_chain_map(ds, dt, a, comps);
}

// Free complex computing M (x) G (for base = M) or Hom(M, G) (for base =
// dual of M): the cone over the relation map of a free presentation of G.
Complex coeff_model(const Complex& base, const FgModule& G) {
    int t = G.gens();
    int s = static_cast<int>(G.torsion.size());
    Complex B = scale_copies(base, t);
    if (s == 0 || base.is_zero_complex()) return B;
    Complex A = scale_copies(base, s);
    Matrix D = presentation(base.ring, G);
    std::vector<Matrix> comps;
    for (int i = base.lo; i <= base.hi(); ++i) {
        comps.push_back(kron(Matrix::identity(base.ring, base.dim(i)), D));
    }
    ChainMap rel = make_chain_map(A, B, base.lo, comps);
    return cone(rel).cone;
}

// The induced map between coefficient models of fbase.src and fbase.tgt.
ChainMap coeff_model_map(const ChainMap& fbase, const FgModule& G) {
    int t = G.gens();
    int s = static_cast<int>(G.torsion.size());
    const CoeffRing& R = fbase.src.ring;
    Complex mx = coeff_model(fbase.src, G);
    Complex my = coeff_model(fbase.tgt, G);
    int a = std::max(mx.lo, my.lo);
    int b = std::min(mx.hi(), my.hi());
    if (mx.is_zero_complex() || my.is_zero_complex() || a > b) return zero_map(mx, my);
    bool plain = s == 0 || fbase.src.is_zero_complex() || fbase.tgt.is_zero_complex();
    std::vector<Matrix> comps;
    for (int i = a; i <= b; ++i) {
        if (plain) {
            comps.push_back(kron(fbase.comp(i), Matrix::identity(R, t)));
        } else {
            Matrix c = Matrix::zero(R, my.dim(i), mx.dim(i));
            c.set_block(0, 0, kron(fbase.comp(i), Matrix::identity(R, t)));
            c.set_block(fbase.tgt.dim(i) * t, fbase.src.dim(i) * t,
                        kron(fbase.comp(i + 1), Matrix::identity(R, s)));
            comps.push_back(c);
        }
    }
    return make_chain_map(mx, my, a, comps);
}

// Coordinate offset of pieces[p] inside the decomposed complex at `deg`.
int piece_offset(const CoeffRing& R, const std::vector<ElementaryPiece>& pieces, size_t p,
                 int deg) {
    int off = 0;
    for (size_t q = 0; q < p; ++q) off += piece_complex(R, pieces[q]).dim(deg);
    return off;
}

}  // namespace

FgModule ext1(const FgModule& A, const FgModule& B) {
    if (A.ring != B.ring) throw RingMismatch("ext1 needs both modules over one ring");
    need_snf(A.ring, "ext1");
    if (A.ring.is_field()) return fg_zero(A.ring);
    std::vector<long long> orders;
    for (long long d : A.torsion) {
        for (int r = 0; r < B.rank; ++r) orders.push_back(d);
        for (long long e : B.torsion) orders.push_back(std::gcd(d, e));
    }
    return fg_from_orders(A.ring, 0, orders);
}

HomDecomposition hom_decomposition(const Complex& M, const Complex& N) {
    if (M.ring != N.ring) throw RingMismatch("hom_decomposition needs one ring");
    need_snf(M.ring, "hom_decomposition");
    auto [mlo, mhi] = homology_range(M);
    auto [nlo, nhi] = homology_range(N);
    HomDecomposition out;
    out.hom_part = fg_zero(M.ring);
    out.ext_part = fg_zero(M.ring);
    for (int j = std::min(mlo, nlo) - 1; j <= std::max(mhi, nhi) + 1; ++j) {
        FgModule hm = homology(M, j);
        out.hom_part = fg_direct_sum(out.hom_part, fg_hom(hm, homology(N, j)));
        out.ext_part = fg_direct_sum(out.ext_part, ext1(hm, homology(N, j + 1)));
    }
    out.total = hom_group(M, N);
    out.matches = fg_direct_sum(out.hom_part, out.ext_part) == out.total;
    return out;
}

ExtClass ext_class_of(const ChainMap& g, int m) {
    const CoeffRing& R = g.src.ring;
    need_snf(R, "ext_class_of");
    FgModule A = homology(g.src, m - 1);
    FgModule B = homology(g.tgt, m);
    if (R.is_field()) return ExtClass{fg_zero(R), Matrix::zero(R, 0, 1)};

    int T = static_cast<int>(A.torsion.size());
    int G = B.gens();
    int amb = T * G;
    if (amb == 0) return ExtClass{ext1(A, B), Matrix::zero(R, 0, 1)};
    Matrix rels = Matrix::zero(R, amb, amb);
    for (int i = 0; i < T; ++i) {
        for (int k = 0; k < G; ++k) {
            long long d = A.torsion[static_cast<size_t>(i)];
            long long o = k < B.rank ? d : std::gcd(d, B.torsion[static_cast<size_t>(k - B.rank)]);
            rels.set(i * G + k, i * G + k, elem_from_int(R, o));
        }
    }
    Subquotient pres(Matrix::identity(R, amb), rels);
    if (pres.module() != ext1(A, B)) {
        throw InvariantViolation("extension group presentation disagrees with ext1");
    }

    CanonicalDecomposition sdec = canonical_decompose(g.src);
    CanonicalDecomposition tdec = canonical_decompose(g.tgt);
    ChainMap gp = compose(tdec.iso, compose(g, sdec.iso_inv));
    Matrix block = gp.comp(-m);

    // Source columns: the degree -m coordinate of each Torsion{m-1, d}.
    std::vector<int> src_cols;
    std::vector<long long> src_orders;
    for (size_t p = 0; p < sdec.pieces.size(); ++p) {
        const ElementaryPiece& pc = sdec.pieces[p];
        if (pc.kind == ElementaryPiece::Kind::Torsion && pc.j == m - 1) {
            src_cols.push_back(piece_offset(R, sdec.pieces, p, -m));
            src_orders.push_back(pc.d);
        }
    }
    // Target rows: free pieces at weight m, then torsion pieces with H_m.
    std::vector<int> tgt_rows;
    std::vector<long long> tgt_orders;
    for (size_t p = 0; p < tdec.pieces.size(); ++p) {
        const ElementaryPiece& pc = tdec.pieces[p];
        if (pc.kind == ElementaryPiece::Kind::Free && pc.j == m) {
            tgt_rows.push_back(piece_offset(R, tdec.pieces, p, -m));
            tgt_orders.push_back(0);
        }
    }
    for (size_t p = 0; p < tdec.pieces.size(); ++p) {
        const ElementaryPiece& pc = tdec.pieces[p];
        if (pc.kind == ElementaryPiece::Kind::Torsion && pc.j == m) {
            tgt_rows.push_back(piece_offset(R, tdec.pieces, p, -m));
            tgt_orders.push_back(pc.d);
        }
    }
    if (src_orders != A.torsion) {
        throw InvariantViolation("torsion pieces disagree with homology invariant factors");
    }
    std::vector<long long> expect(B.rank, 0);
    expect.insert(expect.end(), B.torsion.begin(), B.torsion.end());
    if (tgt_orders != expect) {
        throw InvariantViolation("target pieces disagree with homology invariant factors");
    }

    Matrix v = Matrix::zero(R, amb, 1);
    for (int i = 0; i < T; ++i) {
        for (int k = 0; k < G; ++k) {
            v.set(i * G + k, 0, block.at(tgt_rows[static_cast<size_t>(k)],
                                         src_cols[static_cast<size_t>(i)]));
        }
    }
    return ExtClass{pres.module(), pres.class_of(v)};
}

bool factors_through_free(const FgModuleMap& phi) {
    for (int i = phi.src.rank; i < phi.src.gens(); ++i) {
        for (int r = 0; r < phi.tgt.gens(); ++r) {
            if (phi.action.at(r, i) != Elem{}) return false;
        }
    }
    return true;
}

bool kill_criterion_pd1(const ChainMap& g, int m) {
    need_snf(g.src.ring, "kill_criterion_pd1");
    if (!homology_map(g, m).is_zero()) return false;
    if (!ext_class_of(g, m).is_zero()) return false;
    return factors_through_free(homology_map(g, m - 1));
}

bool without_weights_pd1(const Complex& M, int m, int n) {
    if (m > n) throw InvalidRange("without_weights_pd1 needs m <= n");
    need_snf(M.ring, "without_weights_pd1");
    for (int j = m; j <= n; ++j) {
        if (!homology(M, j).is_zero()) return false;
    }
    return homology(M, m - 1).torsion.empty();
}

bool skeleton_membership(const Complex& M, int n) {
    need_snf(M.ring, "skeleton_membership");
    auto [jlo, jhi] = homology_range(M);
    (void)jlo;
    for (int j = n + 1; j <= jhi; ++j) {
        if (!homology(M, j).is_zero()) return false;
    }
    return homology(M, n).torsion.empty();
}

FgModule coefficient_homology(const Complex& M, const FgModule& coeff, int j, Variance v) {
    if (M.ring != coeff.ring) throw RingMismatch("coefficient ring must match the complex");
    need_snf(M.ring, "coefficient_homology");
    Complex base = v == Variance::tensor ? M : dual_complex(M);
    return homology(coeff_model(base, coeff), v == Variance::tensor ? j : -j);
}

FgModuleMap coefficient_homology_map(const ChainMap& f, const FgModule& coeff, int j, Variance v) {
    if (f.src.ring != coeff.ring) throw RingMismatch("coefficient ring must match the complex");
    need_snf(f.src.ring, "coefficient_homology_map");
    ChainMap base = v == Variance::tensor ? f : dual_map(f);
    return homology_map(coeff_model_map(base, coeff), v == Variance::tensor ? j : -j);
}

}  // namespace weightkit
