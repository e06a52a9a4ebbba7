#include "weightkit/decompose.hpp"

#include <algorithm>

#include "weightkit/errors.hpp"

namespace weightkit {

namespace {

void require_snf_ring(const CoeffRing& R, const char* what) {
    if (!R.has_snf()) throw UnsupportedRing(std::string(what) + " needs Z, Q or F_p");
}

}  // namespace

Subquotient homology_subquotient(const Complex& M, int j) {
    require_snf_ring(M.ring, "homology");
    const int i = -j;
    Matrix cycles = kernel_basis(M.diff(i));
    Matrix boundaries = M.diff(i - 1);
    return Subquotient(cycles, boundaries);
}

FgModule homology(const Complex& M, int j) { return homology_subquotient(M, j).module(); }

FgModuleMap homology_map(const ChainMap& f, int j) {
    Subquotient hs = homology_subquotient(f.src, j);
    Subquotient ht = homology_subquotient(f.tgt, j);
    const int i = -j;
    Matrix action = Matrix::zero(f.src.ring, ht.module().gens(), hs.module().gens());
    for (int t = 0; t < hs.module().gens(); ++t) {
        Matrix img = mul(f.comp(i), hs.lift_generator(t));
        action.set_block(0, t, ht.class_of(img));
    }
    return make_fg_module_map(hs.module(), ht.module(), std::move(action));
}

std::pair<int, int> homology_range(const Complex& M) { return {-M.hi(), -M.lo}; }

std::string ElementaryPiece::to_string() const {
    if (kind == Kind::Free) return "free(j=" + std::to_string(j) + ")";
    return "torsion(j=" + std::to_string(j) + ", d=" + std::to_string(d) + ")";
}

Complex piece_complex(CoeffRing ring, const ElementaryPiece& p) {
    if (p.kind == ElementaryPiece::Kind::Free) return ring_in_degree(ring, -p.j);
    Matrix d(ring, 1, 1);
    d.set(0, 0, elem_from_int(ring, p.d));
    return make_complex(ring, -p.j - 1, {1, 1}, {d});
}

CanonicalDecomposition canonical_decompose(const Complex& M) {
    require_snf_ring(M.ring, "canonical decomposition");
    const CoeffRing& R = M.ring;
    if (M.is_zero_complex()) {
        CanonicalDecomposition out;
        out.decomposed = M;
        out.iso = id_map(M);
        out.iso_inv = id_map(M);
        return out;
    }
    const int len = static_cast<int>(M.dims.size());

    // Running change of basis per degree: new coords = T[k] * original.
    std::vector<Matrix> T, Tinv;
    for (int k = 0; k < len; ++k) {
        T.push_back(Matrix::identity(R, M.dims[static_cast<size_t>(k)]));
        Tinv.push_back(Matrix::identity(R, M.dims[static_cast<size_t>(k)]));
    }
    std::vector<Matrix> cur = M.diffs;

    // Classification of each basis vector: 0 = still free, 1/2 = lower and
    // upper end of a contractible pair, 3/4 = lower and upper end of a
    // torsion piece.
    std::vector<std::vector<int>> cls(static_cast<size_t>(len));
    for (int k = 0; k < len; ++k) cls[static_cast<size_t>(k)].assign(static_cast<size_t>(M.dims[static_cast<size_t>(k)]), 0);

    struct PairRec {
        int step, lo_idx, hi_idx;
        long long d;  // 0 for contractible
    };
    std::vector<PairRec> tors_recs, contr_recs;

    for (int k = 0; k + 1 < len; ++k) {
        const int rows = M.dims[static_cast<size_t>(k + 1)];
        const int dim_k = M.dims[static_cast<size_t>(k)];
        std::vector<int> nf;
        for (int c = 0; c < dim_k; ++c) {
            if (cls[static_cast<size_t>(k)][static_cast<size_t>(c)] == 0) {
                nf.push_back(c);
            } else {
                // Columns already claimed by a pair from the previous step
                // are forced to zero: d(d_prev * v) = 0 and the components
                // are torsion free.
                for (int r = 0; r < rows; ++r) {
                    if (!is_zero(R, cur[static_cast<size_t>(k)].at(r, c))) {
                        throw InvariantViolation("claimed column survives into the next differential");
                    }
                }
            }
        }
        Matrix A(R, rows, static_cast<int>(nf.size()));
        for (size_t t = 0; t < nf.size(); ++t)
            for (int r = 0; r < rows; ++r) A.set(r, static_cast<int>(t), cur[static_cast<size_t>(k)].at(r, nf[t]));
        SnfResult s = snf_full(A);

        // Source-side change touches only the still-free coordinates.
        Matrix Vemb = Matrix::identity(R, dim_k);
        Matrix Vinvemb = Matrix::identity(R, dim_k);
        for (size_t r = 0; r < nf.size(); ++r)
            for (size_t c = 0; c < nf.size(); ++c) {
                Vemb.set(nf[r], nf[c], s.V.at(static_cast<int>(r), static_cast<int>(c)));
                Vinvemb.set(nf[r], nf[c], s.Vinv.at(static_cast<int>(r), static_cast<int>(c)));
            }
        cur[static_cast<size_t>(k)] = mul(mul(s.U, cur[static_cast<size_t>(k)]), Vemb);
        T[static_cast<size_t>(k)] = mul(Vinvemb, T[static_cast<size_t>(k)]);
        Tinv[static_cast<size_t>(k)] = mul(Tinv[static_cast<size_t>(k)], Vemb);
        T[static_cast<size_t>(k + 1)] = mul(s.U, T[static_cast<size_t>(k + 1)]);
        Tinv[static_cast<size_t>(k + 1)] = mul(Tinv[static_cast<size_t>(k + 1)], s.Uinv);
        if (k + 2 < len) cur[static_cast<size_t>(k + 1)] = mul(cur[static_cast<size_t>(k + 1)], s.Uinv);

        for (int t = 0; t < s.rank; ++t) {
            Elem d = s.D.at(t, t);
            if (is_unit(R, d)) {
                cls[static_cast<size_t>(k)][static_cast<size_t>(nf[static_cast<size_t>(t)])] = 1;
                cls[static_cast<size_t>(k + 1)][static_cast<size_t>(t)] = 2;
                contr_recs.push_back({k, nf[static_cast<size_t>(t)], t, 0});
            } else {
                cls[static_cast<size_t>(k)][static_cast<size_t>(nf[static_cast<size_t>(t)])] = 3;
                cls[static_cast<size_t>(k + 1)][static_cast<size_t>(t)] = 4;
                tors_recs.push_back({k, nf[static_cast<size_t>(t)], t, d.a});
            }
        }
    }

    // Catalog: sorted elementary pieces first, then the contractibles.
    struct Entry {
        ElementaryPiece piece;  // meaningful only for the first group
        bool contractible;
        Complex part;
        std::vector<std::pair<int, int>> occupies;  // (degree index, coordinate)
    };
    std::vector<Entry> entries;
    for (int k = 0; k < len; ++k) {
        for (int c = 0; c < M.dims[static_cast<size_t>(k)]; ++c) {
            if (cls[static_cast<size_t>(k)][static_cast<size_t>(c)] != 0) continue;
            ElementaryPiece p{ElementaryPiece::Kind::Free, -(M.lo + k), 0};
            entries.push_back({p, false, piece_complex(R, p), {{k, c}}});
        }
    }
    for (const PairRec& rec : tors_recs) {
        ElementaryPiece p{ElementaryPiece::Kind::Torsion, -(M.lo + rec.step) - 1, rec.d};
        entries.push_back({p, false, piece_complex(R, p), {{rec.step, rec.lo_idx}, {rec.step + 1, rec.hi_idx}}});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.piece < b.piece; });
    CanonicalDecomposition out;
    for (const Entry& e : entries) out.pieces.push_back(e.piece);
    for (const PairRec& rec : contr_recs) {
        Matrix one = Matrix::identity(R, 1);
        Complex pair = make_complex(R, M.lo + rec.step, {1, 1}, {one});
        entries.push_back({{}, true, pair, {{rec.step, rec.lo_idx}, {rec.step + 1, rec.hi_idx}}});
        out.contractible_count[M.lo + rec.step] += 1;
    }

    std::vector<Complex> parts;
    for (const Entry& e : entries) parts.push_back(e.part);
    out.decomposed = direct_sum(parts);

    // Slot of each classified coordinate inside the direct sum, following
    // the same degreewise block layout direct_sum uses.
    std::vector<int> next(static_cast<size_t>(len), 0);
    std::vector<Matrix> perm;
    for (int k = 0; k < len; ++k)
        perm.push_back(Matrix::zero(R, M.dims[static_cast<size_t>(k)], M.dims[static_cast<size_t>(k)]));
    for (const Entry& e : entries) {
        for (const auto& [k, idx] : e.occupies) {
            int slot = next[static_cast<size_t>(k)]++;
            perm[static_cast<size_t>(k)].set(slot, idx, elem_one(R));
        }
    }

    std::vector<Matrix> iso_comps, inv_comps;
    for (int k = 0; k < len; ++k) {
        iso_comps.push_back(mul(perm[static_cast<size_t>(k)], T[static_cast<size_t>(k)]));
        inv_comps.push_back(mul(Tinv[static_cast<size_t>(k)], perm[static_cast<size_t>(k)].transpose()));
    }
    out.iso = make_chain_map(M, out.decomposed, M.lo, std::move(iso_comps));
    out.iso_inv = make_chain_map(out.decomposed, M, M.lo, std::move(inv_comps));
    if (compose(out.iso_inv, out.iso) != id_map(M) || compose(out.iso, out.iso_inv) != id_map(out.decomposed)) {
        throw InvariantViolation("decomposition basis change failed to invert");
    }
    return out;
}

namespace {

// Chain-map condition d_N f - f d_M = 0 as one block system; unknowns are
// the components f^i on the support overlap.
struct HomSystem {
    BlockSystem sys;
    std::vector<int> degs;        // degrees with a registered unknown
    std::vector<int> unk_index;   // parallel to degs
};

HomSystem build_chain_system(const Complex& M, const Complex& N) {
    HomSystem hs{BlockSystem(M.ring), {}, {}};
    int a = std::max(M.lo, N.lo);
    int b = std::min(M.hi(), N.hi());
    for (int i = a; i <= b; ++i) {
        if (M.dim(i) == 0 || N.dim(i) == 0) continue;
        hs.unk_index.push_back(hs.sys.add_unknown(N.dim(i), M.dim(i)));
        hs.degs.push_back(i);
    }
    auto unk_at = [&](int i) -> int {
        for (size_t t = 0; t < hs.degs.size(); ++t)
            if (hs.degs[t] == i) return hs.unk_index[t];
        return -1;
    };
    int lo = std::min(M.lo, N.lo) - 1;
    int hi = std::max(M.hi(), N.hi());
    for (int i = lo; i <= hi; ++i) {
        if (N.dim(i + 1) == 0 || M.dim(i) == 0) continue;
        int fi = unk_at(i);
        int fi1 = unk_at(i + 1);
        if (fi < 0 && fi1 < 0) continue;
        int eq = hs.sys.add_equation(N.dim(i + 1), M.dim(i));
        if (fi >= 0) hs.sys.add_term(eq, fi, N.diff(i), Matrix::identity(M.ring, M.dim(i)));
        if (fi1 >= 0)
            hs.sys.add_term(eq, fi1, Matrix::identity(M.ring, N.dim(i + 1)), M.diff(i),
                            neg(M.ring, elem_one(M.ring)));
    }
    return hs;
}

// The map h -> d_N h + h d_M landing in the same vectorization of f.
Matrix homotopy_image_matrix(const Complex& M, const Complex& N, const HomSystem& chain) {
    BlockSystem sys(M.ring);
    std::vector<int> hdegs, hidx;
    int a = std::max(M.lo, N.lo + 1);
    int b = std::min(M.hi(), N.hi() + 1);
    for (int i = a; i <= b; ++i) {
        if (M.dim(i) == 0 || N.dim(i - 1) == 0) continue;
        hidx.push_back(sys.add_unknown(N.dim(i - 1), M.dim(i)));
        hdegs.push_back(i);
    }
    auto h_at = [&](int i) -> int {
        for (size_t t = 0; t < hdegs.size(); ++t)
            if (hdegs[t] == i) return hidx[t];
        return -1;
    };
    // One equation block per registered f^i, in the same order, so the row
    // layout matches the chain system's unknown vector.
    for (int i : chain.degs) {
        int eq = sys.add_equation(N.dim(i), M.dim(i));
        int hi_ = h_at(i);
        int hi1 = h_at(i + 1);
        if (hi_ >= 0) sys.add_term(eq, hi_, N.diff(i - 1), Matrix::identity(M.ring, M.dim(i)));
        if (hi1 >= 0) sys.add_term(eq, hi1, Matrix::identity(M.ring, N.dim(i)), M.diff(i));
    }
    return sys.matrix();
}

}  // namespace

Subquotient hom_subquotient(const Complex& M, const Complex& N) {
    if (!(M.ring == N.ring)) throw RingMismatch("hom group over different rings");
    require_snf_ring(M.ring, "hom group");
    HomSystem chain = build_chain_system(M, N);
    Matrix gens = chain.sys.kernel();
    Matrix rels = homotopy_image_matrix(M, N, chain);
    return Subquotient(gens, rels);
}

FgModule hom_group(const Complex& M, const Complex& N) {
    return hom_subquotient(M, N).module();
}

ChainMap hom_element_to_map(const Complex& M, const Complex& N, const Matrix& column) {
    HomSystem chain = build_chain_system(M, N);
    std::vector<Matrix> parts = chain.sys.unpack(column);
    int a = std::max(M.lo, N.lo);
    int b = std::min(M.hi(), N.hi());
    std::vector<Matrix> comps;
    for (int i = a; i <= b; ++i) {
        bool found = false;
        for (size_t t = 0; t < chain.degs.size(); ++t) {
            if (chain.degs[t] == i) {
                comps.push_back(parts[t]);
                found = true;
                break;
            }
        }
        if (!found) comps.push_back(Matrix::zero(M.ring, N.dim(i), M.dim(i)));
    }
    return make_chain_map(M, N, a, std::move(comps));
}

Matrix hom_element_of_map(const ChainMap& f) {
    HomSystem chain = build_chain_system(f.src, f.tgt);
    Matrix col = Matrix::zero(f.src.ring, chain.sys.unknown_entries(), 1);
    int row = 0;
    for (int i : chain.degs) {
        Matrix c = f.comp(i);
        for (int r = 0; r < c.rows(); ++r)
            for (int cc = 0; cc < c.cols(); ++cc) col.set(row++, 0, c.at(r, cc));
    }
    return col;
}

}  // namespace weightkit
