#include "weightkit/linalg.hpp"

#include <cstdlib>

namespace weightkit {

namespace {

// Quotient minimizing |a - q*b|; shrinks remainders fastest during the
// Euclid-style sweeps below.
long long nearest_quotient(long long a, long long b) {
    long long q = a / b;
    long long r = a - q * b;
    if (std::llabs(r) * 2 > std::llabs(b)) {
        if ((r > 0) == (b > 0)) ++q; else --q;
    }
    return q;
}

// Elementary operations applied simultaneously to D and the transforms.
// Row ops multiply U on the left (and Uinv on the right by the inverse);
// column ops multiply V on the right (Vinv on the left by the inverse).
struct SnfWork {
    CoeffRing R;
    Matrix D, U, Uinv, V, Vinv;
    Elem det_u, det_v;

    explicit SnfWork(const Matrix& A)
        : R(A.ring()), D(A),
          U(Matrix::identity(A.ring(), A.rows())),
          Uinv(Matrix::identity(A.ring(), A.rows())),
          V(Matrix::identity(A.ring(), A.cols())),
          Vinv(Matrix::identity(A.ring(), A.cols())),
          det_u(elem_one(A.ring())), det_v(elem_one(A.ring())) {}

    void row_swap(int i1, int i2) {
        if (i1 == i2) return;
        for (int j = 0; j < D.cols(); ++j) std::swap(D.at(i1, j), D.at(i2, j));
        for (int j = 0; j < U.cols(); ++j) std::swap(U.at(i1, j), U.at(i2, j));
        for (int i = 0; i < Uinv.rows(); ++i) std::swap(Uinv.at(i, i1), Uinv.at(i, i2));
        det_u = neg(R, det_u);
    }
    void col_swap(int j1, int j2) {
        if (j1 == j2) return;
        for (int i = 0; i < D.rows(); ++i) std::swap(D.at(i, j1), D.at(i, j2));
        for (int i = 0; i < V.rows(); ++i) std::swap(V.at(i, j1), V.at(i, j2));
        for (int j = 0; j < Vinv.cols(); ++j) std::swap(Vinv.at(j1, j), Vinv.at(j2, j));
        det_v = neg(R, det_v);
    }
    // row i1 += c * row i2
    void row_add(int i1, int i2, const Elem& c) {
        if (is_zero(R, c)) return;
        for (int j = 0; j < D.cols(); ++j)
            D.at(i1, j) = add(R, D.at(i1, j), mul(R, c, D.at(i2, j)));
        for (int j = 0; j < U.cols(); ++j)
            U.at(i1, j) = add(R, U.at(i1, j), mul(R, c, U.at(i2, j)));
        Elem nc = neg(R, c);
        for (int i = 0; i < Uinv.rows(); ++i)
            Uinv.at(i, i2) = add(R, Uinv.at(i, i2), mul(R, nc, Uinv.at(i, i1)));
    }
    // col j1 += c * col j2
    void col_add(int j1, int j2, const Elem& c) {
        if (is_zero(R, c)) return;
        for (int i = 0; i < D.rows(); ++i)
            D.at(i, j1) = add(R, D.at(i, j1), mul(R, c, D.at(i, j2)));
        for (int i = 0; i < V.rows(); ++i)
            V.at(i, j1) = add(R, V.at(i, j1), mul(R, c, V.at(i, j2)));
        Elem nc = neg(R, c);
        for (int j = 0; j < Vinv.cols(); ++j)
            Vinv.at(j2, j) = add(R, Vinv.at(j2, j), mul(R, nc, Vinv.at(j1, j)));
    }
    // row i *= u (unit)
    void row_scale(int i, const Elem& u) {
        Elem ui = inv(R, u);
        for (int j = 0; j < D.cols(); ++j) D.at(i, j) = mul(R, u, D.at(i, j));
        for (int j = 0; j < U.cols(); ++j) U.at(i, j) = mul(R, u, U.at(i, j));
        for (int k = 0; k < Uinv.rows(); ++k) Uinv.at(k, i) = mul(R, Uinv.at(k, i), ui);
        det_u = mul(R, det_u, u);
    }
    void col_scale(int j, const Elem& u) {
        Elem ui = inv(R, u);
        for (int i = 0; i < D.rows(); ++i) D.at(i, j) = mul(R, u, D.at(i, j));
        for (int i = 0; i < V.rows(); ++i) V.at(i, j) = mul(R, V.at(i, j), u);
        for (int k = 0; k < Vinv.cols(); ++k) Vinv.at(j, k) = mul(R, ui, Vinv.at(j, k));
        det_v = mul(R, det_v, u);
    }
};

// Pivot choice: over Z the smallest nonzero |entry| (ties row-major) keeps
// intermediate growth down; over a field any nonzero entry works, take the
// first row-major.
bool find_pivot(const Matrix& D, const CoeffRing& R, int t, int& pi, int& pj) {
    if (R.tag == RingTag::Integers) {
        long long best = 0;
        bool found = false;
        for (int i = t; i < D.rows(); ++i)
            for (int j = t; j < D.cols(); ++j) {
                long long v = std::llabs(D.at(i, j).a);
                if (v != 0 && (!found || v < best)) {
                    best = v; pi = i; pj = j; found = true;
                    if (v == 1) return true;
                }
            }
        return found;
    }
    for (int i = t; i < D.rows(); ++i)
        for (int j = t; j < D.cols(); ++j)
            if (!is_zero(R, D.at(i, j))) { pi = i; pj = j; return true; }
    return false;
}

}  // namespace

SnfResult snf_full(const Matrix& A) {
    const CoeffRing& R = A.ring();
    if (!R.has_snf()) throw UnsupportedRing("Smith normal form over " + R.name());

    SnfWork w(A);
    const int m = A.rows(), n = A.cols();
    const int steps = std::min(m, n);
    int rank = 0;

    for (int t = 0; t < steps; ++t) {
        int pi, pj;
        if (!find_pivot(w.D, R, t, pi, pj)) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        if (R.is_field()) {
            w.row_scale(t, inv(R, w.D.at(t, t)));
            for (int i = t + 1; i < m; ++i)
                w.row_add(i, t, neg(R, w.D.at(i, t)));
            for (int j = t + 1; j < n; ++j)
                w.col_add(j, t, neg(R, w.D.at(t, j)));
            ++rank;
            continue;
        }

        // Integer case: reduce until the pivot divides its whole row and
        // column, clear them, then enforce divisibility into the remaining
        // submatrix (the classical fix: fold an offending row into row t).
        for (;;) {
            bool dirty = false;
            for (int i = t + 1; i < m; ++i) {
                long long v = w.D.at(i, t).a;
                if (v == 0) continue;
                long long q = nearest_quotient(v, w.D.at(t, t).a);
                w.row_add(i, t, elem_from_int(R, -q));
                if (w.D.at(i, t).a != 0) dirty = true;
            }
            for (int j = t + 1; j < n; ++j) {
                long long v = w.D.at(t, j).a;
                if (v == 0) continue;
                long long q = nearest_quotient(v, w.D.at(t, t).a);
                w.col_add(j, t, elem_from_int(R, -q));
                if (w.D.at(t, j).a != 0) dirty = true;
            }
            if (dirty) {
                // Remainders are strictly smaller than the old pivot; move
                // the smallest entry of the region into pivot position.
                find_pivot(w.D, R, t, pi, pj);
                w.row_swap(t, pi);
                w.col_swap(t, pj);
                continue;
            }
            long long d = w.D.at(t, t).a;
            bool fixed = true;
            for (int i = t + 1; i < m && fixed; ++i)
                for (int j = t + 1; j < n && fixed; ++j)
                    if (w.D.at(i, j).a % d != 0) {
                        w.row_add(t, i, elem_one(R));
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (w.D.at(t, t).a < 0) w.row_scale(t, elem_from_int(R, -1));
        ++rank;
    }

    SnfResult res{std::move(w.U), std::move(w.Uinv), std::move(w.D),
                  std::move(w.V), std::move(w.Vinv), rank, w.det_u, w.det_v};
    return res;
}

std::tuple<Matrix, Matrix, Matrix> snf(const Matrix& A) {
    SnfResult r = snf_full(A);
    return {std::move(r.U), std::move(r.D), std::move(r.V)};
}

namespace {

// Row-echelon solve of A*X = B over a field; free variables set to zero.
std::optional<Matrix> field_solve(const Matrix& A, const Matrix& B) {
    const CoeffRing& R = A.ring();
    Matrix W = hstack(A, B);
    const int m = W.rows(), n = A.cols(), k = B.cols();
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int sel = -1;
        for (int i = row; i < m; ++i)
            if (!is_zero(R, W.at(i, col))) { sel = i; break; }
        if (sel < 0) continue;
        for (int j = 0; j < W.cols(); ++j) std::swap(W.at(row, j), W.at(sel, j));
        Elem piv_inv = inv(R, W.at(row, col));
        for (int j = col; j < W.cols(); ++j) W.at(row, j) = mul(R, piv_inv, W.at(row, j));
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            Elem c = W.at(i, col);
            if (is_zero(R, c)) continue;
            Elem nc = neg(R, c);
            for (int j = col; j < W.cols(); ++j)
                W.at(i, j) = add(R, W.at(i, j), mul(R, nc, W.at(row, j)));
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int i = row; i < m; ++i)
        for (int j = 0; j < k; ++j)
            if (!is_zero(R, W.at(i, n + j))) return std::nullopt;
    Matrix X(R, n, k);
    for (int r2 = 0; r2 < static_cast<int>(pivot_col.size()); ++r2)
        for (int j = 0; j < k; ++j) X.at(pivot_col[r2], j) = W.at(r2, n + j);
    return X;
}

Matrix field_kernel(const Matrix& A) {
    // SNF over a field degenerates to echelon form; the zero-diagonal
    // columns of V are already a kernel basis, so reuse that path.
    SnfResult s = snf_full(A);
    Matrix K(A.ring(), A.cols(), A.cols() - s.rank);
    for (int j = s.rank; j < A.cols(); ++j)
        for (int i = 0; i < A.cols(); ++i) K.at(i, j - s.rank) = s.V.at(i, j);
    return K;
}

// Dual numbers: A = A0 + e*A1 acting on x = x0 + e*x1 becomes the
// block-triangular prime-field system [[A0,0],[A1,A0]].
Matrix eps_block(const Matrix& A) {
    CoeffRing F = CoeffRing::prime_field(A.ring().p);
    const int m = A.rows(), n = A.cols();
    Matrix W(F, 2 * m, 2 * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            Elem v = A.at(i, j);
            W.at(i, j) = Elem{v.a, 0};
            W.at(m + i, n + j) = Elem{v.a, 0};
            W.at(m + i, j) = Elem{v.b, 0};
        }
    return W;
}

Matrix eps_stack_rhs(const Matrix& B) {
    CoeffRing F = CoeffRing::prime_field(B.ring().p);
    Matrix W(F, 2 * B.rows(), B.cols());
    for (int i = 0; i < B.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) {
            Elem v = B.at(i, j);
            W.at(i, j) = Elem{v.a, 0};
            W.at(B.rows() + i, j) = Elem{v.b, 0};
        }
    return W;
}

Matrix eps_recombine(const Matrix& X2, const CoeffRing& Reps, int n) {
    Matrix X(Reps, n, X2.cols());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < X2.cols(); ++j)
            X.at(i, j) = Elem{X2.at(i, j).a, X2.at(n + i, j).a};
    return X;
}

}  // namespace

std::optional<Matrix> solve_linear(const Matrix& A, const Matrix& B) {
    if (A.ring() != B.ring()) throw RingMismatch("solve_linear ring mismatch");
    if (A.rows() != B.rows()) throw DimensionMismatch("solve_linear row mismatch");
    const CoeffRing& R = A.ring();

    if (R.tag == RingTag::DualNumbers) {
        auto X2 = field_solve(eps_block(A), eps_stack_rhs(B));
        if (!X2) return std::nullopt;
        return eps_recombine(*X2, R, A.cols());
    }
    if (R.is_field()) return field_solve(A, B);

    // Over Z: with U*A*V = D, substituting x = V*y turns A*x = b into
    // D*y = U*b, solvable iff each d_i divides (U*b)_i and the rows beyond
    // the rank have zero right-hand side.
    SnfResult s = snf_full(A);
    Matrix C = mul(s.U, B);
    Matrix Y(R, A.cols(), B.cols());
    for (int j = 0; j < B.cols(); ++j) {
        for (int i = 0; i < C.rows(); ++i) {
            Elem rhs = C.at(i, j);
            if (i < s.rank) {
                Elem d = s.D.at(i, i);
                if (!divides(R, d, rhs)) return std::nullopt;
                Y.at(i, j) = exact_div(R, rhs, d);
            } else if (!is_zero(R, rhs)) {
                return std::nullopt;
            }
        }
    }
    return mul(s.V, Y);
}

Matrix kernel_basis(const Matrix& A) {
    const CoeffRing& R = A.ring();
    if (R.tag == RingTag::DualNumbers) {
        Matrix K2 = field_kernel(eps_block(A));
        return eps_recombine(K2, R, A.cols());
    }
    if (R.is_field()) return field_kernel(A);
    SnfResult s = snf_full(A);
    Matrix K(R, A.cols(), A.cols() - s.rank);
    for (int j = s.rank; j < A.cols(); ++j)
        for (int i = 0; i < A.cols(); ++i) K.at(i, j - s.rank) = s.V.at(i, j);
    return K;
}

Matrix column_space_basis(const Matrix& A) {
    const CoeffRing& R = A.ring();
    if (!R.has_snf()) throw UnsupportedRing("column lattice over " + R.name());
    SnfResult s = snf_full(A);
    // col(A) = col(Uinv * D); the nonzero columns d_i * Uinv[:,i] form a basis.
    Matrix B(R, A.rows(), s.rank);
    for (int j = 0; j < s.rank; ++j) {
        Elem d = s.D.at(j, j);
        for (int i = 0; i < A.rows(); ++i) B.at(i, j) = mul(R, d, s.Uinv.at(i, j));
    }
    return B;
}

Elem det(const Matrix& A) {
    const CoeffRing& R = A.ring();
    if (A.rows() != A.cols()) throw DimensionMismatch("det of non-square matrix");
    if (!R.has_snf()) throw UnsupportedRing("det over " + R.name());
    if (A.rows() == 0) return elem_one(R);
    // det(A) = det(Uinv) * det(D) * det(Vinv) = det(D) / (det_u * det_v)
    SnfResult s = snf_full(A);
    Elem d = elem_one(R);
    for (int i = 0; i < A.rows(); ++i) d = mul(R, d, s.D.at(i, i));
    return mul(R, d, inv(R, mul(R, s.det_u, s.det_v)));
}

bool is_invertible(const Matrix& A) {
    if (A.rows() != A.cols()) return false;
    const CoeffRing& R = A.ring();
    if (R.tag == RingTag::DualNumbers) {
        // invertible iff the e-free part is invertible over F_p
        Matrix A0 = reduce_entries_mod_eps(A);
        return is_invertible(A0);
    }
    return is_unit(R, det(A));
}

int BlockSystem::add_unknown(int rows, int cols) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative unknown extent");
    unknowns_.push_back({rows, cols, unk_total_});
    unk_total_ += rows * cols;
    return static_cast<int>(unknowns_.size()) - 1;
}

int BlockSystem::add_equation(int rows, int cols) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative equation extent");
    equations_.push_back({rows, cols, eq_total_});
    eq_total_ += rows * cols;
    return static_cast<int>(equations_.size()) - 1;
}

void BlockSystem::add_term(int eq, int unk, Matrix A, Matrix B) {
    add_term(eq, unk, std::move(A), std::move(B), elem_one(ring_));
}

void BlockSystem::add_term(int eq, int unk, Matrix A, Matrix B, Elem scale) {
    const Shape& e = equations_.at(static_cast<size_t>(eq));
    const Shape& u = unknowns_.at(static_cast<size_t>(unk));
    if (!(A.ring() == ring_) || !(B.ring() == ring_)) throw RingMismatch("block system term ring");
    if (A.rows() != e.rows || A.cols() != u.rows || B.rows() != u.cols || B.cols() != e.cols) {
        throw DimensionMismatch("block system term shape");
    }
    terms_.push_back({eq, unk, std::move(A), std::move(B), scale});
}

void BlockSystem::set_rhs(int eq, const Matrix& R) {
    const Shape& e = equations_.at(static_cast<size_t>(eq));
    if (R.rows() != e.rows || R.cols() != e.cols) throw DimensionMismatch("block system rhs shape");
    if (!(R.ring() == ring_)) throw RingMismatch("block system rhs ring");
    rhs_.emplace_back(eq, R);
}

Matrix BlockSystem::matrix() const {
    Matrix C = Matrix::zero(ring_, eq_total_, unk_total_);
    for (const Term& t : terms_) {
        const Shape& e = equations_[static_cast<size_t>(t.eq)];
        const Shape& u = unknowns_[static_cast<size_t>(t.unk)];
        // (A * X * B)[i][j] = sum_{r,c} A[i][r] * B[c][j] * X[r][c]
        for (int i = 0; i < e.rows; ++i) {
            for (int r = 0; r < u.rows; ++r) {
                Elem air = mul(ring_, t.scale, t.A.at(i, r));
                if (is_zero(ring_, air)) continue;
                for (int c = 0; c < u.cols; ++c) {
                    for (int j = 0; j < e.cols; ++j) {
                        Elem coeff = mul(ring_, air, t.B.at(c, j));
                        if (is_zero(ring_, coeff)) continue;
                        int row = e.offset + i * e.cols + j;
                        int col = u.offset + r * u.cols + c;
                        C.set(row, col, add(ring_, C.at(row, col), coeff));
                    }
                }
            }
        }
    }
    return C;
}

Matrix BlockSystem::rhs_vector() const {
    Matrix b = Matrix::zero(ring_, eq_total_, 1);
    for (const auto& [eq, R] : rhs_) {
        const Shape& e = equations_[static_cast<size_t>(eq)];
        for (int i = 0; i < e.rows; ++i)
            for (int j = 0; j < e.cols; ++j) {
                int row = e.offset + i * e.cols + j;
                b.set(row, 0, add(ring_, b.at(row, 0), R.at(i, j)));
            }
    }
    return b;
}

std::optional<std::vector<Matrix>> BlockSystem::solve() const {
    auto x = solve_linear(matrix(), rhs_vector());
    if (!x) return std::nullopt;
    return unpack(*x);
}

Matrix BlockSystem::kernel() const { return kernel_basis(matrix()); }

std::vector<Matrix> BlockSystem::unpack(const Matrix& column) const {
    if (column.rows() != unk_total_ || column.cols() != 1) {
        throw DimensionMismatch("block system unpack shape");
    }
    std::vector<Matrix> out;
    for (const Shape& u : unknowns_) {
        Matrix X = Matrix::zero(ring_, u.rows, u.cols);
        for (int r = 0; r < u.rows; ++r)
            for (int c = 0; c < u.cols; ++c) X.set(r, c, column.at(u.offset + r * u.cols + c, 0));
        out.push_back(std::move(X));
    }
    return out;
}

}  // namespace weightkit
