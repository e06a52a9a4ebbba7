#pragma once

// Exact linear algebra over the coefficient rings.
//
// Smith normal form is the workhorse: U*A*V = D with U, V invertible over
// the ring and D diagonal with d1 | d2 | ... (positive over Z, 1 over
// fields). Solving, kernels and column lattices are all derived from it
// over Z; fields use straight Gaussian elimination; dual-number systems
// are expanded once into a block-triangular prime-field system via
// x = x0 + e*x1.

#include <optional>
#include <tuple>

#include "weightkit/matrix.hpp"

namespace weightkit {

struct SnfResult {
    Matrix U, Uinv;  // rows transform, U * A * V = D
    Matrix D;
    Matrix V, Vinv;  // columns transform
    int rank = 0;    // number of nonzero diagonal entries
    Elem det_u, det_v;  // accumulated from the elementary operations
};

// Requires a ring with SNF (Z, Q, F_p); throws UnsupportedRing otherwise.
SnfResult snf_full(const Matrix& A);

// (U, D, V) with U*A*V = D.
std::tuple<Matrix, Matrix, Matrix> snf(const Matrix& A);

// Particular solution of A*X = B (B may have several columns), or nullopt
// if the system is unsolvable over the ring. Defined for all four rings.
std::optional<Matrix> solve_linear(const Matrix& A, const Matrix& B);

// Columns generate {x : A*x = 0}. Over Z this is a basis of the full
// (saturated) kernel lattice; over fields a basis; over dual numbers an
// F_p-basis of the solution space (enough to enumerate / sample it).
Matrix kernel_basis(const Matrix& A);

// Basis of the column lattice (Z) / column space (fields) of A.
Matrix column_space_basis(const Matrix& A);

// Determinant; square matrices over Z, Q, F_p.
Elem det(const Matrix& A);

// True when A has a two-sided inverse over its ring (unit determinant).
bool is_invertible(const Matrix& A);

// Assembles linear systems whose unknowns are matrices and whose equations
// are sums of terms A * X_k * B. Entries are vectorized row-major, unknown
// blocks in registration order. This is how every "find a homotopy /
// chain map / square filler" question in the library becomes one
// solve_linear call.
class BlockSystem {
public:
    explicit BlockSystem(CoeffRing ring) : ring_(ring) {}

    int add_unknown(int rows, int cols);
    int add_equation(int rows, int cols);
    // Contributes A * X_unk * B (times scale) to the given equation block.
    void add_term(int eq, int unk, Matrix A, Matrix B);
    void add_term(int eq, int unk, Matrix A, Matrix B, Elem scale);
    void set_rhs(int eq, const Matrix& R);

    Matrix matrix() const;  // equation entries x unknown entries
    Matrix rhs_vector() const;
    int unknown_entries() const { return unk_total_; }

    // Solve for all unknowns at once; nullopt if inconsistent.
    std::optional<std::vector<Matrix>> solve() const;
    // Kernel of the homogeneous system, as columns of stacked unknowns.
    Matrix kernel() const;
    // Reshape one stacked column back into the unknown matrices.
    std::vector<Matrix> unpack(const Matrix& column) const;

private:
    struct Shape {
        int rows, cols, offset;
    };
    struct Term {
        int eq, unk;
        Matrix A, B;
        Elem scale;
    };
    CoeffRing ring_;
    std::vector<Shape> unknowns_, equations_;
    std::vector<Term> terms_;
    std::vector<std::pair<int, Matrix>> rhs_;
    int unk_total_ = 0, eq_total_ = 0;
};

}  // namespace weightkit
