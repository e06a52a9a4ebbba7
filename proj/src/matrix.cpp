#include "weightkit/matrix.hpp"

#include <sstream>

namespace weightkit {

namespace {

void check_same_ring(const Matrix& X, const Matrix& Y, const char* op) {
    if (X.ring() != Y.ring())
        throw RingMismatch(std::string(op) + ": operands over " + X.ring().name() + " and " + Y.ring().name());
}

}  // namespace

Matrix Matrix::identity(CoeffRing ring, int n) {
    Matrix I(ring, n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = elem_one(ring);
    return I;
}

Matrix Matrix::from_rows(CoeffRing ring, std::initializer_list<std::initializer_list<long long>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    Matrix M(ring, r, c);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c) throw DimensionMismatch("ragged initializer");
        int j = 0;
        for (long long v : row) M.at(i, j++) = elem_from_int(ring, v);
        ++i;
    }
    return M;
}

bool Matrix::is_zero() const {
    for (const Elem& e : a_)
        if (!weightkit::is_zero(ring_, e)) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? elem_one(ring_) : elem_zero(ring_))) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix T(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) T.at(j, i) = at(i, j);
    return T;
}

Matrix Matrix::block(int r0, int c0, int h, int w) const {
    if (r0 < 0 || c0 < 0 || r0 + h > rows_ || c0 + w > cols_)
        throw DimensionMismatch("block out of range");
    Matrix B(ring_, h, w);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) B.at(i, j) = at(r0 + i, c0 + j);
    return B;
}

void Matrix::set_block(int r0, int c0, const Matrix& B) {
    if (B.ring() != ring_) throw RingMismatch("set_block ring mismatch");
    if (r0 < 0 || c0 < 0 || r0 + B.rows() > rows_ || c0 + B.cols() > cols_)
        throw DimensionMismatch("set_block out of range");
    for (int i = 0; i < B.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) at(r0 + i, c0 + j) = B.at(i, j);
}

Matrix add(const Matrix& X, const Matrix& Y) {
    check_same_ring(X, Y, "add");
    if (X.rows() != Y.rows() || X.cols() != Y.cols()) throw DimensionMismatch("add shape mismatch");
    Matrix Z(X.ring(), X.rows(), X.cols());
    for (int i = 0; i < X.rows(); ++i)
        for (int j = 0; j < X.cols(); ++j) Z.at(i, j) = add(X.ring(), X.at(i, j), Y.at(i, j));
    return Z;
}

Matrix sub(const Matrix& X, const Matrix& Y) {
    check_same_ring(X, Y, "sub");
    if (X.rows() != Y.rows() || X.cols() != Y.cols()) throw DimensionMismatch("sub shape mismatch");
    Matrix Z(X.ring(), X.rows(), X.cols());
    for (int i = 0; i < X.rows(); ++i)
        for (int j = 0; j < X.cols(); ++j) Z.at(i, j) = sub(X.ring(), X.at(i, j), Y.at(i, j));
    return Z;
}

Matrix neg(const Matrix& X) {
    Matrix Z(X.ring(), X.rows(), X.cols());
    for (int i = 0; i < X.rows(); ++i)
        for (int j = 0; j < X.cols(); ++j) Z.at(i, j) = neg(X.ring(), X.at(i, j));
    return Z;
}

Matrix mul(const Matrix& X, const Matrix& Y) {
    check_same_ring(X, Y, "mul");
    if (X.cols() != Y.rows())
        throw DimensionMismatch("mul shape mismatch: " + std::to_string(X.cols()) + " vs " + std::to_string(Y.rows()));
    const CoeffRing& R = X.ring();
    Matrix Z(R, X.rows(), Y.cols());
    for (int i = 0; i < X.rows(); ++i)
        for (int k = 0; k < X.cols(); ++k) {
            const Elem& x = X.at(i, k);
            if (is_zero(R, x)) continue;
            for (int j = 0; j < Y.cols(); ++j) {
                const Elem& y = Y.at(k, j);
                if (is_zero(R, y)) continue;
                Z.at(i, j) = add(R, Z.at(i, j), mul(R, x, y));
            }
        }
    return Z;
}

Matrix scalar_mul(const Elem& c, const Matrix& X) {
    Matrix Z(X.ring(), X.rows(), X.cols());
    for (int i = 0; i < X.rows(); ++i)
        for (int j = 0; j < X.cols(); ++j) Z.at(i, j) = mul(X.ring(), c, X.at(i, j));
    return Z;
}

Matrix hstack(const Matrix& X, const Matrix& Y) {
    check_same_ring(X, Y, "hstack");
    if (X.rows() != Y.rows()) throw DimensionMismatch("hstack row mismatch");
    Matrix Z(X.ring(), X.rows(), X.cols() + Y.cols());
    Z.set_block(0, 0, X);
    Z.set_block(0, X.cols(), Y);
    return Z;
}

Matrix vstack(const Matrix& X, const Matrix& Y) {
    check_same_ring(X, Y, "vstack");
    if (X.cols() != Y.cols()) throw DimensionMismatch("vstack col mismatch");
    Matrix Z(X.ring(), X.rows() + Y.rows(), X.cols());
    Z.set_block(0, 0, X);
    Z.set_block(X.rows(), 0, Y);
    return Z;
}

Matrix reduce_entries_mod_eps(const Matrix& X) {
    if (X.ring().tag != RingTag::DualNumbers)
        throw UnsupportedRing("reduce_entries_mod_eps expects dual numbers");
    CoeffRing F = CoeffRing::prime_field(X.ring().p);
    Matrix Z(F, X.rows(), X.cols());
    for (int i = 0; i < X.rows(); ++i)
        for (int j = 0; j < X.cols(); ++j) Z.at(i, j) = Elem{X.at(i, j).a, 0};
    return Z;
}

std::string to_string(const Matrix& X) {
    std::ostringstream os;
    os << "[" << X.rows() << "x" << X.cols() << " over " << X.ring().name() << "]";
    for (int i = 0; i < X.rows(); ++i) {
        os << "\n  ";
        for (int j = 0; j < X.cols(); ++j) {
            if (j) os << " ";
            os << elem_to_string(X.ring(), X.at(i, j));
        }
    }
    return os.str();
}

}  // namespace weightkit
