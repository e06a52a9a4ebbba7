#pragma once

// Dense row-major matrices over a CoeffRing. Zero-extent matrices (0 rows
// or 0 columns) are first-class citizens: complexes routinely have empty
// components and every operation must compose through them.

#include <initializer_list>
#include <vector>

#include "weightkit/ring.hpp"

namespace weightkit {

class Matrix {
public:
    Matrix() : ring_(CoeffRing::integers()), rows_(0), cols_(0) {}
    Matrix(CoeffRing ring, int rows, int cols)
        : ring_(ring), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, elem_zero(ring)) {
        if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix extent");
    }

    static Matrix zero(CoeffRing ring, int rows, int cols) { return Matrix(ring, rows, cols); }
    static Matrix identity(CoeffRing ring, int n);
    // Convenience for tests and fixtures: integer entries, canonicalized.
    static Matrix from_rows(CoeffRing ring, std::initializer_list<std::initializer_list<long long>> rows);

    const CoeffRing& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Elem& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Elem& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, Elem v) { at(r, c) = canon(ring_, v); }

    bool is_zero() const;
    bool is_identity() const;

    Matrix transpose() const;
    Matrix block(int r0, int c0, int h, int w) const;
    void set_block(int r0, int c0, const Matrix& B);

    bool operator==(const Matrix& o) const {
        return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    CoeffRing ring_;
    int rows_, cols_;
    std::vector<Elem> a_;
};

Matrix add(const Matrix& X, const Matrix& Y);
Matrix sub(const Matrix& X, const Matrix& Y);
Matrix neg(const Matrix& X);
Matrix mul(const Matrix& X, const Matrix& Y);
Matrix scalar_mul(const Elem& c, const Matrix& X);

Matrix hstack(const Matrix& X, const Matrix& Y);
Matrix vstack(const Matrix& X, const Matrix& Y);

// Entrywise ring change a+be -> a (dual numbers to prime field).
Matrix reduce_entries_mod_eps(const Matrix& X);

std::string to_string(const Matrix& X);

}  // namespace weightkit
