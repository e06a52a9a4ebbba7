#include "weightkit/complex.hpp"

#include <algorithm>

#include "weightkit/errors.hpp"

namespace weightkit {

Matrix Complex::diff(int i) const {
    if (i >= lo && i < hi()) return diffs[static_cast<size_t>(i - lo)];
    return Matrix::zero(ring, dim(i + 1), dim(i));
}

Complex make_complex(CoeffRing ring, int lo, std::vector<int> dims, std::vector<Matrix> diffs) {
    const size_t expected = dims.size() <= 1 ? 0 : dims.size() - 1;
    if (diffs.size() != expected) {
        throw DimensionMismatch("complex needs one differential per adjacent degree pair");
    }
    for (size_t k = 0; k < dims.size(); ++k) {
        if (dims[k] < 0) throw DimensionMismatch("negative component rank");
    }
    for (size_t k = 0; k < diffs.size(); ++k) {
        if (!(diffs[k].ring() == ring)) throw RingMismatch("differential over a different ring");
        if (diffs[k].rows() != dims[k + 1] || diffs[k].cols() != dims[k]) {
            throw DimensionMismatch("differential shape does not match component ranks");
        }
    }
    for (size_t k = 0; k + 1 < diffs.size(); ++k) {
        if (!mul(diffs[k + 1], diffs[k]).is_zero()) {
            throw InvariantViolation("d.d != 0");
        }
    }
    // Trim zero-width boundary degrees so support is canonical.
    while (!dims.empty() && dims.front() == 0) {
        dims.erase(dims.begin());
        if (!diffs.empty()) diffs.erase(diffs.begin());
        ++lo;
    }
    while (!dims.empty() && dims.back() == 0) {
        dims.pop_back();
        if (!diffs.empty()) diffs.pop_back();
    }
    if (dims.empty()) return Complex{ring, 0, {}, {}};
    return Complex{ring, lo, std::move(dims), std::move(diffs)};
}

Complex zero_complex(CoeffRing ring) { return Complex{ring, 0, {}, {}}; }

Complex ring_in_degree(CoeffRing ring, int degree) {
    return Complex{ring, degree, {1}, {}};
}

Matrix ChainMap::comp(int i) const {
    int k = i - clo;
    if (k >= 0 && k < static_cast<int>(comps.size())) return comps[static_cast<size_t>(k)];
    return Matrix::zero(src.ring, tgt.dim(i), src.dim(i));
}

bool ChainMap::is_zero_map() const {
    for (const Matrix& m : comps)
        if (!m.is_zero()) return false;
    return true;
}

ChainMap make_chain_map(Complex src, Complex tgt, int clo, std::vector<Matrix> comps) {
    if (!(src.ring == tgt.ring)) throw RingMismatch("chain map between different rings");
    for (size_t k = 0; k < comps.size(); ++k) {
        int i = clo + static_cast<int>(k);
        if (!(comps[k].ring() == src.ring)) throw RingMismatch("chain map component ring");
        if (comps[k].rows() != tgt.dim(i) || comps[k].cols() != src.dim(i)) {
            throw DimensionMismatch("chain map component shape in degree " + std::to_string(i));
        }
    }
    // Canonical storage: exactly the overlap of the two supports.
    ChainMap f;
    f.src = std::move(src);
    f.tgt = std::move(tgt);
    int a = std::max(f.src.lo, f.tgt.lo);
    int b = std::min(f.src.hi(), f.tgt.hi());
    f.clo = a;
    for (int i = a; i <= b; ++i) {
        int k = i - clo;
        if (k >= 0 && k < static_cast<int>(comps.size())) {
            f.comps.push_back(comps[static_cast<size_t>(k)]);
        } else {
            f.comps.push_back(Matrix::zero(f.src.ring, f.tgt.dim(i), f.src.dim(i)));
        }
    }
    for (int i = std::min(f.src.lo, f.tgt.lo) - 1; i <= std::max(f.src.hi(), f.tgt.hi()); ++i) {
        if (mul(f.tgt.diff(i), f.comp(i)) != mul(f.comp(i + 1), f.src.diff(i))) {
            throw InvariantViolation("chain map squares do not commute in degree " + std::to_string(i));
        }
    }
    return f;
}

ChainMap id_map(const Complex& M) {
    std::vector<Matrix> comps;
    for (int i = M.lo; i <= M.hi(); ++i) comps.push_back(Matrix::identity(M.ring, M.dim(i)));
    return make_chain_map(M, M, M.lo, std::move(comps));
}

ChainMap zero_map(const Complex& src, const Complex& tgt) {
    return make_chain_map(src, tgt, 0, {});
}

namespace {

void require_parallel(const ChainMap& f, const ChainMap& g) {
    if (f.src != g.src || f.tgt != g.tgt) {
        throw SourceTargetMismatch("maps are not parallel");
    }
}

}  // namespace

ChainMap add(const ChainMap& f, const ChainMap& g) {
    require_parallel(f, g);
    std::vector<Matrix> comps;
    for (size_t k = 0; k < f.comps.size(); ++k) comps.push_back(add(f.comps[k], g.comps[k]));
    return make_chain_map(f.src, f.tgt, f.clo, std::move(comps));
}

ChainMap sub(const ChainMap& f, const ChainMap& g) { return add(f, neg(g)); }

ChainMap neg(const ChainMap& f) {
    std::vector<Matrix> comps;
    for (const Matrix& m : f.comps) comps.push_back(neg(m));
    return make_chain_map(f.src, f.tgt, f.clo, std::move(comps));
}

ChainMap scalar_mul(const Elem& c, const ChainMap& f) {
    std::vector<Matrix> comps;
    for (const Matrix& m : f.comps) comps.push_back(scalar_mul(c, m));
    return make_chain_map(f.src, f.tgt, f.clo, std::move(comps));
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (f.tgt != g.src) throw SourceTargetMismatch("composing maps with mismatched middle");
    int a = std::max(f.src.lo, g.tgt.lo);
    int b = std::min(f.src.hi(), g.tgt.hi());
    std::vector<Matrix> comps;
    for (int i = a; i <= b; ++i) comps.push_back(mul(g.comp(i), f.comp(i)));
    return make_chain_map(f.src, g.tgt, a, std::move(comps));
}

Complex shift(const Complex& M, int n) {
    if (M.is_zero_complex()) return M;
    std::vector<Matrix> diffs = M.diffs;
    if (n % 2 != 0) {
        for (Matrix& d : diffs) d = neg(d);
    }
    return Complex{M.ring, M.lo - n, M.dims, std::move(diffs)};
}

ChainMap shift_map(const ChainMap& f, int n) {
    return make_chain_map(shift(f.src, n), shift(f.tgt, n), f.clo - n, f.comps);
}

ConeTriangle cone(const ChainMap& f) {
    const Complex& X = f.src;
    const Complex& Y = f.tgt;
    const CoeffRing& R = X.ring;
    if (X.is_zero_complex() && Y.is_zero_complex()) {
        Complex C = zero_complex(R);
        return ConeTriangle{C, zero_map(Y, C), zero_map(C, shift(X, 1))};
    }
    int lo = std::min(Y.is_zero_complex() ? X.lo - 1 : Y.lo, X.is_zero_complex() ? Y.lo : X.lo - 1);
    int hi = std::max(Y.is_zero_complex() ? X.hi() - 1 : Y.hi(), X.is_zero_complex() ? Y.hi() : X.hi() - 1);
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int i = lo; i <= hi; ++i) dims.push_back(Y.dim(i) + X.dim(i + 1));
    for (int i = lo; i < hi; ++i) {
        Matrix d = Matrix::zero(R, Y.dim(i + 1) + X.dim(i + 2), Y.dim(i) + X.dim(i + 1));
        d.set_block(0, 0, Y.diff(i));
        d.set_block(0, Y.dim(i), f.comp(i + 1));
        d.set_block(Y.dim(i + 1), Y.dim(i), neg(X.diff(i + 1)));
        diffs.push_back(std::move(d));
    }
    Complex C = make_complex(R, lo, std::move(dims), std::move(diffs));

    std::vector<Matrix> incl, proj;
    for (int i = lo; i <= hi; ++i) {
        Matrix in = Matrix::zero(R, Y.dim(i) + X.dim(i + 1), Y.dim(i));
        in.set_block(0, 0, Matrix::identity(R, Y.dim(i)));
        incl.push_back(std::move(in));
        Matrix pr = Matrix::zero(R, X.dim(i + 1), Y.dim(i) + X.dim(i + 1));
        pr.set_block(0, Y.dim(i), Matrix::identity(R, X.dim(i + 1)));
        proj.push_back(std::move(pr));
    }
    return ConeTriangle{C, make_chain_map(Y, C, lo, std::move(incl)),
                        make_chain_map(C, shift(X, 1), lo, std::move(proj))};
}

Complex direct_sum(const std::vector<Complex>& Ms) {
    if (Ms.empty()) return zero_complex(CoeffRing::integers());
    const CoeffRing& R = Ms[0].ring;
    int lo = 0, hi = -1;
    bool seen = false;
    for (const Complex& M : Ms) {
        if (!(M.ring == R)) throw RingMismatch("direct sum over different rings");
        if (M.is_zero_complex()) continue;
        if (!seen) {
            lo = M.lo;
            hi = M.hi();
            seen = true;
        } else {
            lo = std::min(lo, M.lo);
            hi = std::max(hi, M.hi());
        }
    }
    if (!seen) return zero_complex(R);
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int i = lo; i <= hi; ++i) {
        int d = 0;
        for (const Complex& M : Ms) d += M.dim(i);
        dims.push_back(d);
    }
    for (int i = lo; i < hi; ++i) {
        int rows = 0, cols = 0;
        for (const Complex& M : Ms) {
            rows += M.dim(i + 1);
            cols += M.dim(i);
        }
        Matrix d = Matrix::zero(R, rows, cols);
        int r0 = 0, c0 = 0;
        for (const Complex& M : Ms) {
            d.set_block(r0, c0, M.diff(i));
            r0 += M.dim(i + 1);
            c0 += M.dim(i);
        }
        diffs.push_back(std::move(d));
    }
    return make_complex(R, lo, std::move(dims), std::move(diffs));
}

ChainMap summand_inclusion(const std::vector<Complex>& Ms, size_t s) {
    if (s >= Ms.size()) throw InvalidRange("summand index");
    Complex sum = direct_sum(Ms);
    const Complex& M = Ms[s];
    std::vector<Matrix> comps;
    for (int i = sum.lo; i <= sum.hi(); ++i) {
        Matrix c = Matrix::zero(sum.ring, sum.dim(i), M.dim(i));
        int r0 = 0;
        for (size_t t = 0; t < s; ++t) r0 += Ms[t].dim(i);
        c.set_block(r0, 0, Matrix::identity(sum.ring, M.dim(i)));
        comps.push_back(std::move(c));
    }
    return make_chain_map(M, sum, sum.lo, std::move(comps));
}

ChainMap summand_projection(const std::vector<Complex>& Ms, size_t s) {
    if (s >= Ms.size()) throw InvalidRange("summand index");
    Complex sum = direct_sum(Ms);
    const Complex& M = Ms[s];
    std::vector<Matrix> comps;
    for (int i = sum.lo; i <= sum.hi(); ++i) {
        Matrix c = Matrix::zero(sum.ring, M.dim(i), sum.dim(i));
        int c0 = 0;
        for (size_t t = 0; t < s; ++t) c0 += Ms[t].dim(i);
        c.set_block(0, c0, Matrix::identity(sum.ring, M.dim(i)));
        comps.push_back(std::move(c));
    }
    return make_chain_map(sum, M, sum.lo, std::move(comps));
}

ChainMap direct_sum_map(const std::vector<ChainMap>& fs) {
    if (fs.empty()) throw InvalidRange("direct sum of no maps");
    std::vector<Complex> srcs, tgts;
    for (const ChainMap& f : fs) {
        srcs.push_back(f.src);
        tgts.push_back(f.tgt);
    }
    Complex S = direct_sum(srcs);
    Complex T = direct_sum(tgts);
    std::vector<Matrix> comps;
    int a = std::max(S.lo, T.lo);
    int b = std::min(S.hi(), T.hi());
    for (int i = a; i <= b; ++i) {
        Matrix c = Matrix::zero(S.ring, T.dim(i), S.dim(i));
        int r0 = 0, c0 = 0;
        for (const ChainMap& f : fs) {
            c.set_block(r0, c0, f.comp(i));
            r0 += f.tgt.dim(i);
            c0 += f.src.dim(i);
        }
        comps.push_back(std::move(c));
    }
    return make_chain_map(S, T, a, std::move(comps));
}

long long euler_char(const Complex& M) {
    long long chi = 0;
    for (int i = M.lo; i <= M.hi(); ++i) {
        long long d = M.dim(i);
        chi += (i % 2 == 0) ? d : -d;
    }
    return chi;
}

}  // namespace weightkit
