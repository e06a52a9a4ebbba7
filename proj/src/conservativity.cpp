#include "weightkit/conservativity.hpp"

namespace weightkit {

Complex reduce_mod_eps(const Complex& M) {
    if (M.ring.tag != RingTag::DualNumbers)
        throw UnsupportedRing("reduction needs dual-number coefficients");
    CoeffRing F = CoeffRing::prime_field(M.ring.p);
    std::vector<Matrix> diffs;
    diffs.reserve(M.diffs.size());
    for (const Matrix& d : M.diffs) diffs.push_back(reduce_entries_mod_eps(d));
    return make_complex(F, M.lo, M.dims, std::move(diffs));
}

ChainMap reduce_mod_eps(const ChainMap& f) {
    Complex src = reduce_mod_eps(f.src);
    Complex tgt = reduce_mod_eps(f.tgt);
    std::vector<Matrix> comps;
    comps.reserve(f.comps.size());
    for (const Matrix& c : f.comps) comps.push_back(reduce_entries_mod_eps(c));
    return make_chain_map(std::move(src), std::move(tgt), f.clo, std::move(comps));
}

ConservativityReport conservativity_check(const Complex& M, int m, int n) {
    if (m > n) throw InvalidRange("weight range has m > n");
    Complex F = reduce_mod_eps(M);
    ConservativityReport rep;
    rep.m = m;
    rep.n = n;
    rep.reduced_witness = without_weights(F, m, n);
    rep.original_witness = without_weights(M, m, n);
    rep.reduced_without = rep.reduced_witness.has_value();
    rep.original_without = rep.original_witness.has_value();
    rep.vacuous = !rep.reduced_without;
    if (rep.reduced_without && !rep.original_without)
        throw InvariantViolation("reduction avoids a weight range the complex keeps");
    return rep;
}

}  // namespace weightkit
