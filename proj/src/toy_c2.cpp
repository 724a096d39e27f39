#include "rigidcr/toy_c2.hpp"

#include <random>

namespace rcr {

namespace {

TruncSeries dz(const TruncSeries& s, int k) {
    TruncSeries r = s;
    for (int i = 0; i < k; ++i) r = derive(r, Z);
    return r;
}
TruncSeries dzb(const TruncSeries& s, int k) {
    TruncSeries r = s;
    for (int i = 0; i < k; ++i) r = derive(r, ZB);
    return r;
}

mpq_class small_rat(std::mt19937_64& rng, bool nonzero) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    mpq_class q;
    do {
        q = mpq_class(num(rng), den(rng));
        q.canonicalize();
    } while (nonzero && sgn(q) == 0);
    return q;
}

}  // namespace

TruncSeries R_numerator(const Hypersurface& h) {
    const TruncSeries F11 = dzb(dz(h.F, 1), 1);
    return dzb(dz(h.F, 2), 2) * F11 - dzb(dz(h.F, 2), 1) * dzb(dz(h.F, 1), 2);
}

TruncSeries R_field(const Hypersurface& h) {
    const TruncSeries F11 = dzb(dz(h.F, 1), 1);
    return divide_by_unit(R_numerator(h), F11 * F11);
}

C2Prenormal prenormalize_c2(const Hypersurface& h) {
    if (h.ambient_dim != 2) throw PreconditionError("prenormalize_c2 expects a hypersurface in C^2");
    auto [cur, applied] = remove_pluriharmonic(h);
    const GaussRat a = cur.mono({1, 0, 1, 0});
    if (a.is_zero() || !a.is_real()) throw PreconditionError("F_{1,1} must be real and nonzero");
    RigidMap scale = identity_map(h.degree);
    scale.f = TruncSeries::monomial({1, 0, 0, 0}, a, h.degree);
    scale.rho = a.re();
    cur = apply(scale, cur);
    applied = compose(applied, scale);
    for (int pass = 0; pass <= h.degree; ++pass) {
        RigidMap absorb = identity_map(h.degree);
        bool dirty = false;
        for (const auto& [e, c] : cur.F.terms())
            if (e.c == 1 && e.a >= 2) absorb.f.add_to({e.a, 0, 0, 0}, c), dirty = true;
        if (!dirty) return {cur, applied};
        cur = apply(absorb, cur);
        applied = compose(applied, absorb);
    }
    throw PreconditionError("C^2 absorption did not stabilize");
}

GaussRat predicted_F22(const Hypersurface& h) {
    const GaussRat m11 = h.mono({1, 0, 1, 0}), m21 = h.mono({2, 0, 1, 0}), m12 = h.mono({1, 0, 2, 0}),
                   m22 = h.mono({2, 0, 2, 0});
    return (m22 * m11 - m21 * m12) / (m11 * m11 * m11);
}

TruncSeries R_transformation_residual(const Hypersurface& h, const RigidMap& m) {
    const Hypersurface image = apply(m, h);
    const TruncSeries fz = derive(m.f, Z);
    const TruncSeries jac = fz * conj_series(fz);
    const TruncSeries zero(m.degree);
    TruncSeries pulled = substitute(R_numerator(image), {m.f, zero, conj_series(m.f), zero});
    const GaussRat inv_rho2 = GaussRat(1 / (m.rho * m.rho));
    return R_numerator(h) - jac * jac * jac * pulled * inv_rho2;
}

int sphere_order(const Hypersurface& h) {
    const TruncSeries n = R_numerator(h);
    const int m = n.min_degree();
    return m < 0 ? n.valid_order() : m - 1;
}

Hypersurface random_c2(std::uint64_t seed, int delta, bool unit_levi) {
    std::mt19937_64 rng(seed);
    TruncSeries F(delta);
    for (int j = 1; j <= delta; ++j)
        for (int k = j; j + k <= delta; ++k) {
            if (j == k) {
                F.set({j, 0, k, 0}, GaussRat(small_rat(rng, false)));
            } else {
                GaussRat v(small_rat(rng, false), small_rat(rng, false));
                F.set({j, 0, k, 0}, v);
                F.set({k, 0, j, 0}, v.conj());
            }
        }
    F.set({1, 0, 1, 0}, unit_levi ? GaussRat(1) : GaussRat(small_rat(rng, true)));
    return make_hypersurface(F, 2);
}

RigidMap random_c2_map(std::uint64_t seed, int delta) {
    std::mt19937_64 rng(seed);
    RigidMap m = identity_map(delta);
    m.f = TruncSeries(delta);
    m.f.set({1, 0, 0, 0}, GaussRat(small_rat(rng, true), small_rat(rng, false)));
    for (int j = 2; j <= delta; ++j) m.f.set({j, 0, 0, 0}, GaussRat(small_rat(rng, false), small_rat(rng, false)));
    m.rho = small_rat(rng, true);
    for (int j = 2; j <= delta; ++j) m.h.set({j, 0, 0, 0}, GaussRat(small_rat(rng, false), small_rat(rng, false)));
    return m;
}

}  // namespace rcr
