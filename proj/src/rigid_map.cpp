#include "rigidcr/rigid_map.hpp"

#include "rigidcr/hypersurface.hpp"

#include <random>

namespace rcr {

namespace {

TruncSeries compose_holo(const TruncSeries& s, const TruncSeries& f, const TruncSeries& g) {
    const TruncSeries zero(std::min(f.valid_order(), g.valid_order()));
    return substitute(s, {f, g, zero, zero});
}

void require_holo_origin(const TruncSeries& s, const char* name) {
    if (!s.is_holomorphic()) throw PreconditionError(std::string("rigid map: ") + name + " is not holomorphic");
    if (!s.constant_term().is_zero())
        throw PreconditionError(std::string("rigid map: ") + name + " does not vanish at the origin");
}

}  // namespace

RigidMap identity_map(int degree) {
    RigidMap m;
    m.f = TruncSeries::variable(Z, degree);
    m.g = TruncSeries::variable(ZETA, degree);
    m.h = TruncSeries(degree);
    m.rho = 1;
    m.degree = degree;
    return m;
}

RigidMap make_map(const TruncSeries& f, const TruncSeries& g, const mpq_class& rho,
                  const TruncSeries& h, int degree) {
    require_holo_origin(f, "f");
    require_holo_origin(g, "g");
    require_holo_origin(h, "h");
    if (sgn(rho) == 0) throw PreconditionError("rigid map: rho must be nonzero");
    const Exponent4 ez(1, 0, 0, 0), ew(0, 1, 0, 0);
    if ((f.coeff(ez) * g.coeff(ew) - f.coeff(ew) * g.coeff(ez)).is_zero())
        throw PreconditionError("rigid map: singular Jacobian at the origin");
    RigidMap m;
    m.f = f.truncated(degree);
    m.g = g.truncated(degree);
    m.h = h.truncated(degree);
    m.rho = rho;
    m.degree = std::min({degree, m.f.valid_order(), m.g.valid_order(), m.h.valid_order()});
    return m;
}

RigidMap compose(const RigidMap& m1, const RigidMap& m2) {
    RigidMap m;
    m.degree = std::min(m1.degree, m2.degree);
    const TruncSeries f1 = m1.f.truncated(m.degree), g1 = m1.g.truncated(m.degree);
    m.f = compose_holo(m2.f, f1, g1).truncated(m.degree);
    m.g = compose_holo(m2.g, f1, g1).truncated(m.degree);
    m.h = (m1.h.truncated(m.degree) * GaussRat(m2.rho) + compose_holo(m2.h, f1, g1)).truncated(m.degree);
    m.rho = m2.rho * m1.rho;
    return m;
}

RigidMap invert(const RigidMap& m) {
    auto [fi, gi] = invert_pair(m.f, m.g, m.degree);
    RigidMap out;
    out.degree = m.degree;
    out.f = fi;
    out.g = gi;
    out.rho = 1 / m.rho;
    out.h = compose_holo(m.h, fi, gi) * GaussRat(-out.rho);
    return out;
}

RigidMap truncate(const RigidMap& m, int degree) {
    RigidMap out = m;
    out.degree = std::min(degree, m.degree);
    out.f = m.f.truncated(out.degree);
    out.g = m.g.truncated(out.degree);
    out.h = m.h.truncated(out.degree);
    return out;
}

RigidMap dilation_rotation(const GaussRat& lambda, int degree) {
    if (lambda.is_zero()) throw PreconditionError("dilation_rotation: lambda must be nonzero");
    RigidMap m = identity_map(degree);
    m.f *= lambda;
    m.g *= lambda / lambda.conj();
    m.rho = lambda.norm();
    return m;
}

Hypersurface apply(const RigidMap& m, const Hypersurface& h) {
    const int order = std::min(h.degree, m.degree);
    auto [fi, gi] = invert_pair(m.f, m.g, order);
    TruncSeries F = substitute_holo(h.F.truncated(order), fi, gi) * GaussRat(m.rho);
    if (!m.h.is_zero()) F += real_part(compose_holo(m.h.truncated(order), fi, gi));
    Hypersurface out = h;
    out.F = F.truncated(order);
    out.degree = order;
    return out;
}

int rt_dim(int delta) {
    int complex_coeffs = 0;
    for (int a = 0; a <= delta; ++a)
        for (int b = 0; a + b <= delta; ++b)
            if (a + b >= 1) complex_coeffs += 2;  // one for f, one for g
    return 2 * complex_coeffs + 1;
}

RigidMap random_map(std::uint64_t seed, int degree) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-2, 2), den(1, 3);
    auto rat = [&] {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    auto cplx = [&] { return GaussRat(rat(), rat()); };
    for (;;) {
        RigidMap m = identity_map(degree);
        m.f = TruncSeries(degree);
        m.g = TruncSeries(degree);
        for (int i = 0; i < dense_size(degree); ++i) {
            const Exponent4 e = dense_exponent(i);
            if (e.c || e.d || e.deg() == 0) continue;
            m.f.set(e, cplx());
            m.g.set(e, cplx());
            if (e.deg() >= 2) m.h.set(e, cplx());
        }
        do m.rho = rat(); while (sgn(m.rho) == 0);
        const Exponent4 ez(1, 0, 0, 0), ew(0, 1, 0, 0);
        if ((m.f.coeff(ez) * m.g.coeff(ew) - m.f.coeff(ew) * m.g.coeff(ez)).is_zero()) continue;
        return m;
    }
}

bool operator==(const RigidMap& a, const RigidMap& b) {
    return a.degree == b.degree && a.rho == b.rho && a.f == b.f && a.g == b.g && a.h == b.h;
}

}  // namespace rcr
