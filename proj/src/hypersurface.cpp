#include "rigidcr/hypersurface.hpp"

#include <algorithm>
#include <random>
#include <tuple>

namespace rcr {

std::string to_string(Convention c) { return c == Convention::Taylor ? "taylor" : "monomial"; }

Convention convention_from_string(const std::string& s) {
    if (s == "taylor") return Convention::Taylor;
    if (s == "monomial") return Convention::Monomial;
    throw ParseError("unknown convention '" + s + "'");
}

GaussRat to_taylor(Exponent4 e, const GaussRat& mono) { return mono * GaussRat(taylor_factor(e)); }
GaussRat from_taylor(Exponent4 e, const GaussRat& taylor) {
    return taylor * GaussRat(mpq_class(1, taylor_factor(e)));
}

Hypersurface make_hypersurface(const TruncSeries& F, int ambient_dim, Convention convention) {
    Hypersurface h;
    h.F = F;
    h.degree = F.valid_order();
    h.convention = convention;
    h.ambient_dim = ambient_dim;
    return h;
}

Hypersurface from_coefficients(const std::map<Exponent4, GaussRat>& coeffs, int degree,
                               Convention convention, int ambient_dim) {
    TruncSeries F(degree);
    for (const auto& [e, c] : coeffs) {
        if (ambient_dim == 2 && (e.b || e.d))
            throw ParseError("zeta exponent in a two-dimensional hypersurface");
        F.set(e, convention == Convention::Taylor ? from_taylor(e, c) : c);
    }
    return make_hypersurface(F, ambient_dim, convention);
}

bool is_independent(Exponent4 e) { return e.a + e.b >= 1 && e.c + e.d >= 1 && e.b * e.d == 0; }
bool is_dependent(Exponent4 e) { return e.b >= 1 && e.d >= 1; }

int h_dim(int delta) {
    int n = 0;
    for (int i = 0; i < dense_size(delta); ++i)
        if (is_independent(dense_exponent(i))) ++n;
    return n;
}

JetTable independent_jets(const Hypersurface& h) {
    JetTable j;
    j.degree = h.degree;
    j.convention = h.convention;
    for (const auto& [e, c] : h.F.terms())
        if (is_independent(e)) j.values[e] = h.coeff(e);
    return j;
}

namespace {

// Coefficient at u of the second derivative in slots i != j.
GaussRat d2coef(const TruncSeries& F, int i, int j, Exponent4 u) {
    int x[4] = {u.a, u.b, u.c, u.d};
    const long fi = x[i] + 1, fj = x[j] + 1;
    x[i] += 1;
    x[j] += 1;
    const GaussRat c = F.coeff(Exponent4(x[0], x[1], x[2], x[3]));
    if (c.is_zero()) return c;
    return c * GaussRat(fi * fj);
}

}  // namespace

Hypersurface complete_dependents(const JetTable& j) {
    TruncSeries F(j.degree);
    for (const auto& [e, c] : j.values) {
        if (is_dependent(e)) throw PreconditionError("complete_dependents: dependent slot " + e.str() + " supplied");
        F.set(e, j.convention == Convention::Taylor ? from_taylor(e, c) : c);
    }
    const GaussRat pivot = F.coeff(Exponent4(1, 0, 1, 0));
    if (pivot.is_zero()) throw PreconditionError("complete_dependents: F_{1,0,1,0} vanishes");
    std::vector<Exponent4> deps;
    for (int i = 0; i < dense_size(j.degree); ++i)
        if (is_dependent(dense_exponent(i))) deps.push_back(dense_exponent(i));
    std::sort(deps.begin(), deps.end(), [](Exponent4 x, Exponent4 y) {
        return std::make_tuple(x.b + x.d, x.deg(), x) < std::make_tuple(y.b + y.d, y.deg(), y);
    });
    for (Exponent4 e : deps) {
        const Exponent4 t(e.a, e.b - 1, e.c, e.d - 1);
        GaussRat sum;
        for (int a = 0; a <= t.a; ++a)
            for (int b = 0; b <= t.b; ++b)
                for (int c = 0; c <= t.c; ++c)
                    for (int d = 0; d <= t.d; ++d) {
                        const Exponent4 u(a, b, c, d), v(t.a - a, t.b - b, t.c - c, t.d - d);
                        sum += d2coef(F, Z, ZB, u) * d2coef(F, ZETA, ZETAB, v);
                        sum -= d2coef(F, Z, ZETAB, u) * d2coef(F, ZETA, ZB, v);
                    }
        F.set(e, -sum / (pivot * GaussRat(long(e.b) * e.d)));
    }
    return make_hypersurface(F, 3, j.convention);
}

TruncSeries levi_det(const Hypersurface& h) {
    if (h.degree < 2) throw PreconditionError("levi_det: degree must be at least 2");
    auto d = [&](Var x, Var y) { return derive(derive(h.F, x), y); };
    return d(Z, ZB) * d(ZETA, ZETAB) - d(Z, ZETAB) * d(ZETA, ZB);
}

GaussRat nondeg_det(const Hypersurface& h) {
    if (h.degree < 3) throw PreconditionError("nondeg_det: degree must be at least 3");
    return h.taylor({1, 0, 1, 0}) * h.taylor({2, 0, 0, 1}) - h.taylor({1, 0, 0, 1}) * h.taylor({2, 0, 1, 0});
}

bool ValidationReport::ok() const { return reality && origin && levi_nonzero && rank1 && nondegenerate; }

ValidationReport validate(const Hypersurface& h) {
    if (h.ambient_dim == 3 && h.F.coeff({1, 0, 1, 0}).is_zero() && !h.F.coeff({0, 1, 0, 1}).is_zero()) {
        // Levi kernel along z: judge the surface in the exchanged chart.
        Hypersurface s = h;
        s.F = TruncSeries(h.F.valid_order());
        for (const auto& [e, c] : h.F.terms()) s.F.set(Exponent4(e.b, e.a, e.d, e.c), c);
        ValidationReport r = validate(s);
        r.messages.insert(r.messages.begin(), "z and zeta exchanged: Levi kernel is the z axis");
        return r;
    }
    ValidationReport r;
    r.reality = (h.F == conj_series(h.F));
    if (!r.reality) r.messages.push_back("coefficients violate the reality condition");
    r.origin = h.F.min_degree() < 0 || h.F.min_degree() >= 2;
    if (!r.origin) r.messages.push_back("constant or linear terms present");
    r.pluriharmonic_free = true;
    for (const auto& [e, c] : h.F.terms())
        if (e.a + e.b == 0 || e.c + e.d == 0) r.pluriharmonic_free = false;
    r.levi_nonzero = !h.F.coeff({1, 0, 1, 0}).is_zero();
    if (!r.levi_nonzero) r.messages.push_back("F_{1,0,1,0} vanishes");
    if (h.ambient_dim == 2) {
        r.rank1 = true;
        r.nondegenerate = true;
        return r;
    }
    if (h.degree < 3) {
        r.messages.push_back("degree below 3");
        return r;
    }
    const TruncSeries L = levi_det(h);
    r.certified_order = L.valid_order();
    const int m = L.min_degree();
    r.rank1_order = m < 0 ? L.valid_order() : m - 1;
    r.rank1 = (m < 0);
    if (!r.rank1) r.messages.push_back("Levi determinant nonzero at degree " + std::to_string(m));
    r.nondegenerate = !nondeg_det(h).is_zero();
    if (!r.nondegenerate) r.messages.push_back("not 2-nondegenerate at the origin");
    return r;
}

std::pair<Hypersurface, RigidMap> remove_pluriharmonic(const Hypersurface& h) {
    const TruncSeries chi = h.F.filtered([](Exponent4 e) { return e.c + e.d == 0; });
    Hypersurface out = h;
    out.F = h.F.filtered([](Exponent4 e) { return e.a + e.b > 0 && e.c + e.d > 0; });
    RigidMap m = identity_map(h.degree);
    m.h = chi.filtered([](Exponent4 e) { return e.deg() > 0; }) * GaussRat(-2);
    return {out, m};
}

Hypersurface recenter(const Hypersurface& h, const GaussRat& z0, const GaussRat& zeta0) {
    Hypersurface out = h;
    out.F = shift(h.F, {z0, zeta0, z0.conj(), zeta0.conj()});
    out.F.set(Exponent4(), GaussRat());
    return remove_pluriharmonic(out).first;
}

Hypersurface gm_model(int delta) {
    const GaussRat half = GaussRat::frac(1, 2);
    TruncSeries num(delta);
    num.set({1, 0, 1, 0}, 1);
    num.set({2, 0, 0, 1}, half);
    num.set({0, 1, 2, 0}, half);
    TruncSeries den = TruncSeries::constant(1, delta);
    den.set({0, 1, 0, 1}, -1);
    return make_hypersurface(divide_by_unit(num, den));
}

Hypersurface lightcone_tube(int delta) {
    TruncSeries num(delta);
    num.set({2, 0, 0, 0}, GaussRat::frac(1, 4));
    num.set({1, 0, 1, 0}, GaussRat::frac(1, 2));
    num.set({0, 0, 2, 0}, GaussRat::frac(1, 4));
    TruncSeries den = TruncSeries::constant(1, delta);
    den.set({0, 1, 0, 0}, GaussRat::frac(-1, 2));
    den.set({0, 0, 0, 1}, GaussRat::frac(-1, 2));
    return make_hypersurface(divide_by_unit(num, den));
}

Hypersurface random_rank1(std::uint64_t seed, int delta, const RandomOptions& opt) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-opt.max_num, opt.max_num), den(1, opt.max_den);
    auto rat = [&] {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    auto nonzero_rat = [&] {
        mpq_class q;
        do q = rat(); while (sgn(q) == 0);
        return q;
    };
    for (;;) {
        JetTable j;
        j.degree = delta;
        for (int i = 0; i < dense_size(delta); ++i) {
            const Exponent4 e = dense_exponent(i);
            if (!is_independent(e) || e.bar() < e) continue;
            if (e == e.bar()) {
                j.values[e] = GaussRat(rat());
            } else {
                GaussRat v(rat(), rat());
                j.values[e] = v;
                j.values[e.bar()] = v.conj();
            }
        }
        j.values[{1, 0, 1, 0}] = opt.unit_levi ? GaussRat(1) : GaussRat(nonzero_rat());
        Hypersurface h = complete_dependents(j);
        if (nondeg_det(h).is_zero()) continue;
        if (opt.with_pluriharmonic) {
            for (int i = 0; i < dense_size(delta); ++i) {
                const Exponent4 e = dense_exponent(i);
                if (e.deg() < 2 || e.c + e.d != 0) continue;
                GaussRat v(rat(), rat());
                h.F.add_to(e, v);
                h.F.add_to(e.bar(), v.conj());
            }
        }
        return h;
    }
}

}  // namespace rcr
