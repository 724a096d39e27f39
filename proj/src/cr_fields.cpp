#include "rigidcr/cr_fields.hpp"

namespace rcr {

namespace {

GaussRat q(long p, long d) { return GaussRat::frac(p, d); }

TruncSeries div(const TruncSeries& a, const TruncSeries& b) { return divide_by_unit(a, b); }

TruncSeries d2(const TruncSeries& F, Var x, Var y) { return derive(derive(F, x), y); }

}  // namespace

TruncSeries slant_k(const Hypersurface& h) {
    return -div(d2(h.F, ZETA, ZB), d2(h.F, Z, ZB));
}

TruncSeries fundamental_P(const Hypersurface& h) {
    return div(derive(d2(h.F, Z, Z), ZB), d2(h.F, Z, ZB));
}

TruncSeries K_op(const TruncSeries& phi, const TruncSeries& k) { return k * L1(phi) + L2(phi); }

TruncSeries Kbar_op(const TruncSeries& phi, const TruncSeries& k) {
    return conj_series(k) * L1bar(phi) + L2bar(phi);
}

InvariantFields invariant_fields(const Hypersurface& h) {
    if (h.degree < 5) throw PreconditionError("invariants need degree >= 5");
    InvariantFields f;
    f.k = slant_k(h);
    f.P = fundamental_P(h);
    f.Y = L1bar(f.k);
    f.X = L1bar(f.Y);
    if (f.Y.constant_term().is_zero()) throw PreconditionError("surface is not 2-nondegenerate at the origin");
    const TruncSeries& k = f.k;
    const TruncSeries &X = f.X, &Y = f.Y;
    const TruncSeries Xb = conj_series(X), Yb = conj_series(Y), Pb = conj_series(f.P);
    const TruncSeries XY = div(X, Y);

    f.I0 = div(K_op(X, k), Y * Y) * q(-1, 3)
         + div(K_op(Y, k) * X, Y * Y * Y) * q(1, 3)
         + div(Xb, Yb) * q(2, 3)
         + div(L1(Y), Y) * q(2, 3);

    f.V0 = div(L1bar(X), Y) * q(-1, 3)
         + XY * XY * q(5, 9)
         - div(X * Pb, Y) * q(1, 9)
         + L1bar(Pb) * q(1, 3)
         - Pb * Pb * q(1, 9);

    f.B = (XY - Pb) * q(1, 3);
    return f;
}

TruncSeries Q0_definition(const InvariantFields& f) {
    const TruncSeries Bb = conj_series(f.B), Yb = conj_series(f.Y);
    TruncSeries s = f.B * f.I0 + L1bar(f.I0) - div(Bb * Kbar_op(f.I0, f.k), Yb) - div(K_op(f.V0, f.k), f.Y);
    return s * q(1, 2);
}

TruncSeries Q0_reduced(const InvariantFields& f) {
    const TruncSeries Bb = conj_series(f.B);
    return real_part(f.B * f.I0) * GaussRat(2) - f.B * Bb
         + real_part(L1(div(f.X, f.Y))) * q(2, 3) + real_part(L1bar(f.P)) * q(1, 3);
}

TruncSeries Q0_expanded(const InvariantFields& f) {
    const TruncSeries &X = f.X, &Y = f.Y, &P = f.P, &k = f.k;
    const TruncSeries Pb = conj_series(P);
    const TruncSeries KX = K_op(X, k), KY = K_op(Y, k), L1Y = L1(Y);
    const TruncSeries Y2 = Y * Y, Y3 = Y2 * Y, Y4 = Y3 * Y;
    TruncSeries inner = div(KY * X * X, Y4) * q(1, 9)
                      - div(KX * X, Y3) * q(1, 9)
                      - div(KY * X * Pb, Y3) * q(1, 9)
                      - div(L1Y * X, Y2) * q(1, 9)
                      + div(KX * Pb, Y2) * q(1, 9)
                      - div(L1Y * Pb, Y) * q(2, 9)
                      - div(X * P, Y) * q(1, 9)
                      + div(L1(X), Y) * q(1, 3)
                      + L1bar(P) * q(1, 6);
    const TruncSeries XY = div(X, Y);
    return real_part(inner) * GaussRat(2) - P * conj_series(P) * q(1, 9) + XY * conj_series(XY) * q(1, 3);
}

DiffInvariants diff_invariants(const Hypersurface& h) {
    DiffInvariants out;
    {
        Hypersurface h5 = h;
        h5.F = h.F.truncated(5);
        h5.degree = std::min(h.degree, 5);
        InvariantFields f = invariant_fields(h5);
        out.I0 = f.I0.constant_term();
        out.V0 = f.V0.constant_term();
    }
    if (h.degree >= 6) {
        Hypersurface h6 = h;
        h6.F = h.F.truncated(6);
        h6.degree = 6;
        InvariantFields f = invariant_fields(h6);
        out.has_Q0 = true;
        out.Q0 = Q0_definition(f).constant_term();
        out.Q0_reduced = Q0_reduced(f).constant_term();
        out.Q0_expanded = Q0_expanded(f).constant_term();
    }
    return out;
}

DiffInvariants diff_invariants_at(const Hypersurface& h, const GaussRat& z0, const GaussRat& zeta0) {
    // Only mixed derivatives enter, so the shifted polynomial can be used as is.
    Hypersurface s = h;
    s.F = shift(h.F, {z0, zeta0, z0.conj(), zeta0.conj()});
    return diff_invariants(s);
}

JetScaled jet_scale(const DiffInvariants& d, const GaussRat& levi) {
    if (levi.is_zero()) throw PreconditionError("jet_scale: F_{1,0,1,0} vanishes");
    JetScaled j;
    j.I0 = GaussRat(3) * d.I0 / levi;
    j.V0 = GaussRat(-3) * d.V0 / (levi * levi);
    j.has_Q0 = d.has_Q0;
    if (d.has_Q0) j.Q0 = GaussRat::frac(3, 2) * d.Q0 / (levi * levi);
    return j;
}

IdentityResiduals identity_residuals(const Hypersurface& h, const TruncSeries& phi) {
    InvariantFields f = invariant_fields(h);
    const TruncSeries &k = f.k, &P = f.P, &Y = f.Y;
    const TruncSeries Pb = conj_series(P);
    IdentityResiduals r;
    r.bracket = K_op(L1bar(phi), k) - L1bar(K_op(phi, k)) + Y * L1(phi);
    r.K_Pbar = K_op(Pb, k) + P * Y + L1bar(L1(k));
    r.K_L1bar_Pbar = K_op(L1bar(Pb), k) + Y * (L1bar(P) + L1(Pb)) + P * f.X + L1bar(L1bar(L1(k)));
    r.Kbar_I0 = Kbar_op(f.I0, k) + conj_series(f.I0) * conj_series(Y) * GaussRat(2);
    return r;
}

}  // namespace rcr
