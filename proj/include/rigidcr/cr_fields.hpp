#pragma once

#include "rigidcr/hypersurface.hpp"

namespace rcr {

// Frame on a rigid hypersurface: L1 = d/dz, L2 = d/dzeta and their conjugates.
inline TruncSeries L1(const TruncSeries& s) { return derive(s, Z); }
inline TruncSeries L2(const TruncSeries& s) { return derive(s, ZETA); }
inline TruncSeries L1bar(const TruncSeries& s) { return derive(s, ZB); }
inline TruncSeries L2bar(const TruncSeries& s) { return derive(s, ZETAB); }

// Slant function k = -F_{zeta zbar} / F_{z zbar}.
TruncSeries slant_k(const Hypersurface& h);
// P = F_{z z zbar} / F_{z zbar}.
TruncSeries fundamental_P(const Hypersurface& h);

// K = k L1 + L2 and its conjugate field.
TruncSeries K_op(const TruncSeries& phi, const TruncSeries& k);
TruncSeries Kbar_op(const TruncSeries& phi, const TruncSeries& k);

/// The primary invariant functions as series around the origin, together
/// with the intermediate quantities they are built from.
struct InvariantFields {
    TruncSeries k, P, Y, X;   // Y = L1bar k, X = L1bar Y
    TruncSeries I0, V0;
    TruncSeries B;            // (X/Y - conj P) / 3
};

InvariantFields invariant_fields(const Hypersurface& h);

// Three expressions for the secondary invariant.
TruncSeries Q0_definition(const InvariantFields& f);  // from derivatives of I0 and V0
TruncSeries Q0_reduced(const InvariantFields& f);     // B, I0 and real parts
TruncSeries Q0_expanded(const InvariantFields& f);    // fully expanded in k and P

struct DiffInvariants {
    GaussRat I0, V0;
    bool has_Q0 = false;
    GaussRat Q0, Q0_reduced, Q0_expanded;
};

// Values at the origin. Needs degree >= 5, and >= 6 for Q0.
DiffInvariants diff_invariants(const Hypersurface& h);

// Values at the point (z0, zeta0), read through exact recentered coordinates.
DiffInvariants diff_invariants_at(const Hypersurface& h, const GaussRat& z0, const GaussRat& zeta0);

// Fixed ratios between the jet route (after the root-free normalization) and
// the differential route: jet_I0 * A = 3 diff_I0, jet_V0 * A^2 = -3 diff_V0,
// jet_Q0 * A^2 = (3/2) diff_Q0, where A = F_{1,0,1,0} at the base point.
struct JetScaled {
    GaussRat I0, V0, Q0;
    bool has_Q0 = false;
};
JetScaled jet_scale(const DiffInvariants& d, const GaussRat& levi);

// Residual series of identities that hold on every Levi rank-one surface.
struct IdentityResiduals {
    TruncSeries bracket;     // [K, L1bar] phi + (L1bar k) L1 phi, for a test function phi
    TruncSeries K_Pbar;      // K(conj P) + P L1bar k + L1bar L1 k
    TruncSeries K_L1bar_Pbar;
    TruncSeries Kbar_I0;     // Kbar(I0) + 2 conj(I0) L1 conj(k)
};

IdentityResiduals identity_residuals(const Hypersurface& h, const TruncSeries& phi);

}  // namespace rcr
