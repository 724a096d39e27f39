#pragma once

#include "rigidcr/rigid_map.hpp"
#include "rigidcr/series.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rcr {

enum class Convention { Monomial, Taylor };

std::string to_string(Convention c);
Convention convention_from_string(const std::string& s);

// Coefficient conversions: Taylor = monomial * a! b! c! d!.
GaussRat to_taylor(Exponent4 e, const GaussRat& mono);
GaussRat from_taylor(Exponent4 e, const GaussRat& taylor);

/// Rigid hypersurface u = F(z, zeta, conj z, conj zeta) (or u = F(z, conj z)
/// when ambient_dim == 2). F always holds the monomial coefficients of the
/// function; `convention` only selects how coefficients are read and written.
struct Hypersurface {
    TruncSeries F;
    int degree = 0;
    Convention convention = Convention::Monomial;
    int ambient_dim = 3;

    GaussRat mono(Exponent4 e) const { return F.coeff(e); }
    GaussRat taylor(Exponent4 e) const { return to_taylor(e, F.coeff(e)); }
    GaussRat coeff(Exponent4 e) const {
        return convention == Convention::Taylor ? taylor(e) : mono(e);
    }
};

Hypersurface make_hypersurface(const TruncSeries& F, int ambient_dim = 3,
                               Convention convention = Convention::Monomial);

// Builds from coefficients given in `convention`.
Hypersurface from_coefficients(const std::map<Exponent4, GaussRat>& coeffs, int degree,
                               Convention convention, int ambient_dim = 3);

// Independent jet data: exponents with a+b >= 1, c+d >= 1, b*d == 0.
struct JetTable {
    std::map<Exponent4, GaussRat> values;
    int degree = 0;
    Convention convention = Convention::Monomial;
};

bool is_independent(Exponent4 e);
bool is_dependent(Exponent4 e);  // b >= 1 and d >= 1
int h_dim(int delta);            // real dimension of independent jets

JetTable independent_jets(const Hypersurface& h);

// Solves the rank-one identity for all dependent coefficients.
Hypersurface complete_dependents(const JetTable& j);

// F_{z zbar} F_{zeta zetabar} - F_{z zetabar} F_{zeta zbar}, valid to degree - 2.
TruncSeries levi_det(const Hypersurface& h);

// F_{z zbar} F_{z z zetabar} - F_{z zetabar} F_{z z zbar} at the origin.
GaussRat nondeg_det(const Hypersurface& h);

struct ValidationReport {
    bool reality = false;
    bool origin = false;
    bool pluriharmonic_free = false;
    bool levi_nonzero = false;
    bool rank1 = false;       // Levi determinant vanishes to the certified order
    int rank1_order = -1;     // highest degree through which it vanishes
    int certified_order = -1; // degree - 2
    bool nondegenerate = false;
    std::vector<std::string> messages;

    // Everything required before normalization.
    bool ok() const;
};

ValidationReport validate(const Hypersurface& h);

// Drops terms with c+d == 0 or a+b == 0; returns the map doing so.
std::pair<Hypersurface, RigidMap> remove_pluriharmonic(const Hypersurface& h);

// Moves the base point (z0, zeta0) to the origin; the polynomial shift is exact.
Hypersurface recenter(const Hypersurface& h, const GaussRat& z0, const GaussRat& zeta0);

Hypersurface gm_model(int delta);
Hypersurface lightcone_tube(int delta);

struct RandomOptions {
    bool unit_levi = false;          // F_{1,0,1,0} = 1
    bool with_pluriharmonic = false; // add random harmonic terms
    int max_num = 3;                 // numerators in [-max_num, max_num]
    int max_den = 3;                 // denominators in [1, max_den]
};

// Random 2-nondegenerate, Levi rank-one jet completed to degree delta.
Hypersurface random_rank1(std::uint64_t seed, int delta, const RandomOptions& opt = {});

}  // namespace rcr
