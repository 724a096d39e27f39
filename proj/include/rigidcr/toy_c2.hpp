#pragma once

#include "rigidcr/hypersurface.hpp"

#include <cstdint>

namespace rcr {

// Rigid hypersurfaces u = F(z, conj z) in C^2 share the series type; only the
// z and conj z slots are used.

// F_{z z zbar zbar} F_{z zbar} - F_{z z zbar} F_{z zbar zbar}.
TruncSeries R_numerator(const Hypersurface& h);
// Numerator divided by F_{z zbar}^2.
TruncSeries R_field(const Hypersurface& h);

struct C2Prenormal {
    Hypersurface H;
    RigidMap applied;
};

// Harmonic removal, Levi scaling z' = F11 z with rho = F11, then absorption of
// every z^j conj(z) term with j >= 2.
C2Prenormal prenormalize_c2(const Hypersurface& h);

// Closed form of the (2,2) coefficient after unit Levi scaling and absorption.
GaussRat predicted_F22(const Hypersurface& h);

// Num(F) - (1/rho^2) (f_z conj(f)_zbar)^3 Num(F') o f, with F' the image of F under m.
TruncSeries R_transformation_residual(const Hypersurface& h, const RigidMap& m);

// Highest degree through which the R numerator vanishes (its valid order when
// it vanishes identically), or -1 if the constant term is nonzero.
int sphere_order(const Hypersurface& h);

Hypersurface random_c2(std::uint64_t seed, int delta, bool unit_levi = false);

// Random holomorphic C^2 rigid map f(z), rho.
RigidMap random_c2_map(std::uint64_t seed, int delta);

}  // namespace rcr
