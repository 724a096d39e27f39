#pragma once

#include "rigidcr/series.hpp"

#include <cstdint>

namespace rcr {

struct Hypersurface;

/// Rigid biholomorphism z' = f(z,zeta), zeta' = g(z,zeta), w' = rho*w + h(z,zeta),
/// truncated at total degree `degree`.
struct RigidMap {
    TruncSeries f, g, h;
    mpq_class rho{1};
    int degree = 0;
};

RigidMap identity_map(int degree);

// Checks the structural invariants and returns the map truncated to `degree`.
RigidMap make_map(const TruncSeries& f, const TruncSeries& g, const mpq_class& rho,
                  const TruncSeries& h, int degree);

// Applying compose(m1, m2) equals applying m1 then m2.
RigidMap compose(const RigidMap& m1, const RigidMap& m2);
RigidMap invert(const RigidMap& m);
RigidMap truncate(const RigidMap& m, int degree);

// z' = lambda z, zeta' = (lambda / conj lambda) zeta, w' = |lambda|^2 w.
RigidMap dilation_rotation(const GaussRat& lambda, int degree);

// Image of H: F'(f, g, conj f, conj g) = rho F + Re h.
Hypersurface apply(const RigidMap& m, const Hypersurface& h);

// Real dimension of the group of degree-delta rigid jets, counted from its
// free coefficients (f, g without constants, plus rho).
int rt_dim(int delta);

bool operator==(const RigidMap& a, const RigidMap& b);

// Random map with small rational coefficients and invertible linear part.
RigidMap random_map(std::uint64_t seed, int degree);

}  // namespace rcr
