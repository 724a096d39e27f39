#pragma once

#include "rigidcr/hypersurface.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rcr {

struct StageRecord {
    int stage = 0;
    std::string name;
    RigidMap map;                          // applied at this stage
    Hypersurface result;                   // surface after this stage
    std::map<std::string, GaussRat> params;
};

enum class Branch { Flat, I0Nonzero, V0Nonzero };
std::string to_string(Branch b);

struct NormalFormResult {
    Hypersurface H_norm;       // fully normalized jet, before the branch scaling
    RigidMap applied;          // input -> H_norm
    std::vector<StageRecord> stages;
    int extension_passes = 0;

    // Jet invariants read off H_norm (Taylor coefficients).
    GaussRat I0, V0, Q0;
    bool has_invariants = false;

    Branch branch = Branch::Flat;
    bool branch_exact = false;          // branch scaling found inside Q(i)
    std::optional<Hypersurface> H_branch;
    std::optional<RigidMap> branch_map;
    GaussRat branch_I0, branch_V0, branch_Q0;
    // V0 branch without an exact root: Q0^2 / |V0|^2 and the sign of Q0.
    mpq_class ratio_squared;
    int ratio_sign = 0;
};

// Stages 0-5 plus the high-degree extension.
NormalFormResult prenormalize(const Hypersurface& h);

// Full normalization; optionally applies the branch scaling.
NormalFormResult normalize(const Hypersurface& h, bool with_branch = true);

// Linear pre-map into the chart F_{1,0,1,0} != 0: the identity, or the
// exchange of z and zeta when the Levi kernel is the z axis.
RigidMap chart_map(const Hypersurface& h);

// Individual stage maps on an already prepared surface (monomial data).
RigidMap stage1_map(const Hypersurface& h);
RigidMap stage2_map(const Hypersurface& h);
RigidMap stage3_map(const Hypersurface& h);
RigidMap stage4_map(const Hypersurface& h);
RigidMap stage5_map(const Hypersurface& h);

// Shear parameters (g10, b20) read from a stage-5 surface.
std::pair<GaussRat, GaussRat> stage6_parameters(const Hypersurface& h);
RigidMap stage6_map(const Hypersurface& h);

// Slots fixed by a given stage, with the number of real conditions each imposes.
struct SlotConstraint {
    Exponent4 slot;
    int real_conditions;
};
std::vector<SlotConstraint> stage_constraints(int stage, int delta);

// Real dimension left free after `stage` at degree delta.
int stage_dimension(int stage, int delta);

// True when h satisfies every normalization condition of `stage` and below.
bool satisfies_stage(const Hypersurface& h, int stage);

}  // namespace rcr
