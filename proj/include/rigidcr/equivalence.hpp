#pragma once

#include "rigidcr/hypersurface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rcr {

/// Equations s^m[i] t^n[i] = c[i] in s > 0 and |t| = 1.
struct MultiplicativeSystem {
    std::vector<long> m, n;
    std::vector<GaussRat> c;
    std::vector<Exponent4> slot;   // where each equation came from, if any
    std::optional<Exponent4> zero_mismatch;  // a slot zero on one side only
};

struct SystemSolution {
    bool consistent = false;
    std::string reason;
    // Witness: s^(2*gs) = s_value and t^gt = t_value / |t_value|.
    long gs = 0, gt = 0;
    mpq_class s_value{1};
    GaussRat t_value{1};
    std::optional<Exponent4> failing_slot;
};

SystemSolution solve_system(const MultiplicativeSystem& sys);

// Integer basis of {k : sum k_i v_i = 0}.
std::vector<std::vector<long>> relation_lattice(const std::vector<long>& v);

// Slot-wise system for G = G' (image) under the dilation-rotation law, with
// exponent maps m(e), n(e).
enum class Ambient { C2, C3 };
MultiplicativeSystem build_system(const TruncSeries& G, const TruncSeries& Gimage, Ambient amb);

struct EquivalenceResult {
    std::string verdict;           // "equivalent-up-to-truncation" or "inequivalent"
    bool equivalent = false;
    int degree = 0;
    std::string branch_a, branch_b;
    std::string representative;    // "+" or "-" on the V0 branch
    SystemSolution solution;
};

EquivalenceResult equivalent_c3(const Hypersurface& a, const Hypersurface& b);
EquivalenceResult equivalent_c2(const Hypersurface& a, const Hypersurface& b);

}  // namespace rcr
