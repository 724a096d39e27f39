#pragma once

#include "rigidcr/series.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace rcr {

// Polynomials in coefficient indeterminates F_{a,b,c,d}, as stored in the
// plain-text fixture files: one monomial per line, "+coef F_{a,b,c,d}^e ...".
struct FormulaTerm {
    mpq_class coef;
    std::vector<std::pair<Exponent4, long>> factors;
};
using Formula = std::vector<FormulaTerm>;

// A headed block ("relation 2 0,1,3,0" or "factor 3/2") closed by "end".
struct FormulaBlock {
    std::vector<std::string> header;
    Formula body;
};

Formula parse_formula(std::string_view text);
std::vector<FormulaBlock> parse_formula_blocks(std::string_view text);

using CoeffLookup = std::function<GaussRat(Exponent4)>;

GaussRat evaluate(const Formula& f, const CoeffLookup& value);

// Product of "factor p/q" blocks, each body raised to p/q. Fractional powers
// are taken only for positive rationals with an exact root.
GaussRat evaluate_factors(const std::vector<FormulaBlock>& blocks, const CoeffLookup& value);

std::string read_text_file(const std::string& path);

struct RelationOutcome {
    int stage = 0;
    Exponent4 slot;
    bool disputed = false;
    int holds = 0;   // samples on which the relation held
};

// Checks the closed forms for I0, V0 and the stage relations in `dir` against
// the normalization pipeline on random unit-Levi samples.
struct FixtureReport {
    int samples = 0;
    int i0_matches = 0, v0_matches = 0;
    std::vector<RelationOutcome> relations;
    bool ok() const;
};

FixtureReport check_fixtures(const std::string& dir, int samples, std::uint64_t seed);

}  // namespace rcr
