#pragma once

#include <array>
#include <utility>

#include "cdstab/charpoly.hpp"
#include "cdstab/conditioning.hpp"
#include "cdstab/discretization.hpp"

namespace cdstab {

// Built-in demonstration problem: a(z) = z+1, b(z) = (z+1)^2 on [0, 1],
// horizon 1. All reference tables and most examples use it.
ProblemSpec demo_problem();

// The (N, M) ladder used by the norm and condition tables; dv = 1/M keeps
// dv/dz^2 = 25/32 along the ladder.
inline constexpr std::array<std::pair<int, int>, 6> kNormLadder = {
    {{25, 800}, {50, 3200}, {100, 12800}, {200, 51200}, {400, 204800}, {800, 819200}}};

struct RootTableRow {
    int n_space;
    std::vector<double> roots;   // descending
};

// Roots of the recurrence polynomial for N = n_lo..n_hi at fixed dv.
std::vector<RootTableRow> root_table(const ProblemSpec& spec, int n_lo, int n_hi, double dv);

struct NormTableRow {
    int n_space, n_time;
    NormReport norm;
};

// Disc-gap bound and exact ||X^{-1}||_2 plus the Y norms over the ladder.
std::vector<NormTableRow> norm_table(const ProblemSpec& spec);

struct ConditionTableRow {
    int n_space, n_time;
    ConditionReport report;
};

std::vector<ConditionTableRow> condition_table(const ProblemSpec& spec, double theta);

// Stencil for one (N, dv) cell of the demo ladder.
StencilCoefficients demo_stencil(const ProblemSpec& spec, int n_space, double dv,
                                 StencilVariant variant = StencilVariant::kStandard);

}  // namespace cdstab
