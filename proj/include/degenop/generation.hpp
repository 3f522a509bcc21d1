#pragma once

#include <optional>
#include <string>
#include <vector>

#include "degenop/core.hpp"

namespace degenop {

struct Window {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return !(lo < hi); }
    bool contains(double v) const { return lo < v && v < hi; }
};

struct GenerationReport {
    bool generates = false;
    std::optional<Window> window;  // absent when the mode does not apply
    double value_mp = 0.0;         // (m+1)/p
    std::string theorem;
    std::vector<std::string> reasons;
};

enum class RegimeFlag {
    NEUMANN_AUTOMATIC,
    NEUMANN_TRACE_REQUIRED,
    WN_EQUALS_WV,
    ALL_SPACES_COINCIDE,
    RELLICH_DOMAIN,
    MIXED_DERIV_ESTIMATE,
    DIRICHLET_OBLIQUE_COINCIDE,
    ALTERNATIVE_REALIZATION_EXISTS,
    DIRICHLET_ENLARGED_WINDOW,
};

const char* to_string(RegimeFlag flag);

struct TraceCondition {
    double exponent = 0.0;  // sigma in lim y^sigma (...)
    bool finite_limit = false;  // limit exists but need not vanish
    // weights of the differentiated combination; absent for a condition on u
    std::optional<Vector> weight_dx;
    std::optional<double> weight_dy;
};

struct DomainSpec {
    std::string space_family;  // "W_N" | "W_v" | "y^{-s1} W_w" | "W_R"
    Vector w_d;                // tangential part of the drift vector w
    double w_c = 0.0;          // normal part
    double weight_shift = 0.0; // -s1 * p, the measure-exponent shift
    TraceCondition trace;
    std::vector<RegimeFlag> equivalence_flags;
    std::string core_description;
};

/// Decide generation of an analytic semigroup with maximal regularity for the
/// given boundary condition; windows and side conditions follow the roles:
///   oblique/neumann: alpha1^- < (m+1)/p < c/gamma + 1 - alpha2   (b = 0),
///   dirichlet:       s1 + alpha1^- < (m+1)/p < s2 + 2 - alpha2.
/// N = 0 replaces alpha1^- by 0. Throws on b != 0 in oblique mode and on
/// inadmissible parameters.
GenerationReport check_generation(const OperatorParams& params, const SpaceParams& space,
                                  const BoundaryCondition& bc);

/// Domain description for a generating configuration (throws otherwise).
DomainSpec domain_description(const OperatorParams& params, const SpaceParams& space,
                              const BoundaryCondition& bc);

std::vector<RegimeFlag> regime_flags(const OperatorParams& params,
                                     const SpaceParams& space);

}  // namespace degenop
