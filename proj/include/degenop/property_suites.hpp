#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "degenop/transforms.hpp"

namespace degenop {

struct SuiteResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;   // largest deviation observed
    double bound = 0.0;   // tolerance the suite ran against
    int cases = 0;
    std::string detail;
};

/// Random admissible coefficient records (A SPD, exponents in range, D >= 0).
OperatorParams random_params(std::mt19937_64& rng, int dim_x);
SpaceParams random_space(std::mt19937_64& rng);

/// Pointwise identity (X^{-1} L X) u = L~ u for Kelvin, matched-shear, and
/// general-shear (term sum) conjugations on random data.
SuiteResult conjugation_identity_suite(std::uint64_t seed, int n_params,
                                       int n_functions, int n_points);

/// Inverse composition restores params/space to 1e-12; shear/Kelvin
/// commutation holds pointwise to 1e-10; indicial covariance (with the root
/// swap at beta+1 < 0) holds to 1e-12.
SuiteResult group_law_suite(std::uint64_t seed, int n_cases);

/// Dirichlet pipeline postconditions: b~ = 0, c~/g~ = 1 + 2 sqrt(D~), d~ = 0,
/// and the drift bookkeeping w = (d - 2 s1 q, (beta_alpha+1)(c + beta_alpha g
/// - 2 s1 g)).
SuiteResult pipeline_postcondition_suite(std::uint64_t seed, int n_cases);

/// Quadrature isometry ||T_{0,beta} u||_{L^p_m} = ||u||_{L^p_{m~}} to 1e-6.
SuiteResult isometry_quadrature_suite(std::uint64_t seed, int n_cases);

}  // namespace degenop
