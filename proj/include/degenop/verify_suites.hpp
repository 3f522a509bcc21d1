#pragma once

#include "degenop/solver.hpp"

namespace degenop {

/// Curated configurations exercising the solver-side claims; shared by the
/// `verify` CLI command and the acceptance suite.

struct NamedScan {
    std::string name;
    SectorScan scan;
};
struct SectorSuite {
    std::vector<NamedScan> entries;
};
SectorSuite run_sector_suite(int threads = 1);

struct EllipticEntry {
    std::string name;
    EllipticRatios ratios;
};
struct EllipticSuite {
    std::vector<EllipticEntry> oblique;    // bounded second-order and drift ratios
    std::vector<EllipticEntry> dirichlet;  // only the x-second-derivative ratio
    std::vector<double> witness_split;     // per refinement level, expected to grow
};
EllipticSuite run_elliptic_suite();

struct TraceEntry {
    std::string name;
    double exponent = 0.0;              // s2 used in the extrapolation
    std::vector<double> estimates;      // per refinement level
    std::vector<double> confidences;
    bool finite_limit = false;          // D = 0 case: estimates approach a constant
};
struct TraceSuite {
    std::vector<TraceEntry> entries;
};
TraceSuite run_trace_suite();

struct MaxRegEntry {
    std::string name;
    MaxRegReport coarse;  // step tau
    MaxRegReport fine;    // step tau/2
    double rel_change = 0.0;
};
struct MaxRegSuite {
    std::vector<MaxRegEntry> entries;
};
MaxRegSuite run_maxreg_suite();

struct ConvergenceEntry {
    std::string name;
    std::vector<double> errors;  // max-norm against the manufactured solution
    std::vector<double> orders;  // log2 of successive ratios
    double mean_order = 0.0;
};
struct ConvergenceSuite {
    std::vector<ConvergenceEntry> one_d;
    std::vector<ConvergenceEntry> two_d;
};
ConvergenceSuite run_convergence_suite();

struct PipelineVsDirectEntry {
    std::string name;
    std::vector<int> sizes;          // n = nx = ny per level
    std::vector<double> rel_diff;    // relative L^p_m difference per level
};
struct PipelineVsDirectSuite {
    std::vector<PipelineVsDirectEntry> entries;
};
/// Levels n = base, 2 base, ..., up to max_n (acceptance uses 64..256).
PipelineVsDirectSuite run_pipeline_vs_direct_suite(int base_n = 64, int levels = 3);

/// Gaussian forcing bump exp(-((x-cx)/wx)^2 - ((y-cy)/w)^2) sampled on a
/// mesh; wx defaults to w.
GridFunction bump_rhs(const GradedMesh& mesh, double center_y, double width,
                      double center_x = 0.0, double m = 0.0, double p = 2.0,
                      double width_x = 0.0);

}  // namespace degenop
