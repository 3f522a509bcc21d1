#pragma once

#include <variant>
#include <vector>

#include "degenop/core.hpp"
#include "degenop/smooth_function.hpp"

namespace degenop {

/// Multiply-and-rescale map (T u)(x,y) = |beta+1|^{1/p} y^k u(x, y^{beta+1}).
struct KelvinStep {
    double k = 0.0;
    double beta = 0.0;  // != -1
    double p = 2.0;     // norm index of the ambient space (prefactor only)
};

/// Shear map (S u)(x,y) = u(x + omega y^{beta+1}, y).
struct ShiftStep {
    double beta = 0.0;  // != -1
    Vector omega;
};

using TransformStep = std::variant<KelvinStep, ShiftStep>;

KelvinStep inverse(const KelvinStep& step);
ShiftStep inverse(const ShiftStep& step);
TransformStep inverse(const TransformStep& step);

/// Pointwise application of L to a smooth function at (x, y), y > 0.
double apply_operator(const OperatorParams& params, const SmoothFunction& u,
                      const Vector& x, double y);

/// Exact value of (X^{-1} L X) u at (x, y) for a single transform step X,
/// assembled through the analytic jets of X u. Used to cross-check the
/// closed-form coefficient maps below.
double conjugated_apply(const TransformStep& step, const OperatorParams& params,
                        const SmoothFunctionPtr& u, const Vector& x, double y);

SmoothFunctionPtr apply_transform(const TransformStep& step, SmoothFunctionPtr u);

/// Coefficient map of T^{-1} L T together with the measure-exponent change
/// m~ = (m + k p - beta)/(beta + 1). The returned operator acts on L^p_{m~}.
std::pair<OperatorParams, SpaceParams> conjugate_by_kelvin(const OperatorParams& params,
                                                           const SpaceParams& space,
                                                           double k, double beta);

/// Indicial covariance under a Kelvin step: D~ = D/(beta+1)^2 and
/// s~ = (s + k)/(beta+1), with the roots swapping when beta + 1 < 0.
IndicialData transform_indicial(const IndicialData& ind, double k, double beta);

/// Monomial operator terms (coefficient, y-power, derivative slot). Output of
/// the general shear conjugation, which leaves the standard coefficient form.
enum class DerivKind { Dxx = 0, DxDy = 1, Dyy = 2, Dx = 3, Dy = 4, Id = 5 };

struct OperatorTerm {
    DerivKind kind = DerivKind::Id;
    double y_power = 0.0;
    Matrix coeff;  // N x N for Dxx, N x 1 for DxDy/Dx, 1 x 1 otherwise
};

struct TermSum {
    int dim_x = 0;
    std::vector<OperatorTerm> terms;

    /// Merge duplicates (same kind and y-power), drop coefficients below
    /// 1e-14, sort by derivative slot then y-power.
    void canonicalize();
    double apply(const Jet2& jet, double y) const;
    static TermSum from_params(const OperatorParams& params);
    bool approx_equal(const TermSum& other, double tol) const;
};

double apply_term_sum(const TermSum& sum, const SmoothFunction& u, const Vector& x,
                      double y);

/// Full term list of S^{-1} L S for an arbitrary shear exponent; contains
/// terms outside the standard coefficient form unless beta = (a1 - a2)/2.
TermSum conjugate_by_shift_general(const OperatorParams& params, double beta,
                                   const Vector& omega);

/// Matched shear beta = (a1 - a2)/2: the conjugate stays in standard form with
/// Q~ = Q + 2(b+1) q âŠ— w + g (b+1)^2 w âŠ— w, q~ = q + g(b+1) w,
/// d~ = d + (c + g b)(b+1) w; everything else unchanged.
OperatorParams conjugate_by_shift_matched(const OperatorParams& params,
                                          const Vector& omega);

/// One stage of a reduction pipeline: the step together with the operator,
/// space and indicial data after applying it.
struct PipelineStage {
    TransformStep step;
    OperatorParams params_after;
    SpaceParams space_after;
    IndicialData indicial_after;
};

struct TransformPipeline {
    OperatorParams source_params;
    SpaceParams source_space;
    IndicialData source_indicial;
    std::vector<PipelineStage> stages;

    bool empty() const { return stages.empty(); }
    const OperatorParams& target_params() const {
        return stages.empty() ? source_params : stages.back().params_after;
    }
    const SpaceParams& target_space() const {
        return stages.empty() ? source_space : stages.back().space_after;
    }
    const IndicialData& target_indicial() const {
        return stages.empty() ? source_indicial : stages.back().indicial_after;
    }
    /// Product of the |beta+1|^{1/p} prefactors over the Kelvin steps.
    double prefactor() const;
};

/// Reduction to canonical form (equal exponents, b = 0, d = 0):
///   [Kelvin(0, beta_alpha)]            when alpha1 != alpha2,
///   [Kelvin(-s1, 0)]                   in dirichlet mode, when s1 != 0,
///   [Shift(0, -d~/c~)]                 when the remaining drift is nonzero.
/// Oblique/neumann mode requires b = 0. Identity steps are skipped.
TransformPipeline reduce_to_canonical(const OperatorParams& params,
                                      const SpaceParams& space, BcKind mode);

}  // namespace degenop
