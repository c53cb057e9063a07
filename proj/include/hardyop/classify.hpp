#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardyop/operators.hpp"
#include "hardyop/space.hpp"
#include "hardyop/weights.hpp"

namespace hardyop {

enum class Truth { True, False, NecessaryOnly, NotApplicable, Inconclusive };

struct Condition {
    std::string name;
    bool satisfied;
};

/// Outcome of a closed-form characterization.
///
/// NecessaryOnly is used where only one direction is known; `conditions` then
/// lists every necessary condition and whether it holds. The classifier never
/// turns NecessaryOnly into True.
struct SymbolicVerdict {
    Truth truth = Truth::NotApplicable;
    /// Set when the characterization collapses to the zero operator.
    bool zero_operator = false;
    /// Same-valued unitary verdict for the cases where co-isometry and unitarity coincide.
    std::optional<Truth> unitary;
    std::string form;
    std::vector<Condition> conditions;

    bool conditions_hold() const;
};

/// Real and imaginary parts sampled on a square grid; points are x + iy for x, y in `axis`.
struct SampleGrid {
    std::vector<double> axis{-1.5, -0.9, -0.3, 0.3, 0.9, 1.5};
    std::vector<Complex> points() const;
};

struct Tolerances {
    double tol_pass = 1e-9;
    double tol_fail = 1e-4;
    double eval_tol = 1e-12;
};

// Coefficient-level form recognition over the first `terms` coefficients,
// relative 1e-10, ignoring pairs where both sides are below 1e-300.
bool matches_kernel_multiple(const EntireFunction& u, Complex alpha, Complex q, const WeightSequence& w,
                             std::size_t terms = 32);
/// Υ is constant on its first `terms` coefficients.
bool is_constant(const EntireFunction& u, const WeightSequence& w, std::size_t terms = 32);
bool is_zero(const EntireFunction& u, const WeightSequence& w, std::size_t terms = 32);

// Closed-form characterizations.
SymbolicVerdict adjoint_pair_composition(const AffineSymbol& phi1, const AffineSymbol& phi2);
SymbolicVerdict self_adjoint_composition(const AffineSymbol& phi);
SymbolicVerdict co_isometry_composition(const AffineSymbol& phi);
SymbolicVerdict adjoint_pair_weighted(const WeightedCompOp& op1, const WeightedCompOp& op2, const WeightSequence& w,
                                      const SampleGrid& grid = {}, const SeriesOptions& opts = {});
SymbolicVerdict self_adjoint_weighted(const WeightedCompOp& op, const WeightSequence& w);
SymbolicVerdict co_isometry_weighted(const WeightedCompOp& op, const WeightSequence& w,
                                     const SeriesOptions& opts = {});

// Independent numeric verifiers.

/// max |S - S*| over the N×N section.
double numeric_self_adjoint(const WeightedCompOp& op, std::size_t n, const WeightSequence& w);
/// max over grid pairs of |Υ(w) conj(Υ(z)) K_{Φ(z)}(Φ(w)) - K_z(w)|.
double numeric_co_isometry(const WeightedCompOp& op, const WeightSequence& w, const SampleGrid& grid,
                           const SeriesOptions& opts = {});
/// max |S1* - S2| over N×N sections.
double numeric_adjoint_pair(const WeightedCompOp& op1, const WeightedCompOp& op2, std::size_t n,
                            const WeightSequence& w);
/// max |⟨Cf, Cg⟩ - ⟨f, g⟩| over `pairs` random pairs f, g = Σ a_k e_k (k < degree+1, |a_k| <= 1).
double numeric_isometry(const WeightedCompOp& op, const WeightSequence& w, std::uint64_t seed, std::size_t pairs = 8,
                        std::size_t degree = 8, const SeriesOptions& opts = {});
/// Advisory finite-section co-isometry residual max |S S* - I|.
double section_co_isometry_residual(const WeightedCompOp& op, std::size_t n, const WeightSequence& w);

enum class Property { SelfAdjoint, CoIsometry, Unitary, ZeroOperator, AdjointPair };

enum class Agreement { Agree, Disagree, Inconclusive, ParadoxCandidate, NoClaim };

struct NumericEvidence {
    double residual = 0.0;
    std::string method;
    std::size_t dim = 0;
    std::size_t grid_points = 0;
    std::optional<double> advisory;
    /// (N, residual) for every configured dimension.
    std::vector<std::pair<std::size_t, double>> curve;
};

struct PropertyVerdict {
    explicit PropertyVerdict(Property p = Property::SelfAdjoint) : property(p) {}

    Property property;
    std::string partner;  // AdjointPair only
    SymbolicVerdict symbolic;
    NumericEvidence numeric;
    Agreement agreement = Agreement::Inconclusive;
    bool agree() const { return agreement == Agreement::Agree; }
};

struct ClassificationReport {
    std::string op;
    std::vector<PropertyVerdict> verdicts;
    Tolerances tolerances;
    std::string diagnostic;  // set when the operator could not be evaluated
    const PropertyVerdict* find(Property p) const;
};

struct ClassifyConfig {
    Tolerances tolerances;
    std::vector<std::size_t> dims{32};
    SampleGrid grid;
    std::uint64_t seed = 0;
    bool self_adjoint = true;
    bool co_isometry = true;
};

/// Pass/fail judgement of one symbolic verdict against one numeric residual.
Agreement judge(const SymbolicVerdict& v, double residual, const Tolerances& tol);

ClassificationReport classify(const WeightedCompOp& op, const WeightSequence& w, const ClassifyConfig& cfg = {});

/// AdjointPair verdict for (op1, op2): symbolic route plus ||S1* - S2|| at every dim.
PropertyVerdict classify_adjoint_pair(const WeightedCompOp& op1, const WeightedCompOp& op2, const WeightSequence& w,
                                      const ClassifyConfig& cfg = {});

const char* to_string(Truth t);
const char* to_string(Property p);
const char* to_string(Agreement a);

}  // namespace hardyop
