#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hardyop/space.hpp"
#include "hardyop/weights.hpp"

namespace hardyop {

/// Affine symbol Φ(z) = νz + c.
///
/// |ν| <= 1 is required unless the symbol is built with `unvalidated`, which
/// exists for norm-growth experiments with unbounded composition operators.
class AffineSymbol {
public:
    AffineSymbol(Complex nu, Complex c);
    static AffineSymbol unvalidated(Complex nu, Complex c);

    Complex nu() const { return nu_; }
    Complex c() const { return c_; }
    bool validated() const { return validated_; }
    Complex operator()(Complex z) const { return nu_ * z + c_; }

private:
    AffineSymbol(Complex nu, Complex c, bool validated) : nu_(nu), c_(c), validated_(validated) {}
    Complex nu_;
    Complex c_;
    bool validated_;
};

enum class UpsilonTag { One, Constant, KernelMultiple, General };

struct UpsilonForm {
    UpsilonTag tag = UpsilonTag::One;
    Complex kappa = 1.0;  // Constant
    Complex alpha = 0.0;  // KernelMultiple: Υ = α·K_q
    Complex q = 0.0;
};

/// C_{Υ,Φ} f = Υ·(f∘Φ). Υ ≡ 1 gives the plain composition operator.
class WeightedCompOp {
public:
    static WeightedCompOp composition(AffineSymbol phi);
    static WeightedCompOp with_constant(Complex kappa, AffineSymbol phi);
    static WeightedCompOp with_kernel_multiple(Complex alpha, Complex q, AffineSymbol phi, const WeightSequence& w);
    /// Tagged General unless Υ is a polynomial of degree <= 0.
    static WeightedCompOp general(EntireFunction upsilon, AffineSymbol phi);

    const EntireFunction& upsilon() const { return upsilon_; }
    const AffineSymbol& phi() const { return phi_; }
    const UpsilonForm& form() const { return form_; }
    std::string describe() const;

    /// (C_{Υ,Φ} f) for a finite-degree f.
    EntireFunction apply(const EntireFunction& f) const;

private:
    WeightedCompOp(EntireFunction upsilon, AffineSymbol phi, UpsilonForm form)
        : upsilon_(std::move(upsilon)), phi_(phi), form_(form) {}
    EntireFunction upsilon_;
    AffineSymbol phi_;
    UpsilonForm form_;
};

struct Exactness {
    /// Empty when every column's image is captured by the section; otherwise the
    /// first column whose image leaks more than 1e-14 beyond row N-1.
    std::optional<std::size_t> first_inexact_column;
    bool exact() const { return !first_inexact_column; }
};

/// N×N compression M[k][n] = ⟨T e_n, e_k⟩ with e_n = z^n / ζ_n.
struct OperatorSection {
    std::size_t dim = 0;
    Eigen::MatrixXcd entries;
    Exactness exactness;
    std::string provenance;
};

OperatorSection composition_section(const AffineSymbol& phi, std::size_t n, const WeightSequence& w);
OperatorSection multiplication_section(const EntireFunction& u, std::size_t n, const WeightSequence& w);
OperatorSection weighted_comp_section(const WeightedCompOp& op, std::size_t n, const WeightSequence& w);
OperatorSection adjoint_section(const OperatorSection& s);

/// conj(Υ(z))·K_{Φ(z)}, the adjoint applied to the kernel at z.
EntireFunction adjoint_on_kernel(const WeightedCompOp& op, Complex z, const WeightSequence& w,
                                 const SeriesOptions& opts = {});

struct NormEstimate {
    std::size_t dim;
    double norm;
    bool low_confidence;
};

/// Largest singular value of each section by power iteration on M*M.
std::vector<NormEstimate> section_norm_growth(const WeightedCompOp& op, const std::vector<std::size_t>& dims,
                                              const WeightSequence& w);

/// Largest singular value of a matrix (power iteration, relative tol 1e-8, 500 iterations).
NormEstimate spectral_norm(const Eigen::MatrixXcd& m);

/// First n coordinates of f along e_0, ..., e_{n-1}.
Eigen::VectorXcd basis_coordinates(const EntireFunction& f, std::size_t n, const WeightSequence& w);

}  // namespace hardyop
