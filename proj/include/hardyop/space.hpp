#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "hardyop/weights.hpp"

namespace hardyop {

using Complex = std::complex<double>;

/// Hard cap on series length. Defaults to 4096; HARDYOP_NCAP overrides it.
std::size_t default_series_cap();

struct SeriesOptions {
    double tol = 1e-12;
    std::size_t n_cap = default_series_cap();
};

/// A truncated series value together with its certified truncation bound.
struct SeriesValue {
    Complex value;
    double error = 0.0;
    std::size_t terms = 0;
};

/// Entire function f(z) = Σ b_n z^n in the monomial basis.
///
/// Three representations share one interface: an exact coefficient list
/// (finite degree), a scaled reproducing kernel s·K_p, and a generated series.
/// Kernels keep a handle to the weights that define them.
class EntireFunction {
public:
    struct Polynomial {
        std::vector<Complex> coeffs;
    };
    struct Kernel {
        Complex anchor;
        Complex scale;
        WeightSequence weights;
    };
    struct Generated {
        std::function<Complex(std::size_t)> coeff;
        /// b_n ζ_n; supplied separately so coefficients below the double range
        /// can still be paired with huge weights.
        std::function<Complex(std::size_t, const WeightSequence&)> weighted;
        /// Optional bound tail(n) >= sup_{m>=n} |b_m| ζ_m, nonincreasing in n.
        std::function<double(std::size_t, const WeightSequence&)> tail;
        /// Truncation is never attempted before this many terms.
        std::size_t min_terms = 0;
    };

    EntireFunction() : rep_(Polynomial{}) {}

    static EntireFunction polynomial(std::vector<Complex> coeffs);
    static EntireFunction constant(Complex value) { return polynomial({value}); }
    static EntireFunction zero() { return polynomial({}); }
    /// Orthonormal basis vector e_n = z^n / ζ_n.
    static EntireFunction basis(std::size_t n, const WeightSequence& w);
    /// scale · K_anchor, with K_p(w) = Σ conj(p)^n w^n / ζ_n².
    static EntireFunction kernel(Complex anchor, const WeightSequence& w, Complex scale = 1.0);
    static EntireFunction generated(Generated g);

    bool is_finite() const { return std::holds_alternative<Polynomial>(rep_); }
    /// Degree of a finite function (-1 for the zero polynomial); nullopt when infinite.
    std::optional<long> degree() const;
    /// Number of stored coefficients for a finite function.
    std::size_t size() const;
    /// Minimum number of terms any truncation of this series must keep.
    std::size_t min_terms() const;

    Complex coeff(std::size_t n) const;
    /// b_n ζ_n, the coordinate along e_n.
    Complex weighted_coeff(std::size_t n, const WeightSequence& w) const;
    /// Bound on sup_{m>=n} |b_m| ζ_m, or nullopt when none is available.
    std::optional<double> tail_bound(std::size_t n, const WeightSequence& w) const;

    const Polynomial* as_polynomial() const { return std::get_if<Polynomial>(&rep_); }
    const Kernel* as_kernel() const { return std::get_if<Kernel>(&rep_); }

    /// Direct power-series evaluation.
    SeriesValue evaluate(Complex z, const SeriesOptions& opts = {}) const;
    Complex operator()(Complex z, const SeriesOptions& opts = {}) const { return evaluate(z, opts).value; }

    EntireFunction scaled(Complex s) const;

private:
    using Rep = std::variant<Polynomial, Kernel, Generated>;
    explicit EntireFunction(Rep rep) : rep_(std::move(rep)) {}
    Rep rep_;
};

/// ⟨f, g⟩ = Σ b_n conj(c_n) ζ_n², truncated once the remaining terms are
/// certified below tol. Exact (error 0) when either side has finite degree.
/// Throws NonConvergence past opts.n_cap.
SeriesValue inner_product(const EntireFunction& f, const EntireFunction& g, const WeightSequence& w,
                          const SeriesOptions& opts = {});

/// ||f||. Throws ConsistencyError when ⟨f,f⟩ has an imaginary part >= tol.
double norm(const EntireFunction& f, const WeightSequence& w, const SeriesOptions& opts = {});

/// K_p(q) = Σ (conj(p) q)^n / ζ_n². Stops at the first N >= 1 where the term
/// ratio r is below 1/2 and the geometric majorant |t_N| r / (1 - r) is below tol.
SeriesValue kernel_eval(Complex p, Complex q, const WeightSequence& w, const SeriesOptions& opts = {});

/// ⟨f, K_p⟩, which equals f(p).
SeriesValue reproduce(const EntireFunction& f, Complex p, const WeightSequence& w,
                      const SeriesOptions& opts = {});

/// f(ν z + c) for a finite-degree f.
EntireFunction compose_affine(const EntireFunction& f, Complex nu, Complex c);

/// Product f·g; at least one factor must have finite degree.
EntireFunction multiply(const EntireFunction& f, const EntireFunction& g);

}  // namespace hardyop
