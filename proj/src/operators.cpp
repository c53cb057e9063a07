#include "hardyop/operators.hpp"

#include <cmath>
#include <sstream>

#include "hardyop/error.hpp"

namespace hardyop {

namespace {

using ComplexL = std::complex<long double>;

ComplexL int_power(ComplexL base, std::size_t e) {
    ComplexL result = 1.0L;
    while (e > 0) {
        if (e & 1U) result *= base;
        base *= base;
        e >>= 1U;
    }
    return result;
}

std::string format_complex(Complex z) {
    std::ostringstream os;
    os.precision(6);
    os << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
    return os.str();
}

// Entry u_j ζ_m / ζ_n of the multiplication operator, j = m - n.
Complex multiplier_entry(const EntireFunction& u, std::size_t m, std::size_t n, const WeightSequence& w) {
    std::size_t j = m - n;
    Complex wc = u.weighted_coeff(j, w);
    if (wc == Complex(0.0)) return 0.0;
    return wc * static_cast<double>(std::exp(w.log_weight(m) - w.log_weight(n) - w.log_weight(j)));
}

// ||(I - P_N) M_u e_n|| for an infinite-degree u.
double column_leak(const EntireFunction& u, std::size_t n, std::size_t dim, const WeightSequence& w) {
    double sum = 0.0;
    double prev = INFINITY;
    for (std::size_t m = dim; m < dim + default_series_cap(); ++m) {
        double t = std::norm(multiplier_entry(u, m, n, w));
        if (!std::isfinite(t)) return INFINITY;
        sum += t;
        if (t < 0.25 * prev && t < 1e-40 * std::max(sum, 1e-300)) break;
        if (t == 0.0 && prev == 0.0) break;
        prev = t;
    }
    return std::sqrt(sum);
}

}  // namespace

AffineSymbol::AffineSymbol(Complex nu, Complex c) : AffineSymbol(nu, c, true) {
    if (std::abs(nu) > 1.0 + 1e-14)
        throw InvalidArgument("affine symbol requires |nu| <= 1, got |nu| = " + std::to_string(std::abs(nu)));
}

AffineSymbol AffineSymbol::unvalidated(Complex nu, Complex c) { return AffineSymbol(nu, c, false); }

WeightedCompOp WeightedCompOp::composition(AffineSymbol phi) {
    return WeightedCompOp(EntireFunction::constant(1.0), phi, UpsilonForm{UpsilonTag::One, 1.0, 0.0, 0.0});
}

WeightedCompOp WeightedCompOp::with_constant(Complex kappa, AffineSymbol phi) {
    return WeightedCompOp(EntireFunction::constant(kappa), phi, UpsilonForm{UpsilonTag::Constant, kappa, 0.0, 0.0});
}

WeightedCompOp WeightedCompOp::with_kernel_multiple(Complex alpha, Complex q, AffineSymbol phi,
                                                    const WeightSequence& w) {
    return WeightedCompOp(EntireFunction::kernel(q, w, alpha), phi,
                          UpsilonForm{UpsilonTag::KernelMultiple, 0.0, alpha, q});
}

WeightedCompOp WeightedCompOp::general(EntireFunction upsilon, AffineSymbol phi) {
    UpsilonForm form{UpsilonTag::General, 0.0, 0.0, 0.0};
    if (auto d = upsilon.degree(); d && *d <= 0) {
        Complex k = upsilon.coeff(0);
        form = k == Complex(1.0) ? UpsilonForm{UpsilonTag::One, 1.0, 0.0, 0.0}
                                 : UpsilonForm{UpsilonTag::Constant, k, 0.0, 0.0};
    }
    return WeightedCompOp(std::move(upsilon), phi, form);
}

std::string WeightedCompOp::describe() const {
    std::string phi = "Phi(z)=" + format_complex(phi_.nu()) + "z+" + format_complex(phi_.c());
    switch (form_.tag) {
        case UpsilonTag::One: return "C[" + phi + "]";
        case UpsilonTag::Constant: return "C[Ups=" + format_complex(form_.kappa) + ", " + phi + "]";
        case UpsilonTag::KernelMultiple:
            return "C[Ups=" + format_complex(form_.alpha) + "*K_" + format_complex(form_.q) + ", " + phi + "]";
        case UpsilonTag::General: break;
    }
    std::string ups = upsilon_.is_finite() ? "poly(deg " + std::to_string(*upsilon_.degree()) + ")" : "series";
    return "C[Ups=" + ups + ", " + phi + "]";
}

EntireFunction WeightedCompOp::apply(const EntireFunction& f) const {
    return multiply(upsilon_, compose_affine(f, phi_.nu(), phi_.c()));
}

OperatorSection composition_section(const AffineSymbol& phi, std::size_t n, const WeightSequence& w) {
    if (n == 0) throw InvalidArgument("section dimension must be >= 1");
    OperatorSection s;
    s.dim = n;
    s.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    s.provenance = WeightedCompOp::composition(phi).describe();
    const ComplexL nu(phi.nu().real(), phi.nu().imag());
    const ComplexL c(phi.c().real(), phi.c().imag());
    std::vector<ComplexL> nu_pow(n), c_pow(n);
    for (std::size_t k = 0; k < n; ++k) {
        nu_pow[k] = int_power(nu, k);
        c_pow[k] = int_power(c, k);
    }
    for (std::size_t col = 0; col < n; ++col) {
        // binom(col, k) by the multiplicative recurrence in extended precision
        long double binom = 1.0L;
        for (std::size_t k = 0; k <= col; ++k) {
            if (k > 0) binom = binom * static_cast<long double>(col - k + 1) / static_cast<long double>(k);
            ComplexL pw = nu_pow[k] * c_pow[col - k];
            if (pw == ComplexL(0.0L)) continue;
            long double scale = std::exp(w.log_weight(k) - w.log_weight(col)) * binom;
            ComplexL v = scale * pw;
            s.entries(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(col)) =
                Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
        }
    }
    return s;
}

OperatorSection multiplication_section(const EntireFunction& u, std::size_t n, const WeightSequence& w) {
    if (n == 0) throw InvalidArgument("section dimension must be >= 1");
    OperatorSection s;
    s.dim = n;
    s.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    s.provenance = "multiplication";
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t row = col; row < n; ++row)
            s.entries(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = multiplier_entry(u, row, col, w);
    if (!u.is_finite()) {
        for (std::size_t col = 0; col < n; ++col) {
            if (column_leak(u, col, n, w) > 1e-14) {
                s.exactness.first_inexact_column = col;
                break;
            }
        }
    }
    return s;
}

OperatorSection weighted_comp_section(const WeightedCompOp& op, std::size_t n, const WeightSequence& w) {
    // C_Φ maps span{e_0..e_{n-1}} into itself, so the compression of M_Υ C_Φ
    // factors exactly as P M_Υ P · P C_Φ P.
    OperatorSection comp = composition_section(op.phi(), n, w);
    if (op.form().tag == UpsilonTag::One) {
        comp.provenance = op.describe();
        return comp;
    }
    OperatorSection mult = multiplication_section(op.upsilon(), n, w);
    OperatorSection s;
    s.dim = n;
    s.entries = mult.entries * comp.entries;
    s.exactness = mult.exactness;
    s.provenance = op.describe();
    return s;
}

OperatorSection adjoint_section(const OperatorSection& s) {
    OperatorSection out;
    out.dim = s.dim;
    out.entries = s.entries.adjoint();
    out.exactness = s.exactness;
    out.provenance = "adjoint of " + s.provenance;
    return out;
}

EntireFunction adjoint_on_kernel(const WeightedCompOp& op, Complex z, const WeightSequence& w,
                                 const SeriesOptions& opts) {
    Complex ups = op.upsilon().evaluate(z, opts).value;
    return EntireFunction::kernel(op.phi()(z), w, std::conj(ups));
}

NormEstimate spectral_norm(const Eigen::MatrixXcd& m) {
    const auto n = m.cols();
    NormEstimate est{static_cast<std::size_t>(n), 0.0, false};
    if (n == 0) return est;
    Eigen::MatrixXcd gram = m.adjoint() * m;
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + static_cast<double>(i) / static_cast<double>(n);
    v.normalize();
    double lambda = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 500; ++iter) {
        Eigen::VectorXcd next = gram * v;
        double nv = next.norm();
        if (nv == 0.0) {
            converged = true;
            lambda = 0.0;
            break;
        }
        double prev = lambda;
        lambda = nv;
        v = next / nv;
        if (iter > 0 && std::abs(lambda - prev) <= 1e-8 * lambda) {
            converged = true;
            break;
        }
    }
    est.norm = std::sqrt(lambda);
    est.low_confidence = !converged;
    return est;
}

std::vector<NormEstimate> section_norm_growth(const WeightedCompOp& op, const std::vector<std::size_t>& dims,
                                              const WeightSequence& w) {
    for (std::size_t i = 1; i < dims.size(); ++i)
        if (dims[i] <= dims[i - 1]) throw InvalidArgument("section_norm_growth: dims must be increasing");
    std::vector<NormEstimate> out;
    for (std::size_t d : dims) {
        NormEstimate e = spectral_norm(weighted_comp_section(op, d, w).entries);
        e.dim = d;
        out.push_back(e);
    }
    return out;
}

Eigen::VectorXcd basis_coordinates(const EntireFunction& f, std::size_t n, const WeightSequence& w) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) v(static_cast<Eigen::Index>(k)) = f.weighted_coeff(k, w);
    return v;
}

}  // namespace hardyop
