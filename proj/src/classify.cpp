#include "hardyop/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hardyop/error.hpp"

namespace hardyop {

namespace {

constexpr double kInputTol = 1e-14;
constexpr double kFormRelTol = 1e-10;
constexpr double kNegligible = 1e-300;

bool near_zero(Complex z) { return std::abs(z) < kInputTol; }
bool near_real(Complex z) { return std::abs(z.imag()) < kInputTol * std::max(1.0, std::abs(z)); }
bool is_symbol_linear(const AffineSymbol& phi) { return near_zero(phi.c()); }

SymbolicVerdict make(Truth t, std::string form) {
    SymbolicVerdict v;
    v.truth = t;
    v.form = std::move(form);
    return v;
}

double zeta0_sq(const WeightSequence& w) { return static_cast<double>(std::exp(2.0L * w.log_weight(0))); }

}  // namespace

bool SymbolicVerdict::conditions_hold() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.satisfied; });
}

std::vector<Complex> SampleGrid::points() const {
    std::vector<Complex> out;
    out.reserve(axis.size() * axis.size());
    for (double re : axis)
        for (double im : axis) out.emplace_back(re, im);
    return out;
}

bool matches_kernel_multiple(const EntireFunction& u, Complex alpha, Complex q, const WeightSequence& w,
                             std::size_t terms) {
    EntireFunction expected = EntireFunction::kernel(q, w, alpha);
    for (std::size_t n = 0; n < terms; ++n) {
        Complex a = u.weighted_coeff(n, w);
        Complex e = expected.weighted_coeff(n, w);
        double scale = std::max(std::abs(a), std::abs(e));
        if (scale < kNegligible) continue;
        if (std::abs(a - e) > kFormRelTol * scale) return false;
    }
    return true;
}

bool is_constant(const EntireFunction& u, const WeightSequence& w, std::size_t terms) {
    if (auto d = u.degree()) return *d <= 0;
    double scale = 0.0;
    std::vector<double> mags(terms);
    for (std::size_t n = 0; n < terms; ++n) scale = std::max(scale, mags[n] = std::abs(u.weighted_coeff(n, w)));
    if (scale < kNegligible) return true;
    for (std::size_t n = 1; n < terms; ++n)
        if (mags[n] > kFormRelTol * scale) return false;
    return true;
}

bool is_zero(const EntireFunction& u, const WeightSequence& w, std::size_t terms) {
    for (std::size_t n = 0; n < terms; ++n)
        if (std::abs(u.weighted_coeff(n, w)) >= kNegligible) return false;
    return true;
}

SymbolicVerdict adjoint_pair_composition(const AffineSymbol& phi1, const AffineSymbol& phi2) {
    bool holds = near_zero(phi1.c()) && near_zero(phi2.c()) && near_zero(std::conj(phi1.nu()) - phi2.nu());
    return make(holds ? Truth::True : Truth::False, "c=0, d=0 and conj(mu)=nu");
}

SymbolicVerdict self_adjoint_composition(const AffineSymbol& phi) {
    bool holds = near_zero(phi.c()) && std::abs(phi.nu().imag()) < kInputTol;
    return make(holds ? Truth::True : Truth::False, "c=0 and nu real");
}

SymbolicVerdict co_isometry_composition(const AffineSymbol& phi) {
    bool holds = near_zero(phi.c()) && std::abs(std::abs(phi.nu()) - 1.0) < kInputTol;
    SymbolicVerdict v = make(holds ? Truth::True : Truth::False, "c=0 and |nu|=1");
    v.unitary = v.truth;
    return v;
}

SymbolicVerdict adjoint_pair_weighted(const WeightedCompOp& op1, const WeightedCompOp& op2, const WeightSequence& w,
                                      const SampleGrid& grid, const SeriesOptions& opts) {
    const double z0 = zeta0_sq(w);
    const Complex ups1_0 = op1.upsilon().coeff(0);
    const Complex phi1_0 = op1.phi()(0.0);
    const Complex phi2_0 = op2.phi()(0.0);

    SymbolicVerdict v;
    v.form = "Ups1 = zeta0^2 Ups1(0) K_{Phi2(0)}, Ups2 = zeta0^2 conj(Ups1(0)) K_{Phi1(0)}";
    bool form1 = matches_kernel_multiple(op1.upsilon(), z0 * ups1_0, phi2_0, w);
    bool form2 = matches_kernel_multiple(op2.upsilon(), z0 * std::conj(ups1_0), phi1_0, w);
    v.conditions = {{"Ups1 kernel form", form1}, {"Ups2 kernel form", form2}};
    if (!form1 || !form2) {
        v.truth = Truth::False;
        return v;
    }
    if (std::abs(ups1_0) < kNegligible) {
        v.truth = Truth::True;
        v.zero_operator = true;
        v.form += "; Ups1(0)=0 so both operators vanish";
        return v;
    }
    // Ups1(0) != 0: the two-variable kernel identity decides.
    try {
        auto pts = grid.points();
        std::vector<Complex> k_z_phi2_0(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) k_z_phi2_0[i] = kernel_eval(pts[i], phi2_0, w, opts).value;
        double residual = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Complex phi1_z = op1.phi()(pts[i]);
            for (const Complex& wpt : pts) {
                Complex lhs = k_z_phi2_0[i] * kernel_eval(phi1_z, wpt, w, opts).value;
                Complex rhs = kernel_eval(phi1_0, wpt, w, opts).value * kernel_eval(pts[i], op2.phi()(wpt), w, opts).value;
                residual = std::max(residual, std::abs(lhs - rhs));
            }
        }
        bool ok = residual < 1e-9;
        v.conditions.push_back({"kernel identity on grid", ok});
        v.truth = ok ? Truth::True : Truth::False;
    } catch (const NonConvergence& e) {
        v.truth = Truth::Inconclusive;
        v.form += std::string("; ") + e.what();
    }
    return v;
}

SymbolicVerdict self_adjoint_weighted(const WeightedCompOp& op, const WeightSequence& w) {
    const AffineSymbol& phi = op.phi();
    const EntireFunction& u = op.upsilon();
    const Complex ups0 = u.coeff(0);
    const bool ups_zero = is_zero(u, w);

    if (is_symbol_linear(phi)) {
        SymbolicVerdict v;
        v.form = "Ups = conj(Ups(0)) constant; Ups=0 or nu real";
        if (!is_constant(u, w)) {
            v.truth = Truth::False;
            v.form += "; form-recognition: Ups is not constant";
            return v;
        }
        v.zero_operator = ups_zero;
        v.truth = near_real(ups0) && (ups_zero || std::abs(phi.nu().imag()) < kInputTol) ? Truth::True : Truth::False;
        return v;
    }

    const double z0 = zeta0_sq(w);
    const Complex alpha = z0 * ups0;
    const bool form = matches_kernel_multiple(u, alpha, phi(0.0), w);
    const bool alpha_real = near_real(alpha);

    if (near_zero(phi.nu())) {
        SymbolicVerdict v;
        v.form = "Ups = alpha K_{Phi(0)}, alpha real";
        if (!form) v.form += "; form-recognition: Ups is not a multiple of K_{Phi(0)}";
        v.zero_operator = ups_zero;
        v.truth = form && alpha_real ? Truth::True : Truth::False;
        return v;
    }

    SymbolicVerdict v;
    v.truth = Truth::NecessaryOnly;
    v.form = "Ups = alpha K_{Phi(0)}, alpha real; Ups=0 or nu real";
    v.zero_operator = ups_zero;
    v.conditions = {{"Ups = alpha K_{Phi(0)}", form},
                    {"alpha real", alpha_real},
                    {"Ups(0)=0 or nu real", ups_zero || std::abs(phi.nu().imag()) < kInputTol}};
    return v;
}

SymbolicVerdict co_isometry_weighted(const WeightedCompOp& op, const WeightSequence& w, const SeriesOptions& opts) {
    const AffineSymbol& phi = op.phi();
    const EntireFunction& u = op.upsilon();
    const bool unimodular_nu = std::abs(std::abs(phi.nu()) - 1.0) < kInputTol;

    if (is_symbol_linear(phi)) {
        SymbolicVerdict v;
        v.form = "Ups constant with |Ups|=1 and |nu|=1";
        bool constant = is_constant(u, w);
        if (!constant) v.form += "; form-recognition: Ups is not constant";
        bool holds = constant && std::abs(std::abs(u.coeff(0)) - 1.0) < kInputTol && unimodular_nu;
        v.truth = holds ? Truth::True : Truth::False;
        v.unitary = v.truth;
        return v;
    }
    if (near_zero(phi.nu())) return make(Truth::False, "constant symbol is never a co-isometry");

    // Φ(z) = νz - d with d = -c.
    const Complex d = -phi.c();
    const Complex q = std::conj(phi.nu()) * d;
    SymbolicVerdict v;
    v.truth = Truth::NecessaryOnly;
    v.form = "Ups = alpha K_{conj(nu)d}/||K_{conj(nu)d}||, |alpha|=zeta0, |nu|=1";
    try {
        const double kn = std::sqrt(kernel_eval(q, q, w, opts).value.real());
        const double z0 = zeta0_sq(w);
        const Complex alpha = u.coeff(0) * z0 * kn;
        const double zeta0 = std::sqrt(z0);
        v.conditions = {{"Ups = alpha K_q/||K_q||", matches_kernel_multiple(u, alpha / kn, q, w)},
                        {"|alpha| = zeta0", std::abs(std::abs(alpha) - zeta0) < 1e-10 * std::max(1.0, zeta0)},
                        {"|nu| = 1", unimodular_nu}};
    } catch (const NonConvergence& e) {
        v.truth = Truth::Inconclusive;
        v.form += std::string("; ") + e.what();
    }
    return v;
}

double numeric_self_adjoint(const WeightedCompOp& op, std::size_t n, const WeightSequence& w) {
    OperatorSection s = weighted_comp_section(op, n, w);
    return (s.entries - s.entries.adjoint()).cwiseAbs().maxCoeff();
}

double numeric_co_isometry(const WeightedCompOp& op, const WeightSequence& w, const SampleGrid& grid,
                           const SeriesOptions& opts) {
    auto pts = grid.points();
    std::vector<Complex> ups(pts.size()), img(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ups[i] = op.upsilon().evaluate(pts[i], opts).value;
        img[i] = op.phi()(pts[i]);
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            Complex lhs = ups[j] * std::conj(ups[i]) * kernel_eval(img[i], img[j], w, opts).value;
            Complex rhs = kernel_eval(pts[i], pts[j], w, opts).value;
            residual = std::max(residual, std::abs(lhs - rhs));
        }
    }
    return residual;
}

double numeric_adjoint_pair(const WeightedCompOp& op1, const WeightedCompOp& op2, std::size_t n,
                            const WeightSequence& w) {
    OperatorSection s1 = weighted_comp_section(op1, n, w);
    OperatorSection s2 = weighted_comp_section(op2, n, w);
    return (s1.entries.adjoint() - s2.entries).cwiseAbs().maxCoeff();
}

double numeric_isometry(const WeightedCompOp& op, const WeightSequence& w, std::uint64_t seed, std::size_t pairs,
                        std::size_t degree, const SeriesOptions& opts) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    auto random_poly = [&] {
        std::vector<Complex> c(degree + 1);
        for (std::size_t k = 0; k <= degree; ++k)
            c[k] = std::polar(std::sqrt(radius(rng)), angle(rng)) * static_cast<double>(std::exp(-w.log_weight(k)));
        return EntireFunction::polynomial(std::move(c));
    };
    double residual = 0.0;
    for (std::size_t i = 0; i < pairs; ++i) {
        EntireFunction f = random_poly();
        EntireFunction g = random_poly();
        Complex lhs = inner_product(op.apply(f), op.apply(g), w, opts).value;
        Complex rhs = inner_product(f, g, w, opts).value;
        residual = std::max(residual, std::abs(lhs - rhs));
    }
    return residual;
}

double section_co_isometry_residual(const WeightedCompOp& op, std::size_t n, const WeightSequence& w) {
    OperatorSection s = weighted_comp_section(op, n, w);
    Eigen::MatrixXcd r = s.entries * s.entries.adjoint() -
                         Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    return r.cwiseAbs().maxCoeff();
}

Agreement judge(const SymbolicVerdict& v, double residual, const Tolerances& tol) {
    const bool pass = residual < tol.tol_pass;
    const bool fail = residual > tol.tol_fail;
    switch (v.truth) {
        case Truth::True: return pass ? Agreement::Agree : fail ? Agreement::Disagree : Agreement::Inconclusive;
        case Truth::False: return fail ? Agreement::Agree : pass ? Agreement::Disagree : Agreement::Inconclusive;
        case Truth::NecessaryOnly:
            // Only the forward direction is claimed.
            if (pass) return v.conditions_hold() ? Agreement::Agree : Agreement::ParadoxCandidate;
            if (fail) return v.conditions_hold() ? Agreement::NoClaim : Agreement::Agree;
            return Agreement::Inconclusive;
        case Truth::NotApplicable: return Agreement::NoClaim;
        case Truth::Inconclusive: return Agreement::Inconclusive;
    }
    return Agreement::Inconclusive;
}

const PropertyVerdict* ClassificationReport::find(Property p) const {
    for (const auto& v : verdicts)
        if (v.property == p) return &v;
    return nullptr;
}

namespace {

template <class Fn>
void guarded(PropertyVerdict& pv, Fn&& fn) {
    try {
        fn();
    } catch (const NonConvergence& e) {
        pv.agreement = Agreement::Inconclusive;
        pv.numeric.method += std::string(" [nonconvergence: ") + e.what() + "]";
    }
}

}  // namespace

ClassificationReport classify(const WeightedCompOp& op, const WeightSequence& w, const ClassifyConfig& cfg) {
    if (cfg.dims.empty()) throw InvalidArgument("classify: dims must be nonempty");
    ClassificationReport report;
    report.op = op.describe();
    report.tolerances = cfg.tolerances;
    SeriesOptions opts;
    opts.tol = cfg.tolerances.eval_tol;
    const bool plain = op.form().tag == UpsilonTag::One;
    const std::size_t top = cfg.dims.back();

    if (cfg.self_adjoint) {
        PropertyVerdict pv{Property::SelfAdjoint};
        pv.symbolic = plain ? self_adjoint_composition(op.phi()) : self_adjoint_weighted(op, w);
        pv.numeric.method = "max |S - S*| of the finite section";
        pv.numeric.dim = top;
        guarded(pv, [&] {
            for (std::size_t n : cfg.dims) pv.numeric.curve.emplace_back(n, numeric_self_adjoint(op, n, w));
            pv.numeric.residual = pv.numeric.curve.back().second;
            pv.agreement = judge(pv.symbolic, pv.numeric.residual, cfg.tolerances);
        });
        report.verdicts.push_back(std::move(pv));
    }

    if (cfg.co_isometry) {
        PropertyVerdict co{Property::CoIsometry};
        co.symbolic = plain ? co_isometry_composition(op.phi()) : co_isometry_weighted(op, w, opts);
        co.numeric.method = "kernel identity Ups(w) conj(Ups(z)) K_{Phi(z)}(Phi(w)) = K_z(w) on grid";
        co.numeric.grid_points = cfg.grid.points().size();
        co.numeric.dim = top;
        guarded(co, [&] {
            co.numeric.residual = numeric_co_isometry(op, w, cfg.grid, opts);
            for (std::size_t n : cfg.dims)
                co.numeric.curve.emplace_back(n, section_co_isometry_residual(op, n, w));
            co.numeric.advisory = co.numeric.curve.back().second;
            co.agreement = judge(co.symbolic, co.numeric.residual, cfg.tolerances);
        });

        PropertyVerdict un{Property::Unitary};
        un.symbolic.truth = co.symbolic.unitary.value_or(Truth::NotApplicable);
        un.symbolic.form = co.symbolic.unitary ? "co-isometry and unitary coincide" : "no closed-form claim";
        un.numeric.method = "max(co-isometry kernel residual, isometry residual on random polynomial pairs)";
        un.numeric.grid_points = co.numeric.grid_points;
        guarded(un, [&] {
            double iso = numeric_isometry(op, w, cfg.seed, 8, 8, opts);
            un.numeric.advisory = iso;
            un.numeric.residual = std::max(co.numeric.residual, iso);
            un.agreement = judge(un.symbolic, un.numeric.residual, cfg.tolerances);
        });
        report.verdicts.push_back(std::move(co));
        report.verdicts.push_back(std::move(un));
    }

    PropertyVerdict zero{Property::ZeroOperator};
    zero.symbolic.truth = is_zero(op.upsilon(), w) ? Truth::True : Truth::False;
    zero.symbolic.form = "Ups identically zero";
    zero.numeric.method = "max |S| of the finite section";
    zero.numeric.dim = top;
    guarded(zero, [&] {
        zero.numeric.residual = weighted_comp_section(op, top, w).entries.cwiseAbs().maxCoeff();
        zero.agreement = judge(zero.symbolic, zero.numeric.residual, cfg.tolerances);
    });
    report.verdicts.push_back(std::move(zero));
    return report;
}

PropertyVerdict classify_adjoint_pair(const WeightedCompOp& op1, const WeightedCompOp& op2, const WeightSequence& w,
                                      const ClassifyConfig& cfg) {
    if (cfg.dims.empty()) throw InvalidArgument("classify_adjoint_pair: dims must be nonempty");
    SeriesOptions opts;
    opts.tol = cfg.tolerances.eval_tol;
    PropertyVerdict pv{Property::AdjointPair};
    pv.partner = op2.describe();
    const bool plain = op1.form().tag == UpsilonTag::One && op2.form().tag == UpsilonTag::One;
    pv.symbolic = plain ? adjoint_pair_composition(op1.phi(), op2.phi())
                        : adjoint_pair_weighted(op1, op2, w, cfg.grid, opts);
    pv.numeric.method = "max |S1* - S2| of the finite sections";
    pv.numeric.dim = cfg.dims.back();
    guarded(pv, [&] {
        for (std::size_t n : cfg.dims) pv.numeric.curve.emplace_back(n, numeric_adjoint_pair(op1, op2, n, w));
        pv.numeric.residual = pv.numeric.curve.back().second;
        pv.agreement = judge(pv.symbolic, pv.numeric.residual, cfg.tolerances);
    });
    return pv;
}

const char* to_string(Truth t) {
    switch (t) {
        case Truth::True: return "True";
        case Truth::False: return "False";
        case Truth::NecessaryOnly: return "NecessaryOnly";
        case Truth::NotApplicable: return "NotApplicable";
        case Truth::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(Property p) {
    switch (p) {
        case Property::SelfAdjoint: return "SelfAdjoint";
        case Property::CoIsometry: return "CoIsometry";
        case Property::Unitary: return "Unitary";
        case Property::ZeroOperator: return "ZeroOperator";
        case Property::AdjointPair: return "AdjointPair";
    }
    return "?";
}

const char* to_string(Agreement a) {
    switch (a) {
        case Agreement::Agree: return "Agree";
        case Agreement::Disagree: return "Disagree";
        case Agreement::Inconclusive: return "Inconclusive";
        case Agreement::ParadoxCandidate: return "ParadoxCandidate";
        case Agreement::NoClaim: return "NoClaim";
    }
    return "?";
}

}  // namespace hardyop
