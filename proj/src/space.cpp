#include "hardyop/space.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "hardyop/error.hpp"

namespace hardyop {

std::size_t default_series_cap() {
    static const std::size_t cap = [] {
        std::size_t value = 4096;
        if (const char* env = std::getenv("HARDYOP_NCAP")) {
            char* end = nullptr;
            unsigned long long parsed = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && parsed > 0) value = static_cast<std::size_t>(parsed);
        }
        return value;
    }();
    return cap;
}

namespace {

// conj(p)^n · exp(log_scale), evaluated in polar form so neither factor overflows.
Complex conj_power_scaled(Complex p, std::size_t n, long double log_scale) {
    if (n == 0) return static_cast<double>(std::exp(log_scale));
    if (p == Complex(0.0)) return 0.0;
    long double mag = std::exp(static_cast<long double>(n) * std::log(static_cast<long double>(std::abs(p))) +
                               log_scale);
    return std::polar(static_cast<double>(mag), -static_cast<double>(n) * std::arg(p));
}

long double kernel_log_magnitude(const EntireFunction::Kernel& k, std::size_t m, const WeightSequence& w) {
    return static_cast<long double>(m) * std::log(static_cast<long double>(std::abs(k.anchor))) +
           w.log_weight(m) - 2.0L * k.weights.log_weight(m);
}

// Sums term(0), term(1), ... until the ratio-test majorant certifies the rest
// below opts.tol. `extra_ok(N)` must also hold before stopping after term N.
template <class Term, class ExtraOk>
SeriesValue sum_series(Term term, const SeriesOptions& opts, std::size_t min_terms, ExtraOk extra_ok,
                       const char* what) {
    SeriesValue out;
    Complex sum = term(0);
    double prev = std::abs(sum);
    for (std::size_t n = 1; n < opts.n_cap; ++n) {
        Complex t = term(n);
        sum += t;
        double cur = std::abs(t);
        if (!std::isfinite(cur)) break;
        double r = prev == 0.0 ? (cur == 0.0 ? 0.0 : INFINITY) : cur / prev;
        prev = cur;
        if (n + 1 < min_terms) continue;
        if (r < 0.5) {
            double bound = cur * r / (1.0 - r);
            if (bound < opts.tol && extra_ok(n + 1)) {
                out.value = sum;
                out.error = bound;
                out.terms = n + 1;
                return out;
            }
        }
    }
    throw NonConvergence(std::string(what) + ": series not certified below tol=" + std::to_string(opts.tol) +
                         " within " + std::to_string(opts.n_cap) + " terms");
}

}  // namespace

EntireFunction EntireFunction::polynomial(std::vector<Complex> coeffs) {
    return EntireFunction(Polynomial{std::move(coeffs)});
}

EntireFunction EntireFunction::basis(std::size_t n, const WeightSequence& w) {
    std::vector<Complex> c(n + 1, 0.0);
    c[n] = static_cast<double>(std::exp(-w.log_weight(n)));
    return polynomial(std::move(c));
}

EntireFunction EntireFunction::kernel(Complex anchor, const WeightSequence& w, Complex scale) {
    return EntireFunction(Kernel{anchor, scale, w});
}

EntireFunction EntireFunction::generated(Generated g) { return EntireFunction(std::move(g)); }

std::optional<long> EntireFunction::degree() const {
    const auto* p = as_polynomial();
    if (!p) return std::nullopt;
    long d = static_cast<long>(p->coeffs.size()) - 1;
    while (d >= 0 && p->coeffs[static_cast<std::size_t>(d)] == Complex(0.0)) --d;
    return d;
}

std::size_t EntireFunction::size() const {
    const auto* p = as_polynomial();
    return p ? p->coeffs.size() : 0;
}

std::size_t EntireFunction::min_terms() const {
    if (const auto* g = std::get_if<Generated>(&rep_)) return g->min_terms;
    return size();
}

Complex EntireFunction::coeff(std::size_t n) const {
    if (const auto* p = as_polynomial()) return n < p->coeffs.size() ? p->coeffs[n] : Complex(0.0);
    if (const auto* k = as_kernel()) return k->scale * conj_power_scaled(k->anchor, n, -2.0L * k->weights.log_weight(n));
    return std::get<Generated>(rep_).coeff(n);
}

Complex EntireFunction::weighted_coeff(std::size_t n, const WeightSequence& w) const {
    if (const auto* p = as_polynomial()) {
        if (n >= p->coeffs.size() || p->coeffs[n] == Complex(0.0)) return 0.0;
        return p->coeffs[n] * static_cast<double>(std::exp(w.log_weight(n)));
    }
    if (const auto* k = as_kernel())
        return k->scale *
               conj_power_scaled(k->anchor, n, w.log_weight(n) - 2.0L * k->weights.log_weight(n));
    return std::get<Generated>(rep_).weighted(n, w);
}

std::optional<double> EntireFunction::tail_bound(std::size_t n, const WeightSequence& w) const {
    if (const auto* p = as_polynomial()) {
        double best = 0.0;
        for (std::size_t m = n; m < p->coeffs.size(); ++m) best = std::max(best, std::abs(weighted_coeff(m, w)));
        return best;
    }
    if (const auto* k = as_kernel()) {
        double s = std::abs(k->scale);
        if (s == 0.0) return 0.0;
        if (k->anchor == Complex(0.0))
            return n == 0 ? s * static_cast<double>(std::exp(w.log_weight(0) - 2.0L * k->weights.log_weight(0)))
                          : 0.0;
        // |p|^m ζ_m / ζ_m² is unimodal for log-convex weights: walk to the peak.
        long double best = kernel_log_magnitude(*k, n, w);
        for (std::size_t m = n + 1; m < n + default_series_cap(); ++m) {
            long double next = kernel_log_magnitude(*k, m, w);
            if (next <= best) break;
            best = next;
        }
        return s * static_cast<double>(std::exp(best));
    }
    const auto& g = std::get<Generated>(rep_);
    if (!g.tail) return std::nullopt;
    return g.tail(n, w);
}

SeriesValue EntireFunction::evaluate(Complex z, const SeriesOptions& opts) const {
    if (const auto* p = as_polynomial()) {
        Complex acc = 0.0;
        for (auto it = p->coeffs.rbegin(); it != p->coeffs.rend(); ++it) acc = acc * z + *it;
        return {acc, 0.0, p->coeffs.size()};
    }
    if (const auto* k = as_kernel()) {
        if (k->scale == Complex(0.0)) return {0.0, 0.0, 0};
        SeriesOptions scaled = opts;
        scaled.tol = opts.tol / std::max(1.0, std::abs(k->scale));
        SeriesValue v = kernel_eval(k->anchor, z, k->weights, scaled);
        v.value *= k->scale;
        v.error *= std::abs(k->scale);
        return v;
    }
    const auto& g = std::get<Generated>(rep_);
    Complex zn = 1.0;
    std::size_t last = 0;
    auto term = [&](std::size_t n) {
        // powers are accumulated incrementally; sum_series asks for n in order
        if (n > last) {
            zn *= z;
            last = n;
        }
        return g.coeff(n) * zn;
    };
    return sum_series(term, opts, g.min_terms, [](std::size_t) { return true; }, "evaluate");
}

EntireFunction EntireFunction::scaled(Complex s) const {
    if (const auto* p = as_polynomial()) {
        auto c = p->coeffs;
        for (auto& v : c) v *= s;
        return polynomial(std::move(c));
    }
    if (const auto* k = as_kernel()) return kernel(k->anchor, k->weights, k->scale * s);
    Generated g = std::get<Generated>(rep_);
    Generated out;
    out.coeff = [c = g.coeff, s](std::size_t n) { return s * c(n); };
    out.weighted = [wc = g.weighted, s](std::size_t n, const WeightSequence& w) { return s * wc(n, w); };
    if (g.tail)
        out.tail = [t = g.tail, s](std::size_t n, const WeightSequence& w) { return std::abs(s) * t(n, w); };
    out.min_terms = g.min_terms;
    return generated(std::move(out));
}

SeriesValue inner_product(const EntireFunction& f, const EntireFunction& g, const WeightSequence& w,
                          const SeriesOptions& opts) {
    auto term = [&](std::size_t n) {
        Complex a = f.weighted_coeff(n, w);
        if (a == Complex(0.0)) return Complex(0.0);
        return a * std::conj(g.weighted_coeff(n, w));
    };
    if (f.is_finite() || g.is_finite()) {
        std::size_t len = f.is_finite() && g.is_finite() ? std::min(f.size(), g.size())
                          : f.is_finite()               ? f.size()
                                                        : g.size();
        Complex sum = 0.0;
        for (std::size_t n = 0; n < len; ++n) sum += term(n);
        return {sum, 0.0, len};
    }
    auto tails_ok = [&](std::size_t n) {
        auto tf = f.tail_bound(n, w);
        auto tg = g.tail_bound(n, w);
        if (!tf || !tg) return true;
        return *tf * *tg < opts.tol;
    };
    return sum_series(term, opts, std::max(f.min_terms(), g.min_terms()), tails_ok, "inner_product");
}

double norm(const EntireFunction& f, const WeightSequence& w, const SeriesOptions& opts) {
    SeriesValue v = inner_product(f, f, w, opts);
    if (std::abs(v.value.imag()) >= std::max(opts.tol, 1e-15 * std::abs(v.value.real())))
        throw ConsistencyError("norm: <f,f> has imaginary residue " + std::to_string(v.value.imag()));
    return std::sqrt(std::max(0.0, v.value.real()));
}

SeriesValue kernel_eval(Complex p, Complex q, const WeightSequence& w, const SeriesOptions& opts) {
    Complex x = std::conj(p) * q;
    long double log_abs = x == Complex(0.0) ? 0.0L : std::log(static_cast<long double>(std::abs(x)));
    double phase = std::arg(x);
    auto term = [&](std::size_t n) -> Complex {
        if (n == 0) return w.inv_weight_sq(0);
        if (x == Complex(0.0)) return 0.0;
        long double mag = std::exp(static_cast<long double>(n) * log_abs - 2.0L * w.log_weight(n));
        return std::polar(static_cast<double>(mag), static_cast<double>(n) * phase);
    };
    return sum_series(term, opts, 0, [](std::size_t) { return true; }, "kernel_eval");
}

SeriesValue reproduce(const EntireFunction& f, Complex p, const WeightSequence& w, const SeriesOptions& opts) {
    return inner_product(f, EntireFunction::kernel(p, w), w, opts);
}

EntireFunction compose_affine(const EntireFunction& f, Complex nu, Complex c) {
    const auto* p = f.as_polynomial();
    if (!p) throw InvalidArgument("compose_affine requires a finite-degree function");
    const auto& b = p->coeffs;
    std::vector<Complex> acc;
    // Horner in the variable (νz + c).
    for (auto it = b.rbegin(); it != b.rend(); ++it) {
        std::vector<Complex> next(acc.size() + 1, 0.0);
        for (std::size_t k = 0; k < acc.size(); ++k) {
            next[k] += acc[k] * c;
            next[k + 1] += acc[k] * nu;
        }
        next[0] += *it;
        acc = std::move(next);
    }
    if (!acc.empty()) acc.resize(b.size());
    return EntireFunction::polynomial(std::move(acc));
}

EntireFunction multiply(const EntireFunction& f, const EntireFunction& g) {
    if (!f.is_finite() && !g.is_finite())
        throw InvalidArgument("multiply requires at least one finite-degree factor");
    if (f.is_finite() && g.is_finite()) {
        const auto& a = f.as_polynomial()->coeffs;
        const auto& b = g.as_polynomial()->coeffs;
        if (a.empty() || b.empty()) return EntireFunction::zero();
        std::vector<Complex> out(a.size() + b.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return EntireFunction::polynomial(std::move(out));
    }
    const EntireFunction& poly = f.is_finite() ? f : g;
    const EntireFunction& series = f.is_finite() ? g : f;
    auto coeffs = poly.as_polynomial()->coeffs;
    EntireFunction::Generated out;
    out.coeff = [coeffs, series](std::size_t n) {
        Complex sum = 0.0;
        for (std::size_t j = 0; j < coeffs.size() && j <= n; ++j)
            if (coeffs[j] != Complex(0.0)) sum += coeffs[j] * series.coeff(n - j);
        return sum;
    };
    out.weighted = [coeffs, series](std::size_t n, const WeightSequence& w) {
        Complex sum = 0.0;
        for (std::size_t j = 0; j < coeffs.size() && j <= n; ++j)
            if (coeffs[j] != Complex(0.0)) sum += coeffs[j] * series.weighted_coeff(n - j, w) * w.ratio(n, n - j);
        return sum;
    };
    out.min_terms = coeffs.size() + 1;
    return EntireFunction::generated(std::move(out));
}

}  // namespace hardyop
