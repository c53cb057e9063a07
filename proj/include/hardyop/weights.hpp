#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hardyop {

enum class WeightKind { Fock, PowerFactorial, ExpPower, Custom };

/// Positive weight sequence ζ_n defining the space of entire functions with
/// norm ||g||² = Σ |b_n|² ζ_n².
///
/// Copies share one memo of log ζ_n, filled once per index under a mutex, so a
/// WeightSequence may be read concurrently. Large indices overflow `weight()`
/// to +inf for fast-growing presets; numerics should go through `log_weight()`
/// or `ratio()`.
class WeightSequence {
public:
    using Generator = std::function<long double(std::size_t)>;

    /// ζ_n = sqrt(n!), the Fock space.
    static WeightSequence fock();
    /// ζ_n = (n!)^a, requires a > 1/2.
    static WeightSequence power_factorial(double a);
    /// ζ_n = exp(n^p), requires p > 1.
    static WeightSequence exp_power(double p);
    /// Arbitrary generator; only positivity is checked, on evaluation.
    static WeightSequence custom(std::string label, Generator generator);

    /// Parses "fock", "power_factorial:a=<x>", "exp_power:p=<x>" or
    /// "custom:<expression in n>".
    static WeightSequence parse(std::string_view descriptor);

    WeightKind kind() const;
    /// Preset parameter (a or p); nullopt for Fock and Custom.
    std::optional<double> parameter() const;
    /// Canonical descriptor, round-trips through parse() for presets and expressions.
    const std::string& descriptor() const;

    double weight(std::size_t n) const;
    long double log_weight(std::size_t n) const;
    /// ζ_m / ζ_n computed in log space.
    double ratio(std::size_t m, std::size_t n) const;
    /// 1 / ζ_n².
    double inv_weight_sq(std::size_t n) const;

    struct Impl;

private:
    explicit WeightSequence(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

enum class EntirenessVerdict { Pass, Inconclusive };

struct EntirenessReport {
    struct Sample {
        std::size_t n;
        double root;  // ζ_n^{1/n}
    };
    std::vector<Sample> samples;
    EntirenessVerdict verdict;
};

/// Samples ζ_n^{1/n} at n_max/8, n_max/4, n_max/2 and n_max. Pass when the
/// samples increase strictly and the last one either exceeds 10 or at least
/// doubles the first; otherwise Inconclusive. Requires n_max >= 8.
EntirenessReport entireness_estimate(const WeightSequence& w, std::size_t n_max);

const char* to_string(EntirenessVerdict v);

}  // namespace hardyop
