#include "hardyop/weights.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "hardyop/error.hpp"
#include "hardyop/expression.hpp"

namespace hardyop {

struct WeightSequence::Impl {
    WeightKind kind;
    std::optional<double> parameter;
    std::string descriptor;
    // Returns log ζ_n; presets compute it in closed form so it never overflows.
    std::function<long double(std::size_t)> log_generator;

    mutable std::mutex mutex;
    mutable std::vector<long double> logs;

    long double log_at(std::size_t n) const {
        std::lock_guard lock(mutex);
        while (logs.size() <= n) {
            std::size_t k = logs.size();
            long double v = log_generator(k);
            if (!std::isfinite(static_cast<double>(v)))
                throw InvalidWeight("weight '" + descriptor + "' is not a positive finite number at n=" +
                                    std::to_string(k));
            logs.push_back(v);
        }
        return logs[n];
    }
};

namespace {

std::string format_param(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::shared_ptr<WeightSequence::Impl> make_impl(WeightKind kind, std::optional<double> param,
                                                std::string descriptor,
                                                std::function<long double(std::size_t)> log_gen) {
    auto impl = std::make_shared<WeightSequence::Impl>();
    impl->kind = kind;
    impl->parameter = param;
    impl->descriptor = std::move(descriptor);
    impl->log_generator = std::move(log_gen);
    return impl;
}

long double log_factorial(std::size_t n) { return std::lgamma(static_cast<long double>(n) + 1.0L); }

}  // namespace

WeightSequence WeightSequence::fock() {
    return WeightSequence(make_impl(WeightKind::Fock, std::nullopt, "fock",
                                    [](std::size_t n) { return 0.5L * log_factorial(n); }));
}

WeightSequence WeightSequence::power_factorial(double a) {
    if (!(a > 0.5) || !std::isfinite(a))
        throw InvalidArgument("power_factorial requires a > 1/2, got " + format_param(a));
    long double al = a;
    return WeightSequence(make_impl(WeightKind::PowerFactorial, a, "power_factorial:a=" + format_param(a),
                                    [al](std::size_t n) { return al * log_factorial(n); }));
}

WeightSequence WeightSequence::exp_power(double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw InvalidArgument("exp_power requires p > 1, got " + format_param(p));
    long double pl = p;
    return WeightSequence(make_impl(WeightKind::ExpPower, p, "exp_power:p=" + format_param(p),
                                    [pl](std::size_t n) { return std::pow(static_cast<long double>(n), pl); }));
}

WeightSequence WeightSequence::custom(std::string label, Generator generator) {
    std::string desc = label;
    return WeightSequence(make_impl(
        WeightKind::Custom, std::nullopt, std::move(label), [gen = std::move(generator), desc](std::size_t n) {
            long double v = gen(n);
            if (!(v > 0) || !std::isfinite(static_cast<double>(std::log(v))))
                throw InvalidWeight("weight '" + desc + "' is not a positive finite number at n=" +
                                    std::to_string(n));
            return std::log(v);
        }));
}

WeightSequence WeightSequence::parse(std::string_view descriptor) {
    auto parse_number = [&](std::string_view text, std::string_view key) {
        if (text.substr(0, key.size()) != key)
            throw InvalidArgument("weight descriptor '" + std::string(descriptor) + "': expected '" +
                                  std::string(key) + "'");
        std::string num(text.substr(key.size()));
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(num, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != num.size())
            throw InvalidArgument("weight descriptor '" + std::string(descriptor) + "': malformed number");
        return v;
    };

    if (descriptor == "fock") return fock();
    if (descriptor.starts_with("power_factorial:"))
        return power_factorial(parse_number(descriptor.substr(16), "a="));
    if (descriptor.starts_with("exp_power:")) return exp_power(parse_number(descriptor.substr(10), "p="));
    if (descriptor.starts_with("custom:")) {
        auto expr = Expression::parse(descriptor.substr(7));
        return custom(std::string(descriptor),
                      [expr](std::size_t n) { return expr(static_cast<long double>(n)); });
    }
    throw InvalidArgument("unknown weight descriptor '" + std::string(descriptor) + "'");
}

WeightKind WeightSequence::kind() const { return impl_->kind; }
std::optional<double> WeightSequence::parameter() const { return impl_->parameter; }
const std::string& WeightSequence::descriptor() const { return impl_->descriptor; }

long double WeightSequence::log_weight(std::size_t n) const { return impl_->log_at(n); }

double WeightSequence::weight(std::size_t n) const { return static_cast<double>(std::exp(log_weight(n))); }

double WeightSequence::ratio(std::size_t m, std::size_t n) const {
    return static_cast<double>(std::exp(log_weight(m) - log_weight(n)));
}

double WeightSequence::inv_weight_sq(std::size_t n) const {
    return static_cast<double>(std::exp(-2.0L * log_weight(n)));
}

EntirenessReport entireness_estimate(const WeightSequence& w, std::size_t n_max) {
    if (n_max < 8) throw InvalidArgument("entireness_estimate requires n_max >= 8");
    EntirenessReport report;
    for (std::size_t n : {n_max / 8, n_max / 4, n_max / 2, n_max}) {
        long double root = std::exp(w.log_weight(n) / static_cast<long double>(n));
        report.samples.push_back({n, static_cast<double>(root)});
    }
    bool increasing = true;
    for (std::size_t i = 1; i < report.samples.size(); ++i)
        increasing = increasing && report.samples[i].root > report.samples[i - 1].root;
    double first = report.samples.front().root;
    double last = report.samples.back().root;
    report.verdict = increasing && (last > 10.0 || last >= 2.0 * first) ? EntirenessVerdict::Pass
                                                                         : EntirenessVerdict::Inconclusive;
    return report;
}

const char* to_string(EntirenessVerdict v) { return v == EntirenessVerdict::Pass ? "Pass" : "Inconclusive"; }

}  // namespace hardyop
