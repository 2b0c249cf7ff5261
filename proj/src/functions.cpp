#include "fracmc/functions.hpp"

#include <charconv>
#include <cmath>

#include "fracmc/errors.hpp"
#include "fracmc/special_functions.hpp"

namespace fracmc {
namespace {

constexpr double kExample1Lambda = 0.4;
constexpr double kExample3Lambda = 1.0;
constexpr double kExample6Nu = -0.3;

struct ParsedName {
    std::string base;
    std::optional<double> argument;
};

ParsedName parse_name(std::string_view text) {
    const auto open = text.find('(');
    if (open == std::string_view::npos) return {std::string(text), std::nullopt};
    if (text.back() != ')') throw DomainError("malformed function name '" + std::string(text) + "'");
    const std::string_view inner = text.substr(open + 1, text.size() - open - 2);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), value);
    if (ec != std::errc() || ptr != inner.data() + inner.size() || !std::isfinite(value)) {
        throw DomainError("malformed parameter in '" + std::string(text) + "'");
    }
    return {std::string(text.substr(0, open)), value};
}

std::string unknown_name_message(std::string_view name) {
    std::string msg = "unknown function '" + std::string(name) + "'; registered:";
    for (const auto& n : registered_names()) msg += " " + n;
    return msg;
}

TestFunction example1(double lambda) {
    TestFunction f;
    f.name = "example1";
    f.value = [lambda](double a, double t) {
        return mittag_leffler(a, 1.0, -lambda * std::pow(t, a)) - 1.0;
    };
    f.exact_derivative = [lambda](double a, double t) {
        const double ml = mittag_leffler(a, 1.0 - a, -lambda * std::pow(t, a));
        return std::pow(t, -a) * (ml - reciprocal_gamma(1.0 - a));
    };
    f.power_at_zero = [](double a) { return a; };
    f.valid_order = {0.0, 1.0};
    return f;
}

TestFunction example2() {
    TestFunction f;
    f.name = "example2";
    f.value = [](double, double t) { return std::sin(t); };
    f.exact_derivative = [](double a, double t) {
        return std::pow(t, 1.0 - a) * mittag_leffler(2.0, 2.0 - a, -t * t);
    };
    f.exact_integral = [](double a, double t) {
        return std::pow(t, 1.0 + a) * mittag_leffler(2.0, 2.0 + a, -t * t);
    };
    f.power_at_zero = [](double) { return 1.0; };
    f.valid_order = {0.0, 5.0};
    return f;
}

TestFunction example3(double lambda) {
    TestFunction f;
    f.name = "example3";
    f.value = [lambda](double, double t) { return std::expm1(-lambda * t) + lambda * t; };
    f.exact_derivative = [lambda](double a, double t) {
        return lambda * lambda * std::pow(t, 2.0 - a) * mittag_leffler(1.0, 3.0 - a, -lambda * t);
    };
    f.exact_integral = [lambda](double a, double t) {
        return lambda * lambda * std::pow(t, 2.0 + a) * mittag_leffler(1.0, 3.0 + a, -lambda * t);
    };
    f.power_at_zero = [](double) { return 2.0; };
    f.valid_order = {0.0, 5.0};
    return f;
}

TestFunction example4() {
    TestFunction f;
    f.name = "example4";
    f.value = [](double a, double t) {
        return std::pow(t, -a) * mittag_leffler(2.0, 1.0 - a, -t * t);
    };
    f.exact_integral = [](double, double t) { return std::cos(t); };
    f.singular_at_zero = true;
    f.power_at_zero = [](double a) { return -a; };
    f.valid_order = {0.0, 1.0};
    return f;
}

TestFunction example5() {
    TestFunction f;
    f.name = "example5";
    f.value = [](double a, double t) {
        return std::pow(t, 1.0 - a) * mittag_leffler(2.0, 2.0 - a, -t * t);
    };
    f.exact_integral = [](double, double t) { return std::sin(t); };
    f.singular_at_zero = true;
    f.power_at_zero = [](double a) { return 1.0 - a; };
    f.valid_order = {0.0, 2.0};
    return f;
}

TestFunction power(std::string name, double nu) {
    if (!(nu > -1.0)) throw DomainError("power: nu must exceed -1");
    TestFunction f;
    f.name = std::move(name);
    f.value = [nu](double, double t) { return std::pow(t, nu) * reciprocal_gamma(nu + 1.0); };
    f.exact_derivative = [nu](double a, double t) {
        return std::pow(t, nu - a) * reciprocal_gamma(nu - a + 1.0);
    };
    f.exact_integral = [nu](double a, double t) {
        return std::pow(t, nu + a) * reciprocal_gamma(nu + a + 1.0);
    };
    f.singular_at_zero = nu < 0.0;
    f.power_at_zero = [nu](double) { return nu; };
    return f;
}

TestFunction constant(double c) {
    TestFunction f;
    f.name = "constant";
    f.value = [c](double, double) { return c; };
    f.exact_derivative = [](double, double) { return 0.0; };
    f.exact_integral = [c](double a, double t) {
        return c * std::pow(t, a) * reciprocal_gamma(a + 1.0);
    };
    f.power_at_zero = [](double) { return 0.0; };
    f.whole_line = true;
    return f;
}

TestFunction identity() {
    TestFunction f;
    f.name = "identity";
    f.value = [](double, double t) { return t; };
    f.exact_derivative = [](double a, double t) {
        return std::pow(t, 1.0 - a) * reciprocal_gamma(2.0 - a);
    };
    f.exact_integral = [](double a, double t) {
        return std::pow(t, 1.0 + a) * reciprocal_gamma(2.0 + a);
    };
    f.power_at_zero = [](double) { return 1.0; };
    return f;
}

}  // namespace

Evaluand TestFunction::evaluand(double alpha) const {
    auto fn = [value = value, alpha](double t) { return value(alpha, t); };
    return Evaluand(name, std::move(fn),
                    whole_line ? Evaluand::Extension::whole_line
                               : Evaluand::Extension::zero_for_negative);
}

bool TestFunction::infinite_variance_integrand(double alpha) const {
    return singular_at_zero && power_at_zero && power_at_zero(alpha) <= -0.5;
}

std::vector<std::string> registered_names() {
    return {"example1", "example2", "example3", "example4", "example5",
            "example6", "power(nu)", "constant(c)", "identity"};
}

TestFunction lookup(std::string_view name) {
    const auto parsed = parse_name(name);
    const auto& base = parsed.base;
    const auto& arg = parsed.argument;

    auto no_argument = [&] {
        if (arg) throw DomainError("function '" + base + "' takes no parameter");
    };
    auto required = [&]() -> double {
        if (!arg) throw DomainError("function '" + base + "' needs a parameter, e.g. " + base + "(1)");
        return *arg;
    };

    if (base == "example1") return example1(arg.value_or(kExample1Lambda));
    if (base == "example2") return no_argument(), example2();
    if (base == "example3") return example3(arg.value_or(kExample3Lambda));
    if (base == "example4") return no_argument(), example4();
    if (base == "example5") return no_argument(), example5();
    if (base == "example6") return power("example6", arg.value_or(kExample6Nu));
    if (base == "power") return power("power", required());
    if (base == "constant") return constant(required());
    if (base == "identity") return no_argument(), identity();
    throw DomainError(unknown_name_message(name));
}

}  // namespace fracmc
