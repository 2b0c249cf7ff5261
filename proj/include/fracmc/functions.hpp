#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracmc/estimators.hpp"

namespace fracmc {

struct OrderRange {
    double low = 0.0;  // exclusive
    double high = std::numeric_limits<double>::infinity();  // exclusive

    bool contains(double alpha) const { return alpha > low && alpha < high; }
};

/// A test function together with its exact fractional derivative and/or
/// integral, both of order alpha with lower terminal 0.
///
/// The pairs come from the Mittag-Leffler rule
///   D^alpha [t^(b-1) E_{d,b}(c t^d)] = t^(b-alpha-1) E_{d,b-alpha}(c t^d),
/// (and the same with -alpha for integrals). Several functions depend on the
/// order itself, so every map takes (alpha, t).
///
/// Registered names (the CLI's --func vocabulary):
///
///   example1[(lambda)]  E_{a,1}(-lambda t^a) - 1, lambda = 0.4 by default.
///                       Derivative t^-a E_{a,1-a}(-lambda t^a) - t^-a / Gamma(1-a).
///                       The constant term is D^a 1 = t^-a / Gamma(1 - a);
///                       a Gamma(1 + a) denominator is off by a visible margin
///                       against gl_deterministic at h = 1e-4 (see the tests).
///   example2            sin t; derivative t^(1-a) E_{2,2-a}(-t^2).
///   example3[(lambda)]  e^(-lambda t) - 1 + lambda t, lambda = 1 by default;
///                       derivative lambda^2 t^(2-a) E_{1,3-a}(-lambda t).
///   example4            t^-a E_{2,1-a}(-t^2), integral cos t.
///   example5            t^(1-a) E_{2,2-a}(-t^2), integral sin t.
///   example6[(nu)]      t^nu / Gamma(nu+1), nu = -0.3 by default;
///                       integral t^(nu+a) / Gamma(nu+a+1).
///   power(nu)           same family as example6 with explicit nu > -1.
///   constant(c)         c on the whole real line: derivative 0,
///                       integral c t^a / Gamma(a + 1).
///   identity            t.
struct TestFunction {
    using OrderMap = std::function<double(double alpha, double t)>;

    std::string name;
    OrderMap value;                 // for t >= 0
    OrderMap exact_derivative;      // empty when not known
    OrderMap exact_integral;        // empty when not known
    bool singular_at_zero = false;
    /// Leading exponent p of f(t) ~ t^p as t -> 0+, as a function of alpha.
    std::function<double(double alpha)> power_at_zero;
    OrderRange valid_order;
    bool whole_line = false;

    bool has_exact_derivative() const { return static_cast<bool>(exact_derivative); }
    bool has_exact_integral() const { return static_cast<bool>(exact_integral); }

    /// The function at a fixed order as an estimator input.
    Evaluand evaluand(double alpha) const;

    /// f(t X) with X continuous Sibuya has infinite variance exactly when
    /// f blows up at 0 at least as fast as t^(-1/2): the density of X is
    /// bounded and positive near 0.
    bool infinite_variance_integrand(double alpha) const;
};

/// DomainError for unknown names, listing the registered ones.
TestFunction lookup(std::string_view name);

std::vector<std::string> registered_names();

}  // namespace fracmc
