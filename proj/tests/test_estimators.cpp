#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracmc/errors.hpp"
#include "fracmc/estimators.hpp"
#include "fracmc/functions.hpp"
#include "fracmc/samplers.hpp"
#include "support.hpp"

using namespace fracmc;

namespace {

Evaluand identity_fn() {
    return Evaluand("t", [](double t) { return t; });
}

Evaluand sine() {
    return Evaluand("sin", [](double t) { return std::sin(t); });
}

Evaluand whole_line_constant(double c) {
    return Evaluand("c", [c](double) { return c; }, Evaluand::Extension::whole_line);
}

}  // namespace

TEST_CASE("Evaluand extension") {
    const Evaluand f("one", [](double) { return 1.0; });
    CHECK(f(-1e-300) == 0.0);
    CHECK(f(0.0) == 1.0);
    CHECK(f.zero_extended());
    const auto g = whole_line_constant(2.0);
    CHECK(g(-5.0) == 2.0);
    CHECK_FALSE(g.zero_extended());
}

TEST_CASE("EstimatorConfig validation") {
    EstimatorConfig c;
    CHECK_NOTHROW(c.validate());
    c.h = 0.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.n_samples = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.n_trials = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("summarize") {
    const auto s = summarize({1.0, 2.0, 3.0, 4.0});
    CHECK(s.mean == 2.5);
    CHECK(s.std_error == doctest::Approx(0.6454972243679028).epsilon(1e-14));
    CHECK(s.ci_low == doctest::Approx(2.5 - 1.96 * 0.6454972243679028));
    CHECK(s.ci_high == doctest::Approx(2.5 + 1.96 * 0.6454972243679028));
    CHECK(s.median == 2.5);
    CHECK(s.ci_low <= s.mean);
    CHECK(s.mean <= s.ci_high);

    const auto c = summarize(std::vector<double>(10, 0.7));
    CHECK(c.mean == 0.7);
    CHECK(c.std_error == 0.0);
    CHECK(c.ci_low == 0.7);
    CHECK(c.ci_high == 0.7);
    CHECK_FALSE(c.heavy_tailed);

    CHECK_THROWS_AS(summarize({1.0}), DomainError);

    // One outlier among many: raw kurtosis is about K - 2.
    std::vector<double> spike(1000, 0.0);
    spike[17] = 1.0;
    const auto k = summarize(spike);
    CHECK(k.kurtosis == doctest::Approx(998.001).epsilon(1e-3));
    CHECK(k.heavy_tailed);
}

TEST_CASE("gl_deterministic closed forms") {
    // Zero-extended constant: c h^-alpha (w_0 + ... + w_10).
    const double c = 3.0, h = 0.1, a = 0.5;
    long double w = 1.0L, s = 1.0L;
    for (int k = 1; k <= 10; ++k) {
        w *= (k - 1.0L - a) / k;
        s += w;
    }
    const Evaluand f("c", [c](double) { return c; });
    CHECK(gl_deterministic(f, a, 1.0, h) ==
          doctest::Approx(c * std::pow(h, -a) * static_cast<double>(s)).epsilon(1e-13));
    CHECK(gl_deterministic(f, a, 1.0, h) ==
          doctest::Approx(c * std::pow(h, -a) *
                          static_cast<double>(testing_support::partial_sum_oracle(a, 10)))
              .epsilon(1e-13));

    CHECK(gl_deterministic(identity_fn(), 1.0, 1.0, 0.25) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gl_deterministic(identity_fn(), 2.0, 1.0, 0.25) == doctest::Approx(0.0).epsilon(1e-12));
    const double half = gl_deterministic(identity_fn(), 0.5, 1.0, 0.001);
    CHECK(std::fabs(half / (2.0 / std::sqrt(std::numbers::pi)) - 1.0) < 0.01);

    CHECK_THROWS_AS(gl_deterministic(whole_line_constant(1.0), 0.5, 1.0, 0.1), DomainError);
    CHECK_THROWS_AS(gl_deterministic(identity_fn(), 0.5, 0.0, 0.1), DomainError);
}

TEST_CASE("discretization error is first order") {
    const auto f = lookup("power(2)");
    for (double a : {0.5, 1.5, 2.5, 3.5}) {
        double prev = 0.0;
        for (double h : {0.04, 0.02, 0.01}) {
            const double err = std::fabs(gl_deterministic(f.evaluand(a), a, 1.0, h) -
                                         f.exact_derivative(a, 1.0));
            if (prev > 0.0) {
                INFO("alpha = " << a << ", h = " << h);
                CHECK(prev / err > 1.5);
                CHECK(prev / err < 2.5);
            }
            prev = err;
        }
    }
}

TEST_CASE("constant functions are annihilated exactly") {
    for (double a : {0.5, 1.5, 2.5, 3.5, 4.5, 0.01, 4.99}) {
        const auto part = partition(FractionalOrder(a));
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            UniformSource src(seed);
            INFO("alpha = " << a);
            CHECK(gl_mc_estimate(whole_line_constant(2.7), part, 1.0, 0.01, 1000, src) == 0.0);
        }
    }
}

TEST_CASE("gl_mc_estimate rejects integer orders") {
    UniformSource src(1);
    EstimatorConfig cfg;
    CHECK_THROWS_AS(gl_mc_estimate(sine(), 2.0, 1.0, cfg, src), DomainError);
    CHECK_THROWS_AS(gl_mc_trials(sine(), 2.0, 1.0, cfg), DomainError);
}

TEST_CASE("gl_mc_estimate for 0 < alpha < 1 reduces to the Sibuya form") {
    // h^-a [f(t) - mean f(t - Y h)] with Y drawn from fork(2).
    const double a = 0.3, t = 1.0, h = 0.01;
    const auto part = partition(FractionalOrder(a));
    UniformSource src(99);
    const double est = gl_mc_estimate(identity_fn(), part, t, h, 500, src);
    auto minus = UniformSource(99).fork(2);
    long double sum = 0.0L;
    for (int i = 0; i < 500; ++i) {
        const double x = t - static_cast<double>(sample_sibuya_inverse_cdf(a, minus)) * h;
        sum += (x < 0.0 ? 0.0 : x) - t;
    }
    const double ref = -std::pow(h, -a) * static_cast<double>(sum / 500.0L);
    CHECK(est == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("gl_mc trial mean is unbiased for the GL sum") {
    EstimatorConfig cfg;
    cfg.h = 0.01;
    cfg.n_samples = 10000;
    cfg.n_trials = 50;
    for (double a : {0.5, 1.5, 2.5, 3.5, 4.5}) {
        for (double t : {1.0, 2.0}) {
            const auto s = gl_mc_trials(sine(), a, t, cfg);
            const double det = gl_deterministic(sine(), a, t, cfg.h);
            INFO("alpha = " << a << ", t = " << t << ", mean = " << s.mean << ", det = " << det
                            << ", se = " << s.std_error);
            CHECK(std::fabs(s.mean - det) < 4.0 * s.std_error);
        }
    }
    cfg.n_trials = 20;
    const auto s = gl_mc_trials(identity_fn(), 0.5, 1.0, cfg);
    CHECK(std::fabs(s.mean - gl_deterministic(identity_fn(), 0.5, 1.0, 0.01)) < 4.0 * s.std_error);
}

TEST_CASE("gl_mc for example 2 at alpha = 1.7") {
    const auto f = lookup("example2");
    EstimatorConfig cfg;
    const double a = 1.7, t = 2.0;
    const auto s = gl_mc_trials(f.evaluand(a), a, t, cfg);
    const double exact = f.exact_derivative(a, t);
    const double det = gl_deterministic(f.evaluand(a), a, t, cfg.h);
    CHECK(std::fabs(s.mean - exact) < std::max(4.0 * s.std_error, 2.0 * std::fabs(det - exact)));
}

TEST_CASE("rl integral of a constant is exact") {
    for (double a : {0.3, 1.0, 2.7}) {
        UniformSource src(4);
        const Evaluand one("1", [](double) { return 1.0; });
        const double ref = std::pow(2.0, a) / std::tgamma(a + 1.0);
        CHECK(rl_integral_mc_estimate(one, a, 2.0, 100, src) == doctest::Approx(ref).epsilon(1e-14));
        EstimatorConfig cfg;
        cfg.n_samples = 100;
        cfg.n_trials = 5;
        const auto s = rl_integral_mc_trials(one, a, 2.0, cfg);
        CHECK(s.std_error == 0.0);
        CHECK(s.ci_low == s.ci_high);
    }
}

TEST_CASE("rl integral estimates of the examples") {
    EstimatorConfig cfg;
    cfg.n_trials = 50;
    const auto ex5 = lookup("example5");
    const auto s5 = rl_integral_mc_trials(ex5.evaluand(1.4), 1.4, 2.0, cfg);
    CHECK(std::fabs(s5.mean - std::sin(2.0)) < 4.0 * s5.std_error);

    const auto ex6 = lookup("example6");
    const auto s6 = rl_integral_mc_trials(ex6.evaluand(2.7), 2.7, 1.0, cfg);
    CHECK(std::fabs(s6.mean - 1.0 / std::tgamma(3.4)) < 4.0 * s6.std_error);
}

TEST_CASE("rl integral MC agrees with quadrature for smooth integrands") {
    EstimatorConfig cfg;
    cfg.n_trials = 40;
    for (double a : {0.4, 1.0, 2.2}) {
        for (const char* name : {"example2", "example3", "identity"}) {
            const auto f = lookup(name);
            const auto s = rl_integral_mc_trials(f.evaluand(a), a, 1.5, cfg);
            const double q = rl_integral_quadrature(f.evaluand(a), a, 1.5);
            INFO(name << ", alpha = " << a);
            CHECK(std::fabs(s.mean - q) < 4.0 * s.std_error);
        }
    }
}

TEST_CASE("rl quadrature") {
    const Evaluand one("1", [](double) { return 1.0; });
    CHECK(rl_integral_quadrature(one, 0.5, 1.0) == doctest::Approx(1.0 / std::tgamma(1.5)).epsilon(1e-10));
    CHECK(rl_integral_quadrature(identity_fn(), 1.0, 2.0) == doctest::Approx(2.0).epsilon(1e-10));
    const auto ex4 = lookup("example4");
    for (double t : {0.5, 1.0, 2.0}) {
        CHECK(std::fabs(rl_integral_quadrature(ex4.evaluand(0.6), 0.6, t) - std::cos(t)) < 1e-6);
    }
    CHECK_THROWS_AS(rl_integral_quadrature(one, 0.0, 1.0), DomainError);
}

TEST_CASE("rl MC rejects non-finite integrand values") {
    const Evaluand bad("inf", [](double) { return std::numeric_limits<double>::infinity(); });
    UniformSource src(1);
    CHECK_THROWS_AS(rl_integral_mc_estimate(bad, 0.5, 1.0, 10, src), NonFiniteError);
}

TEST_CASE("run_trials determinism, threads and errors") {
    auto trial = [](UniformSource& src) { return src.next(); };
    const auto a = run_trials(trial, 37, 5, 1);
    const auto b = run_trials(trial, 37, 5, 1);
    const auto c = run_trials(trial, 37, 5, 4);
    CHECK(a.trial_values == b.trial_values);
    CHECK(a.trial_values == c.trial_values);
    CHECK(a.mean == c.mean);
    CHECK(a.std_error == c.std_error);
    CHECK(a.trial_values[3] == UniformSource(5, 3).next());

    CHECK_THROWS_AS(run_trials(trial, 1, 5), DomainError);

    auto failing = [](UniformSource& src) -> double {
        const double u = src.next();
        if (u < 0.5) throw std::runtime_error("low");
        return u;
    };
    std::string serial, parallel;
    try {
        run_trials(failing, 50, 1, 1);
    } catch (const std::runtime_error& e) {
        serial = e.what();
    }
    try {
        run_trials(failing, 50, 1, 3);
    } catch (const std::runtime_error& e) {
        parallel = e.what();
    }
    CHECK(serial == "low");
    CHECK(parallel == "low");

    EstimatorConfig cfg;
    cfg.n_samples = 2000;
    cfg.n_trials = 12;
    cfg.threads = 1;
    const auto s1 = gl_mc_trials(sine(), 2.5, 1.0, cfg);
    cfg.threads = 3;
    const auto s3 = gl_mc_trials(sine(), 2.5, 1.0, cfg);
    CHECK(s1.trial_values == s3.trial_values);
    CHECK(s1.mean == s3.mean);
    CHECK(s1.median == s3.median);
    CHECK(s1.kurtosis == s3.kurtosis);
}
