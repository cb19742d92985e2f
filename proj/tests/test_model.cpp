#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "endex/model.hpp"

using namespace endex;

namespace {
const ModelParams defaults{};
const KineticParams& kin = defaults.kinetics;
}  // namespace

TEST_CASE("rate constant: Arrhenius form") {
    // frozen scalar oracle: 114*exp(-205000/(8.314*T))
    CHECK(rate_constant(1060.0, kin) == doctest::Approx(9.0065348051625839e-9).epsilon(1e-12));
    CHECK(rate_constant(1123.0, kin) == doctest::Approx(3.3212128251275716e-8).epsilon(1e-12));
    // T -> infinity: exponent vanishes, k -> A
    CHECK(rate_constant(1e15, kin) == doctest::Approx(114.0).epsilon(1e-9));

    std::mt19937 rng(42);
    std::uniform_real_distribution<double> temp(300.0, 2000.0);
    for (int i = 0; i < 200; ++i) {
        const double a = temp(rng), b = temp(rng);
        if (a == b) continue;
        const double lo = std::min(a, b), hi = std::max(a, b);
        CHECK(rate_constant(lo, kin) < rate_constant(hi, kin));
    }

    CHECK_THROWS_AS(rate_constant(std::numeric_limits<double>::quiet_NaN(), kin), DomainError);
    CHECK_THROWS_AS(rate_constant(-5.0, kin), DomainError);
}

TEST_CASE("equilibrium pressure") {
    // frozen scalar oracle: 4.147e12*exp(-170000/(8.314*T)) Pa
    CHECK(equilibrium_pressure(1060.0, kin) == doctest::Approx(17385.127790474953).epsilon(1e-12));
    // near-atmospheric at the conventional calcination temperature
    CHECK(equilibrium_pressure(1170.0, kin) == doctest::Approx(106613.29633556215).epsilon(1e-12));
    CHECK(equilibrium_pressure(1e15, kin) == doctest::Approx(4.147e12).epsilon(1e-9));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> temp(300.0, 2000.0);
    for (int i = 0; i < 200; ++i) {
        const double a = temp(rng), b = temp(rng);
        if (a == b) continue;
        CHECK(equilibrium_pressure(std::min(a, b), kin) <
              equilibrium_pressure(std::max(a, b), kin));
    }

    CHECK_THROWS_AS(equilibrium_pressure(std::numeric_limits<double>::infinity(), kin),
                    DomainError);
}

TEST_CASE("pressure of a concentration") {
    CHECK(pressure_of(0.0, 1000.0) == 0.0);
    CHECK(pressure_of(24.3, 1060.0) == doctest::Approx(214152.012).epsilon(1e-14));

    // round trip is an algebraic identity
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> pres(0.0, 5e5), temp(300.0, 2000.0);
    for (int i = 0; i < 100; ++i) {
        const double p = pres(rng), T = temp(rng);
        CHECK(pressure_of(p / (kGasConstant * T), T) == doctest::Approx(p).epsilon(1e-15));
    }

    CHECK_THROWS_AS(pressure_of(-1.0, 1000.0), DomainError);
}

TEST_CASE("Langmuir coverage") {
    CHECK(coverage(0.0, 1e4) == 0.0);
    CHECK(coverage(1e4, 1e4) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(coverage(4e4, 1e4) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    // theta in [0,1), monotone in p
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> pres(0.0, 1e7);
    double prev_p = 0.0, prev_theta = 0.0;
    std::vector<double> ps;
    for (int i = 0; i < 300; ++i) ps.push_back(pres(rng));
    std::sort(ps.begin(), ps.end());
    for (double p : ps) {
        const double th = coverage(p, 1e4);
        CHECK(th >= 0.0);
        CHECK(th < 1.0);
        if (p > prev_p) CHECK(th >= prev_theta);
        prev_p = p;
        prev_theta = th;
    }

    CHECK_THROWS_AS(coverage(-1.0, 1e4), DomainError);
}

TEST_CASE("carbonation rate") {
    const SegmentParams& carb = defaults.carboniser;

    const double peq = equilibrium_pressure(1060.0, kin);
    CHECK(carbonation_rate(1060.0, peq, kin, carb) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(carbonation_rate(1060.0, 0.0, kin, carb) == 0.0);  // theta = 0 kills the -1 term

    // frozen composition oracle at T = 1060 K, p = 0.2 MPa
    CHECK(carbonation_rate(1060.0, 2.0e5, kin, carb) ==
          doctest::Approx(0.93156443993242503).epsilon(1e-12));

    // sign equals sign of (p - p_eq) whenever theta > 0
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> temp(700.0, 1400.0), pres(1.0, 5e5);
    for (int i = 0; i < 300; ++i) {
        const double T = temp(rng), p = pres(rng);
        const double v = carbonation_rate(T, p, kin, carb);
        const double drive = p - equilibrium_pressure(T, kin);
        if (drive > 0.0) CHECK(v > 0.0);
        if (drive < 0.0) CHECK(v < 0.0);
    }
}

TEST_CASE("calcination rate") {
    const SegmentParams& calc = defaults.calciner;

    const double peq = equilibrium_pressure(1021.0, kin);
    CHECK(calcination_rate(1021.0, peq, kin, calc) == doctest::Approx(0.0).epsilon(1e-12));

    // p = 0: both bracketed factors equal one
    const double vmax = kin.porosity * rate_constant(1021.0, kin) * calc.solid_fraction *
                        kin.surface_area * kin.rate_scale;
    CHECK(calcination_rate(1021.0, 0.0, kin, calc) == doctest::Approx(vmax).epsilon(1e-15));

    // frozen composition oracle at T = 1021 K, p = 0.005 MPa
    CHECK(calcination_rate(1021.0, 5.0e3, kin, calc) ==
          doctest::Approx(1.6988281386423571e-4).epsilon(1e-12));

    // positive iff p < p_eq
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> temp(700.0, 1400.0), pres(1.0, 5e5);
    for (int i = 0; i < 300; ++i) {
        const double T = temp(rng), p = pres(rng);
        const double v = calcination_rate(T, p, kin, calc);
        const double drive = equilibrium_pressure(T, kin) - p;
        if (drive > 0.0) CHECK(v > 0.0);
        if (drive < 0.0) CHECK(v < 0.0);
    }
}

TEST_CASE("endex rhs: pure flow terms when both rates vanish") {
    ModelParams P;
    const double T1 = 1050.0, T2 = 1000.0;
    // place both partial pressures exactly on their equilibrium values
    const double c1 = equilibrium_pressure(T1, P.kinetics) / (kGasConstant * T1);
    const double c2 = equilibrium_pressure(T2, P.kinetics) / (kGasConstant * T2);
    const auto d = endex_rhs({c1, T1, c2, T2}, P);
    CHECK(d[0] == doctest::Approx((P.c1_in() - c1) / P.flow.tau1).epsilon(1e-12));
    CHECK(d[2] == doctest::Approx(-c2 / P.flow.tau2).epsilon(1e-12));
}

TEST_CASE("endex rhs decouples to the standalone carboniser at Fs = Lex = 0") {
    ModelParams P;
    P.flow.solids_flow = 0.0;
    P.flow.wall_exchange = 0.0;

    std::mt19937 rng(21);
    std::uniform_real_distribution<double> conc(0.0, 30.0), temp(900.0, 1300.0);
    for (int i = 0; i < 50; ++i) {
        const EndexState s{conc(rng), temp(rng), conc(rng), temp(rng)};
        const auto de = endex_rhs(s, P);
        const auto ds = standalone_rhs({s.c1, s.T1}, P);
        // bitwise: the carboniser block shares one code path
        CHECK(de[0] == ds[0]);
        CHECK(de[1] == ds[1]);
    }
}

TEST_CASE("standalone rhs: gas-flow enthalpy term only") {
    ModelParams P;
    P.flow.solids_flow = 0.0;
    const double T1 = 1100.0;
    const double c1 = equilibrium_pressure(T1, P.kinetics) / (kGasConstant * T1);  // v1 = 0
    const auto d = standalone_rhs({c1, T1}, P);
    const double expect = P.carboniser.gas_heat_capacity *
                          (P.flow.inlet_gas_temperature - T1) /
                          (P.flow.tau1 * P.carboniser.contents_heat_capacity);
    CHECK(d[1] == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("standalone rhs: thermal equilibrium with both inlets") {
    ModelParams P;
    P.flow.sorbent_inlet_temperature = P.flow.inlet_gas_temperature;
    const double T1 = P.flow.inlet_gas_temperature;
    const double c1 = equilibrium_pressure(T1, P.kinetics) / (kGasConstant * T1);
    const auto d = standalone_rhs({c1, T1}, P);
    CHECK(d[0] == doctest::Approx((P.c1_in() - c1) / P.flow.tau1).epsilon(1e-12));
    CHECK(d[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("rhs evaluations are pure") {
    ModelParams P;
    const EndexState s{12.0, 1080.0, 0.4, 1030.0};
    const auto a = endex_rhs(s, P);
    const auto b = endex_rhs(s, P);
    for (int i = 0; i < 4; ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("negative concentration is clamped before rate evaluation") {
    ModelParams P;
    // c1 slightly negative, as can happen transiently inside an integrator step
    const EndexState s{-1e-9, 1080.0, 0.4, 1030.0};
    const auto d = endex_rhs(s, P);
    for (double x : d) CHECK(std::isfinite(x));
    // the rate sees c1 = 0 (zero coverage), so dc1 is the pure inflow term
    CHECK(d[0] == doctest::Approx((P.c1_in() - s.c1) / P.flow.tau1).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    KineticParams bad = kin;
    bad.activation_energy = -1.0;
    CHECK_THROWS_WITH_AS(bad.validate(), "KineticParams: activation_energy must be > 0",
                         DomainError);

    bad = kin;
    bad.reaction_enthalpy = 10.0;  // carbonation must be exothermic
    CHECK_THROWS_AS(bad.validate(), DomainError);

    ModelParams P;
    P.flow.tau2 = 0.0;
    CHECK_THROWS_AS(P.validate(), DomainError);

    CHECK_NOTHROW(ModelParams{}.validate());
}

TEST_CASE("design point derived values") {
    ModelParams P;
    CHECK(P.c1_in() == doctest::Approx(24.3).epsilon(1e-14));
    // adiabatic rise for complete conversion against the gas-only heat capacity
    const double rise = P.c1_in() * std::abs(P.kinetics.reaction_enthalpy) /
                        P.carboniser.gas_heat_capacity;
    CHECK(rise == doctest::Approx(712.2413793103448).epsilon(1e-12));
}
