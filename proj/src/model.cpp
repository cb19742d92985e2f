#include "endex/model.hpp"

#include <cmath>

namespace endex {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw DomainError(msg);
}

// Shared carboniser core so that the Endex and standalone right-hand sides
// are bitwise identical where the equations coincide. Returns (dc1, dT1_partial)
// where dT1_partial omits the inter-segment / sorbent-bath heat term.
std::array<double, 2> carboniser_core(double c1, double T1, const ModelParams& P) {
    const double c1r = c1 < 0.0 ? 0.0 : c1;  // clamp before rate evaluation
    const double p1 = pressure_of(c1r, T1);
    const double v1 = carbonation_rate(T1, p1, P.kinetics, P.carboniser);

    const double dc1 = -v1 + (P.c1_in() - c1) / P.flow.tau1;
    const double heat = (-P.kinetics.reaction_enthalpy) * v1 +
                        P.carboniser.gas_heat_capacity *
                            (P.flow.inlet_gas_temperature - T1) / P.flow.tau1;
    return {dc1, heat};
}

}  // namespace

void KineticParams::validate() const {
    if (!(activation_energy > 0.0)) throw DomainError("KineticParams: activation_energy must be > 0");
    if (!(p0 > 0.0)) throw DomainError("KineticParams: p0 must be > 0");
    if (!(porosity > 0.0 && porosity <= 1.0)) throw DomainError("KineticParams: porosity must be in (0,1]");
    if (!(surface_area > 0.0)) throw DomainError("KineticParams: surface_area must be > 0");
    if (!(rate_scale > 0.0)) throw DomainError("KineticParams: rate_scale must be > 0");
    if (!(reaction_enthalpy < 0.0)) throw DomainError("KineticParams: reaction_enthalpy must be < 0");
}

void SegmentParams::validate(const char* segment_name) const {
    std::string who(segment_name);
    if (!(volume > 0.0)) throw DomainError(who + ": volume must be > 0");
    if (!(solid_fraction >= 0.0 && solid_fraction <= 1.0))
        throw DomainError(who + ": solid_fraction must be in [0,1]");
    if (!(contents_heat_capacity > 0.0))
        throw DomainError(who + ": contents_heat_capacity must be > 0");
    if (!(gas_heat_capacity > 0.0)) throw DomainError(who + ": gas_heat_capacity must be > 0");
}

void FlowParams::validate() const {
    if (!(tau1 > 0.0)) throw DomainError("FlowParams: tau1 must be > 0");
    if (!(tau2 > 0.0)) throw DomainError("FlowParams: tau2 must be > 0");
    if (!(solids_flow >= 0.0)) throw DomainError("FlowParams: solids_flow must be >= 0");
    if (!(wall_exchange >= 0.0)) throw DomainError("FlowParams: wall_exchange must be >= 0");
    if (!(inlet_gas_temperature > 0.0)) throw DomainError("FlowParams: inlet_gas_temperature must be > 0");
    if (!(inlet_co2_pressure >= 0.0)) throw DomainError("FlowParams: inlet_co2_pressure must be >= 0");
    if (!(sorbent_inlet_temperature > 0.0))
        throw DomainError("FlowParams: sorbent_inlet_temperature must be > 0");
}

void ModelParams::validate() const {
    kinetics.validate();
    carboniser.validate("carboniser");
    calciner.validate("calciner");
    flow.validate();
}

double rate_constant(double T, const KineticParams& kin) {
    require(std::isfinite(T), "rate_constant: non-finite temperature");
    require(T > 0.0, "rate_constant: temperature must be > 0");
    return kin.pre_exponential * std::exp(-kin.activation_energy / (kGasConstant * T));
}

double equilibrium_pressure(double T, const KineticParams& kin) {
    require(std::isfinite(T), "equilibrium_pressure: non-finite temperature");
    require(T > 0.0, "equilibrium_pressure: temperature must be > 0");
    return kin.p0 * std::exp(-std::abs(kin.reaction_enthalpy) / (kGasConstant * T));
}

double pressure_of(double c, double T) {
    require(std::isfinite(c) && std::isfinite(T), "pressure_of: non-finite input");
    require(c >= 0.0, "pressure_of: negative concentration");
    require(T > 0.0, "pressure_of: temperature must be > 0");
    return c * kGasConstant * T;
}

double coverage(double p, double p_eq) {
    require(std::isfinite(p), "coverage: non-finite pressure");
    require(p >= 0.0, "coverage: negative pressure");
    require(p_eq > 0.0, "coverage: p_eq must be > 0");
    const double s = std::sqrt(p / p_eq);
    return s / (1.0 + s);
}

double carbonation_rate(double T1, double p1, const KineticParams& kin,
                        const SegmentParams& seg) {
    const double p_eq = equilibrium_pressure(T1, kin);
    const double theta = coverage(p1, p_eq);
    return kin.rate_scale * (p1 / p_eq - 1.0) * theta * kin.porosity *
           rate_constant(T1, kin) * seg.solid_fraction * kin.surface_area;
}

double calcination_rate(double T2, double p2, const KineticParams& kin,
                        const SegmentParams& seg) {
    const double p_eq = equilibrium_pressure(T2, kin);
    const double theta = coverage(p2, p_eq);
    return kin.rate_scale * (1.0 - p2 / p_eq) * (1.0 - theta) * kin.porosity *
           rate_constant(T2, kin) * seg.solid_fraction * kin.surface_area;
}

std::array<double, 4> endex_rhs(const EndexState& s, const ModelParams& P) {
    const auto core = carboniser_core(s.c1, s.T1, P);

    const double c2r = s.c2 < 0.0 ? 0.0 : s.c2;
    const double p2 = pressure_of(c2r, s.T2);
    const double v2 = calcination_rate(s.T2, p2, P.kinetics, P.calciner);

    const double coupling = P.flow.solids_flow * P.flow.sorbent_heat_capacity +
                            P.flow.wall_exchange;  // F_s C_s + L_ex [W/K]

    const double dT1 = (core[1] + coupling * (s.T2 - s.T1) / P.carboniser.volume) /
                       P.carboniser.contents_heat_capacity;

    const double dc2 = v2 - s.c2 / P.flow.tau2;
    const double dT2 = (P.kinetics.reaction_enthalpy * v2 -
                        P.calciner.gas_heat_capacity * s.T2 / P.flow.tau2 +
                        coupling * (s.T1 - s.T2) / P.calciner.volume) /
                       P.calciner.contents_heat_capacity;

    return {core[0], dT1, dc2, dT2};
}

std::array<double, 2> standalone_rhs(const CarboniserState& s, const ModelParams& P) {
    const auto core = carboniser_core(s.c1, s.T1, P);
    const double bath = P.flow.solids_flow * P.flow.sorbent_heat_capacity *
                        (P.flow.sorbent_inlet_temperature - s.T1);
    const double dT1 = (core[1] + bath / P.carboniser.volume) /
                       P.carboniser.contents_heat_capacity;
    return {core[0], dT1};
}

std::array<double, 4> endex_scales(const ModelParams& P) {
    return {P.c1_in(), 1000.0, P.c1_in(), 1000.0};
}

std::array<double, 2> standalone_scales(const ModelParams& P) {
    return {P.c1_in(), 1000.0};
}

}  // namespace endex
