// Physical model of the Endex-coupled carboniser/calciner pair:
// parameter sets, state vectors, surface reaction rate laws, and the
// right-hand sides of the well-stirred balance equations.
//
// All quantities are strict SI (Pa, K, s, mol, m^3, J, kg). The design-point
// defaults are stored already converted; config ingestion is the only place
// where other units are accepted.

#ifndef ENDEX_MODEL_HPP
#define ENDEX_MODEL_HPP

#include <array>
#include <stdexcept>
#include <string>

namespace endex {

inline constexpr double kGasConstant = 8.314;  // J/(mol K)

// Thrown when an input violates a documented domain precondition
// (non-finite temperature, negative pressure, invalid parameter value).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Carbonation/calcination kinetics and sorbent surface data.
struct KineticParams {
    double pre_exponential = 114.0;        // rate-constant prefactor
    double activation_energy = 205.0e3;    // J/mol
    double reaction_enthalpy = -170.0e3;   // J/mol, negative: carbonation exothermic
    double p0 = 4.147e12;                  // equilibrium-pressure prefactor [Pa]
    double porosity = 0.51;                // nascent lime porosity
    double surface_area = 5.0e7;           // m^2/m^3
    double rate_scale = 1.0;               // global multiplier on both rate laws

    void validate() const;
};

// Geometry and heat capacities of one reactor segment.
struct SegmentParams {
    double volume;                  // m^3
    double solid_fraction;          // zeta
    double contents_heat_capacity;  // J/(K m^3), solids-weighted
    double gas_heat_capacity;       // J/(K m^3)

    void validate(const char* segment_name) const;
};

// Flows, coupling, and inlet conditions. Gas flow rates are derived from
// residence times: F_i = V_i / tau_i.
struct FlowParams {
    double tau1 = 15.0;                 // carboniser gas residence time [s]
    double tau2 = 30.0;                 // calciner gas residence time [s]
    double solids_flow = 20.0;          // F_s [kg/s]
    double sorbent_heat_capacity = 975.0;  // C_s [J/(K kg)]
    double wall_exchange = 0.0;         // L_ex [W/K]
    double inlet_gas_temperature = 1060.0;           // T_1,in [K]
    double inlet_co2_pressure = 24.3 * kGasConstant * 1060.0;  // p_c,in [Pa]
    double sorbent_inlet_temperature = 1021.0;       // T_s,in [K], standalone mode only

    void validate() const;
};

struct ModelParams {
    KineticParams kinetics;
    SegmentParams carboniser{2.3561944901923449, 0.5, 160.0e3, 5800.0};   // V1 = pi*0.25^2*12
    SegmentParams calciner{150.79644737231008, 0.008, 25.0e3, 25.0};      // V2 = pi*2^2*12
    FlowParams flow;

    // Inflow CO2 concentration c_1,in = p_c,in / (R T_1,in)  [mol/m^3]
    double c1_in() const {
        return flow.inlet_co2_pressure / (kGasConstant * flow.inlet_gas_temperature);
    }

    void validate() const;
};

// The four dynamical variables of the coupled system.
struct EndexState {
    double c1;  // carboniser CO2 concentration [mol/m^3]
    double T1;  // carboniser temperature [K]
    double c2;  // calciner CO2 concentration [mol/m^3]
    double T2;  // calciner temperature [K]

    std::array<double, 4> as_array() const { return {c1, T1, c2, T2}; }
    static EndexState from_array(const std::array<double, 4>& a) {
        return {a[0], a[1], a[2], a[3]};
    }
};

// State of the carboniser operated standalone against a sorbent bath.
struct CarboniserState {
    double c1;  // mol/m^3
    double T1;  // K

    std::array<double, 2> as_array() const { return {c1, T1}; }
    static CarboniserState from_array(const std::array<double, 2>& a) {
        return {a[0], a[1]};
    }
};

// Arrhenius rate constant k(T) = A exp(-E/RT). Table-1 magnitude units.
double rate_constant(double T, const KineticParams& kin);

// Equilibrium CO2 partial pressure over the sorbent, p0 exp(-|dH|/RT) [Pa].
double equilibrium_pressure(double T, const KineticParams& kin);

// Ideal-gas partial pressure p = c R T [Pa].
double pressure_of(double c, double T);

// Langmuir surface coverage with CO2 occupying two sites:
// theta = sqrt(p/p_eq) / (1 + sqrt(p/p_eq)), in [0,1).
double coverage(double p, double p_eq);

// Carbonation rate v1 = kappa (p1/p_eq - 1) theta eps k(T1) zeta1 S  [mol/(m^3 s)].
// Positive iff p1 > p_eq(T1) (and theta > 0).
double carbonation_rate(double T1, double p1, const KineticParams& kin,
                        const SegmentParams& seg);

// Calcination rate v2 = kappa (1 - p2/p_eq) (1 - theta) eps k(T2) zeta2 S  [mol/(m^3 s)].
// Positive iff p2 < p_eq(T2).
double calcination_rate(double T2, double p2, const KineticParams& kin,
                        const SegmentParams& seg);

// Time derivatives (dc1, dT1, dc2, dT2) of the coupled system, i.e. the
// balance equations divided by their capacity factors (V1, V1*C1, V2, V2*C2).
// Negative concentrations are clamped to zero before rate evaluation.
std::array<double, 4> endex_rhs(const EndexState& s, const ModelParams& P);

// Time derivatives (dc1, dT1) of the standalone carboniser; the sorbent
// stream enters at the fixed temperature T_s,in.
std::array<double, 2> standalone_rhs(const CarboniserState& s, const ModelParams& P);

// Scales used for dimensionless residual/distance norms: concentrations by
// c_1,in, temperatures by 1000 K.
std::array<double, 4> endex_scales(const ModelParams& P);
std::array<double, 2> standalone_scales(const ModelParams& P);

}  // namespace endex

#endif  // ENDEX_MODEL_HPP
