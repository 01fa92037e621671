#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wgqed {

using complex = std::complex<double>;

// How propagation phases are evaluated when solving at probe energy E:
// FixedPhase freezes k at the reference frequency (Markov convention used
// for all spectra), Dispersive uses the physical k = E/v_g.
enum class PhaseMode { FixedPhase, Dispersive };

// Interpretation of EmitterSpec::frequency and ScatteringProblem::photon_energy.
enum class FrequencyUnits { Absolute, DetuningFromReference };

struct WaveguideSpec {
    int id = 0;
    double group_velocity = 1.0;  // v_g > 0, natural units
};

struct EmitterSpec {
    int id = 0;
    double frequency = 0.0;    // omega (Absolute) or detuning from reference
    double dissipation = 0.0;  // kappa >= 0, decay into non-waveguide modes
};

// One coupling leg: emitter attached to a waveguide at a point.
struct CouplingPoint {
    int emitter_id = 0;
    int waveguide_id = 0;
    double position = 0.0;  // coordinate x along the waveguide, may be negative
    double strength = 0.0;  // V >= 0
};

struct DirectCoupling {
    int emitter_a = 0;
    int emitter_b = 0;
    double strength = 0.0;  // J, may be negative
};

// Full description of the emitter-waveguide network.
struct SystemSpec {
    std::vector<WaveguideSpec> waveguides;
    std::vector<EmitterSpec> emitters;
    std::vector<CouplingPoint> couplings;
    std::vector<DirectCoupling> direct;
    PhaseMode phase_mode = PhaseMode::FixedPhase;
    FrequencyUnits frequency_units = FrequencyUnits::Absolute;
    double reference_frequency = 0.0;  // carrier omega_0, required > 0 by the solver
};

// Reduced parameter set of the two-atom, two-waveguide instance:
// atom A couples at x=0 on both waveguides, atom B at phases theta = k x1
// (waveguide 1) and phi = k x2 (waveguide 2), gamma = V^2/v_g per leg.
struct TwoAtomParams {
    double theta = 0.0;
    double phi = 0.0;
    double gamma = 1.0;  // > 0
    double j = 0.0;      // direct coupling J
    double kappa = 0.0;  // >= 0
    double detuning = 0.0;  // Delta = E - omega
};

// Outgoing amplitudes for a photon incident rightward in waveguide 1.
struct ScatteringAmplitudes {
    complex t_r1;  // transmitted, waveguide 1
    complex r_l1;  // reflected, waveguide 1
    complex t_r2;  // forward transfer, waveguide 2
    complex r_l2;  // backward transfer, waveguide 2
};

struct ScatteringProbabilities {
    double t = 0.0;
    double r = 0.0;
    double t_f = 0.0;
    double t_b = 0.0;
    double loss = 0.0;  // 1 - t - r - t_f - t_b, by construction
};

// Dressed-state parameters of the two-atom manifold |+->, |->:
// lambda_pm = +-J_sigma - i(Gamma_1pm + Gamma_2pm).
struct CollectiveParams {
    complex lambda_plus;
    complex lambda_minus;
    double gamma1_plus = 0.0;   // gamma (1 + cos theta)
    double gamma1_minus = 0.0;  // gamma (1 - cos theta)
    double gamma2_plus = 0.0;
    double gamma2_minus = 0.0;
    double j1 = 0.0;       // gamma sin theta
    double j2 = 0.0;       // gamma sin phi
    double j_sigma = 0.0;  // J + J1 + J2
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> problems)
        : std::runtime_error(compose(problems)), m_problems(std::move(problems)) {}
    explicit ValidationError(const std::string& what)
        : std::runtime_error(what), m_problems{what} {}
    const std::vector<std::string>& problems() const { return m_problems; }

private:
    static std::string compose(const std::vector<std::string>& problems);
    std::vector<std::string> m_problems;
};

// Scattering denominator vanished: all decay channels and kappa would have
// to be zero simultaneously, which no physical parameter set reaches.
class NearPoleError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class KappaUnsupportedError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class SolverDegenerateError : public std::runtime_error {
public:
    SolverDegenerateError(const std::string& what, double energy)
        : std::runtime_error(what), m_energy(energy) {}
    double energy() const { return m_energy; }

private:
    double m_energy = 0.0;
};

// Returns every violated invariant, one message each; empty means valid.
std::vector<std::string> validation_problems(const SystemSpec& spec);

// Returns the system unchanged if valid, otherwise throws ValidationError
// carrying the full problem list.
SystemSpec validate_system(SystemSpec spec);

// Builds the two-atom, two-waveguide SystemSpec from reduced parameters.
// Positions follow from the phases at the carrier: x1 = theta v_g / carrier,
// x2 = phi v_g / carrier; leg strength V = sqrt(gamma v_g).
SystemSpec two_atom_to_system(const TwoAtomParams& p, double carrier,
                              PhaseMode mode = PhaseMode::FixedPhase,
                              FrequencyUnits units = FrequencyUnits::Absolute,
                              double group_velocity = 1.0);

ScatteringProbabilities probabilities(const ScatteringAmplitudes& a);

}  // namespace wgqed
