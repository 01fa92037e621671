#pragma once

#include <Eigen/Dense>

#include "wgqed/model.hpp"

namespace wgqed {

enum class Direction { Rightward, Leftward };

// Single photon incident on a SystemSpec from one end of one waveguide.
struct ScatteringProblem {
    SystemSpec system;
    int input_waveguide = 0;
    Direction input_direction = Direction::Rightward;
    double photon_energy = 0.0;  // absolute, or detuning, per system.frequency_units
};

struct SegmentWave {
    complex right;  // coefficient of e^{+ikx} on the segment
    complex left;   // coefficient of e^{-ikx}
};

struct WaveguideField {
    std::vector<double> junction_positions;  // sorted distinct coupling positions
    std::vector<SegmentWave> segments;       // junction_positions.size() + 1 entries
};

struct SolveResult {
    std::vector<complex> outgoing_rightward;  // indexed by waveguide id
    std::vector<complex> outgoing_leftward;
    std::vector<complex> emitter_amplitudes;  // indexed by emitter id
    std::vector<WaveguideField> segment_amplitudes;

    complex outgoing(int waveguide, Direction d) const
    {
        return d == Direction::Rightward ? outgoing_rightward.at(waveguide)
                                         : outgoing_leftward.at(waveguide);
    }
};

// Dense boundary-condition system for the piecewise plane-wave ansatz.
// Unknowns: per waveguide with m junctions, the rightward coefficients on
// segments 1..m and the leftward coefficients on segments 0..m-1 (the
// incoming outermost coefficients are fixed by the radiation condition and
// folded into the right-hand side), then one amplitude per emitter.
struct LinearSystem {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd rhs;
    std::vector<int> right_base;  // per waveguide, first rightward column
    std::vector<int> left_base;   // per waveguide, first leftward column
    int emitter_base = 0;
    std::vector<std::vector<double>> junction_positions;  // per waveguide
    double energy_absolute = 0.0;
};

LinearSystem build_linear_system(const ScatteringProblem& problem);

// Solves the boundary-condition system by dense partial-pivot LU and
// extracts outgoing, emitter, and segment amplitudes. Throws
// SolverDegenerateError when the matrix condition number exceeds 1e12 or
// the residual fails ||Ax - b||_inf < 1e-10 ||b||_inf.
SolveResult solve(const ScatteringProblem& problem);

// Three-qubit directional-transfer scheme: a fixed qubit Q1 at the origin of
// both waveguides, Q3 at +d on both (forward pair), Q2 at +d on waveguide 1
// and -d on waveguide 2 (backward pair), with d a quarter wavelength at the
// carrier. Q2/Q3 frequencies are offset by delta2/delta3; both pairs carry
// direct coupling -2 gamma and the Q2-Q3 interaction is cancelled. kappa is
// applied to all three qubits. carrier <= 0 selects the default 1e6 gamma.
SystemSpec fig5_preset(double delta2, double delta3, double kappa, double gamma,
                       double carrier = 0.0, double group_velocity = 1.0);

}  // namespace wgqed
