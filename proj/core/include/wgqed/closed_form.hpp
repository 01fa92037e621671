#pragma once

#include "wgqed/model.hpp"

namespace wgqed {

// Exact single-photon amplitudes of the two-atom, two-waveguide system for a
// photon incident rightward in waveguide 1, valid for any kappa >= 0.
// Throws NearPoleError if the scattering denominator falls below the pole
// guard (|Delta'^2 - J_C^2| < 1e-30), which requires kappa and every decay
// channel to vanish at once.
ScatteringAmplitudes amplitudes_full(const TwoAtomParams& p);

// Dressed-state energies, per-waveguide collective decay rates and
// waveguide-mediated exchange couplings.
CollectiveParams collective_params(const TwoAtomParams& p);

// Same amplitudes as amplitudes_full, evaluated through the two-pole
// dressed-state decomposition. Requires kappa = 0 (KappaUnsupportedError
// otherwise). Agrees with amplitudes_full to 1e-12 everywhere outside the
// pole guard.
ScatteringAmplitudes amplitudes_eigen(const TwoAtomParams& p);

// Matched-phase special case phi = theta with the dressed states forced
// degenerate in energy (J = -2 gamma sin theta) and kappa = 0, theta != pi.
// Throws PreconditionError naming each violated condition.
ScatteringAmplitudes amplitudes_matched(const TwoAtomParams& p);

// Direct coupling that cancels the waveguide-mediated exchange:
// J = -gamma (sin theta + sin phi), so that J_sigma = 0.
double degeneracy_coupling(double theta, double phi, double gamma);

// Named regimes of the two-atom system. Angles are compared modulo 2 pi,
// energies in units of gamma; tol defaults to 1e-9.
struct ConditionReport {
    bool j_sigma_zero = false;      // |J_sigma| < tol gamma
    bool matched_forward = false;   // phi = theta (mod 2 pi)
    bool matched_backward = false;  // phi = 2 pi - theta (mod 2 pi)
    bool fully_degenerate = false;  // lambda_+ = lambda_-
    bool dark_plus = false;         // |+> decoupled from both waveguides
    bool dark_minus = false;
};

ConditionReport classify_condition(const TwoAtomParams& p, double tol = 1e-9);

}  // namespace wgqed
