#include "wgqed/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace wgqed {

namespace {

constexpr complex I{0.0, 1.0};
constexpr double kPoleGuard = 1e-30;
// Relative width of the removable-singularity band around dark points.
constexpr double kDarkBand = 1e-11;

void require_valid(const TwoAtomParams& p)
{
    if (!(p.gamma > 0)) {
        throw ValidationError("gamma must be positive, got " + std::to_string(p.gamma));
    }
    if (p.kappa < 0) {
        throw ValidationError("kappa must be >= 0, got " + std::to_string(p.kappa));
    }
}

// Wraps an angle into (-pi, pi].
double wrap_angle(double a)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::remainder(a, two_pi);
    if (w <= -std::numbers::pi) w += two_pi;
    return w;
}

}  // namespace

ScatteringAmplitudes amplitudes_full(const TwoAtomParams& p)
{
    require_valid(p);
    const double g = p.gamma;
    const complex e_th = std::exp(I * p.theta);
    const complex e_ph = std::exp(I * p.phi);
    const complex j_c = p.j - I * g * (e_th + e_ph);
    const complex delta_p = p.detuning + 2.0 * I * g + I * p.kappa / 2.0;
    const complex delta_1 = p.detuning + I * g + I * p.kappa / 2.0;
    const double cos_th = std::cos(p.theta);
    const double sin_th = std::sin(p.theta);
    const complex den = delta_p * delta_p - j_c * j_c;

    const complex n_t1 =
        delta_1 * delta_1 - (j_c + I * g * cos_th) * (j_c + I * g * cos_th) +
        g * g * sin_th * sin_th;
    const complex n_r1 = -2.0 * I * g * e_th * (j_c + delta_p * cos_th);
    const complex n_t2 =
        -I * g * (j_c * (e_th + std::conj(e_ph)) + delta_p * (e_th * std::conj(e_ph) + 1.0));
    const complex n_r2 = -I * g * (j_c * (e_th + e_ph) + delta_p * (e_th * e_ph + 1.0));

    // The denominator only reaches zero when the probe sits exactly on a
    // completely dark dressed state, and then every numerator carries the
    // same root: the singularity is removable and the limit is the derivative
    // ratio (d/dDelta; the denominator derivative 2 Delta' cannot vanish
    // since Im Delta' >= 2 gamma). The guard is relative to the parameter
    // scale: at such points rounding leaves den at ~1e-15 * scale, where the
    // direct quotient would be noise over noise.
    const double scale = std::max({std::norm(delta_p), std::norm(j_c), g * g});
    if (std::abs(den) < kDarkBand * scale) {
        if (std::abs(n_t1) <= 1e-8 * scale && std::abs(n_r1) <= 1e-8 * scale &&
            std::abs(n_t2) <= 1e-8 * scale && std::abs(n_r2) <= 1e-8 * scale) {
            const complex d_prime = 2.0 * delta_p;
            ScatteringAmplitudes a;
            a.t_r1 = 2.0 * delta_1 / d_prime;
            a.r_l1 = -2.0 * I * g * e_th * cos_th / d_prime;
            a.t_r2 = -I * g * (e_th * std::conj(e_ph) + 1.0) / d_prime;
            a.r_l2 = -I * g * (e_th * e_ph + 1.0) / d_prime;
            return a;
        }
        std::ostringstream msg;
        msg << "scattering denominator vanished (|Delta'^2 - J_C^2| = " << std::abs(den)
            << ") at theta=" << p.theta << " phi=" << p.phi << " j=" << p.j
            << " detuning=" << p.detuning;
        throw NearPoleError(msg.str());
    }

    ScatteringAmplitudes a;
    a.t_r1 = n_t1 / den;
    a.r_l1 = n_r1 / den;
    a.t_r2 = n_t2 / den;
    a.r_l2 = n_r2 / den;
    return a;
}

CollectiveParams collective_params(const TwoAtomParams& p)
{
    require_valid(p);
    const double g = p.gamma;
    CollectiveParams c;
    c.gamma1_plus = g * (1.0 + std::cos(p.theta));
    c.gamma1_minus = g * (1.0 - std::cos(p.theta));
    c.gamma2_plus = g * (1.0 + std::cos(p.phi));
    c.gamma2_minus = g * (1.0 - std::cos(p.phi));
    c.j1 = g * std::sin(p.theta);
    c.j2 = g * std::sin(p.phi);
    c.j_sigma = p.j + c.j1 + c.j2;
    c.lambda_plus = c.j_sigma - I * (c.gamma1_plus + c.gamma2_plus);
    c.lambda_minus = -c.j_sigma - I * (c.gamma1_minus + c.gamma2_minus);
    return c;
}

ScatteringAmplitudes amplitudes_eigen(const TwoAtomParams& p)
{
    require_valid(p);
    if (p.kappa != 0.0) {
        throw KappaUnsupportedError(
            "eigenstate decomposition requires kappa = 0, got " + std::to_string(p.kappa));
    }
    const CollectiveParams c = collective_params(p);
    const complex pole_p = p.detuning - c.lambda_plus;
    const complex pole_m = p.detuning - c.lambda_minus;

    const double g = p.gamma;
    const complex e_th = std::exp(I * p.theta);
    const complex e_ph = std::exp(I * p.phi);
    const complex one_m = 1.0 - e_th;
    const complex one_p = 1.0 + e_th;

    // One dressed-state resonance term. A bitwise-zero pole can only occur on
    // a completely dark state, whose residue numerator vanishes with it; that
    // term's limit is zero. A vanishing pole under a live numerator is a real
    // divergence and keeps the error contract.
    const double scale = std::max({g, std::abs(p.detuning), std::abs(c.j_sigma)});
    auto pole_term = [&](complex numerator, complex pole) -> complex {
        if (std::abs(pole) < kPoleGuard) {
            if (std::abs(numerator) <= 1e-8 * g * scale) return complex{0.0, 0.0};
            std::ostringstream msg;
            msg << "detuning sits on an undamped dressed-state pole at theta=" << p.theta
                << " phi=" << p.phi << " j=" << p.j << " detuning=" << p.detuning;
            throw NearPoleError(msg.str());
        }
        return numerator / (I * pole);
    };

    ScatteringAmplitudes a;
    a.t_r1 = 1.0 + pole_term(g * (1.0 - std::cos(p.theta)), pole_m) +
             pole_term(g * (1.0 + std::cos(p.theta)), pole_p);
    a.r_l1 = pole_term(g * one_m * one_m / 2.0, pole_m) +
             pole_term(g * one_p * one_p / 2.0, pole_p);
    a.t_r2 = pole_term(g * one_m * (1.0 - std::conj(e_ph)) / 2.0, pole_m) +
             pole_term(g * one_p * (1.0 + std::conj(e_ph)) / 2.0, pole_p);
    a.r_l2 = pole_term(g * one_m * (1.0 - e_ph) / 2.0, pole_m) +
             pole_term(g * one_p * (1.0 + e_ph) / 2.0, pole_p);
    return a;
}

ScatteringAmplitudes amplitudes_matched(const TwoAtomParams& p)
{
    require_valid(p);
    std::vector<std::string> failed;
    if (std::abs(wrap_angle(p.phi - p.theta)) > 1e-12) {
        failed.push_back("phi = theta");
    }
    if (p.kappa != 0.0) {
        failed.push_back("kappa = 0");
    }
    const double j_needed = -2.0 * p.gamma * std::sin(p.theta);
    if (std::abs(p.j - j_needed) > 1e-12 * p.gamma) {
        failed.push_back("j = -2 gamma sin(theta)");
    }
    if (std::abs(wrap_angle(p.theta - std::numbers::pi)) <= 1e-12) {
        failed.push_back("theta != pi");
    }
    if (!failed.empty()) {
        std::string msg = "matched-phase preconditions violated:";
        for (const auto& f : failed) msg += " [" + f + "]";
        throw PreconditionError(msg);
    }

    const double g1p = p.gamma * (1.0 + std::cos(p.theta));
    const double g1m = p.gamma * (1.0 - std::cos(p.theta));
    const complex dp = I * p.detuning - 2.0 * g1p;
    const complex dm = I * p.detuning - 2.0 * g1m;
    if (std::abs(dp * dm) < kPoleGuard) {
        throw NearPoleError("detuning sits on an undamped dressed-state pole at theta=" +
                            std::to_string(p.theta));
    }
    const complex e_th = std::exp(I * p.theta);

    ScatteringAmplitudes a;
    a.r_l1 = e_th * g1p / dp - e_th * g1m / dm;
    a.r_l2 = a.r_l1;
    a.t_r2 = g1m / dm + g1p / dp;
    a.t_r1 = 1.0 + a.t_r2;
    return a;
}

double degeneracy_coupling(double theta, double phi, double gamma)
{
    return -gamma * (std::sin(theta) + std::sin(phi));
}

ConditionReport classify_condition(const TwoAtomParams& p, double tol)
{
    require_valid(p);
    const CollectiveParams c = collective_params(p);
    ConditionReport rep;
    rep.j_sigma_zero = std::abs(c.j_sigma) < tol * p.gamma;
    rep.matched_forward = std::abs(wrap_angle(p.phi - p.theta)) < tol;
    rep.matched_backward = std::abs(wrap_angle(p.phi + p.theta)) < tol;
    rep.fully_degenerate = std::abs(c.lambda_plus - c.lambda_minus) < tol * p.gamma;
    rep.dark_plus = c.gamma1_plus + c.gamma2_plus < tol * p.gamma;
    rep.dark_minus = c.gamma1_minus + c.gamma2_minus < tol * p.gamma;
    return rep;
}

}  // namespace wgqed
