// Acceptance gate: one line per criterion, exit 0 only if all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "wgqed/closed_form.hpp"
#include "wgqed/realspace.hpp"
#include "wgqed/sweep.hpp"

using namespace wgqed;

namespace {

int failures = 0;

void report(int number, const char* name, bool pass, const std::string& detail)
{
    std::printf("%2d. %-46s %s  (%s)\n", number, name, pass ? "PASS" : "FAIL",
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

double grid(double start, double stop, int count, int i)
{
    if (i == 0) return start;
    if (i == count - 1) return stop;
    return start + (stop - start) * (static_cast<double>(i) / (count - 1));
}

double amplitude_gap(const ScatteringAmplitudes& a, const ScatteringAmplitudes& b)
{
    return std::max(std::max(std::abs(a.t_r1 - b.t_r1), std::abs(a.r_l1 - b.r_l1)),
                    std::max(std::abs(a.t_r2 - b.t_r2), std::abs(a.r_l2 - b.r_l2)));
}

template <typename F>
void criterion(int number, const char* name, F body)
{
    try {
        body();
    } catch (const std::exception& e) {
        report(number, name, false, std::string("exception: ") + e.what());
    }
}

void equal_split()
{
    const auto prob = probabilities(amplitudes_full({M_PI, M_PI, 1.0, 0.0, 0.0, 0.0}));
    double dev = 0.0;
    for (double v : {prob.t, prob.r, prob.t_f, prob.t_b}) dev = std::max(dev, std::abs(v - 0.25));
    report(1, "equal four-way split", dev < 1e-12, fmt("max dev %.2e", dev));
}

void isolation()
{
    double worst = 0.0;
    for (int i = 0; i < 201; ++i) {
        const double delta = grid(-10.0, 10.0, 201, i);
        const auto prob =
            probabilities(amplitudes_full({M_PI, 2.0 * M_PI, 1.0, 0.0, 0.0, delta}));
        worst = std::max(worst, std::max(prob.t_f, prob.t_b));
    }
    report(2, "waveguide isolation", worst < 1e-12, fmt("max cross transfer %.2e", worst));
}

void channel_drop()
{
    const TwoAtomParams base{M_PI / 2, M_PI / 2, 1.0, -2.0, 0.0, 0.0};
    auto at = [&](double delta) {
        TwoAtomParams p = base;
        p.detuning = delta;
        return probabilities(amplitudes_full(p));
    };
    const double peak_dev = std::abs(at(0.0).t_f - 1.0);
    const double half_dev =
        std::max(std::abs(at(2.0).t_f - 0.5), std::abs(at(-2.0).t_f - 0.5));
    double leak = 0.0;
    for (int i = 0; i < 201; ++i) {
        const auto prob = at(grid(-10.0, 10.0, 201, i));
        leak = std::max(leak, std::max(prob.r, prob.t_b));
    }
    const bool pass = peak_dev < 1e-12 && half_dev < 1e-10 && leak < 1e-12;
    report(3, "forward channel drop, width 4*gamma", pass,
           fmt("peak dev %.2e, leak %.2e", peak_dev, leak));
}

void backward_routing()
{
    const auto resonant =
        probabilities(amplitudes_full({M_PI / 2, 1.5 * M_PI, 1.0, 0.0, 0.0, 0.0}));
    const double peak_dev = std::abs(resonant.t_b - 1.0);
    double identity = 0.0;
    for (int i = 0; i < 201; ++i) {
        const auto a =
            amplitudes_full({M_PI / 2, 1.5 * M_PI, 1.0, 0.0, 0.0, grid(-10.0, 10.0, 201, i)});
        identity = std::max(identity, std::abs(a.r_l1 - a.t_r2));
        identity = std::max(identity, std::abs(a.t_r1 - (1.0 + a.r_l2)));
    }
    const bool pass = peak_dev < 1e-12 && identity < 1e-12;
    report(4, "backward routing identities", pass,
           fmt("peak dev %.2e, identity dev %.2e", peak_dev, identity));
}

void dissipation_laws()
{
    double worst = 0.0;
    for (double kappa : {0.01, 0.1, 0.5, 1.0}) {
        const auto prob =
            probabilities(amplitudes_full({M_PI / 2, M_PI / 2, 1.0, -2.0, kappa, 0.0}));
        const double denom = (4.0 + kappa) * (4.0 + kappa);
        worst = std::max(worst, std::abs(prob.t - kappa * kappa / denom));
        worst = std::max(worst, std::abs(prob.t_f - 16.0 / denom));
        worst = std::max(worst, std::max(prob.r, prob.t_b));
    }
    report(5, "dissipation closed forms", worst < 1e-12, fmt("max dev %.2e", worst));
}

void conservation_suite()
{
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> coupling(-3.0, 3.0);
    std::uniform_real_distribution<double> detuning(-10.0, 10.0);
    std::uniform_real_distribution<double> kappa(0.01, 2.0);

    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const auto prob = probabilities(
            amplitudes_full({angle(rng), angle(rng), 1.0, coupling(rng), 0.0, detuning(rng)}));
        worst = std::max(worst, std::abs(prob.t + prob.r + prob.t_f + prob.t_b - 1.0));
    }
    double excess = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const auto prob = probabilities(amplitudes_full(
            {angle(rng), angle(rng), 1.0, coupling(rng), kappa(rng), detuning(rng)}));
        const double sum = prob.t + prob.r + prob.t_f + prob.t_b;
        if (sum >= 1.0) excess = std::max(excess, sum - 1.0);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = worst < 1e-12 && excess == 0.0 && seconds < 10.0;
    report(6, "flux conservation, 1e5 draws", pass,
           fmt("max dev %.2e, %.1f s", worst, seconds));
}

void decomposition_identity()
{
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> coupling(-3.0, 3.0);
    std::uniform_real_distribution<double> detuning(-10.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const TwoAtomParams p{angle(rng), angle(rng), 1.0, coupling(rng), 0.0, detuning(rng)};
        worst = std::max(worst, amplitude_gap(amplitudes_full(p), amplitudes_eigen(p)));
    }
    report(7, "dressed-state decomposition, 1e4 draws", worst < 1e-12,
           fmt("max dev %.2e", worst));
}

void oracle_equivalence()
{
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> coupling(-3.0, 3.0);
    std::uniform_real_distribution<double> detuning(-10.0, 10.0);
    std::uniform_real_distribution<double> kappa(0.01, 2.0);

    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const TwoAtomParams p{angle(rng), angle(rng),   1.0, coupling(rng),
                              i % 2 ? 0.0 : kappa(rng), detuning(rng)};
        const auto system = two_atom_to_system(p, 1e9, PhaseMode::Dispersive,
                                               FrequencyUnits::DetuningFromReference);
        const auto sol = solve({system, 0, Direction::Rightward, p.detuning});
        const ScatteringAmplitudes numeric{
            sol.outgoing(0, Direction::Rightward), sol.outgoing(0, Direction::Leftward),
            sol.outgoing(1, Direction::Rightward), sol.outgoing(1, Direction::Leftward)};
        worst = std::max(worst, amplitude_gap(numeric, amplitudes_full(p)));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = worst < 1e-6 && seconds < 30.0;
    report(8, "real-space oracle, carrier 1e9", pass,
           fmt("max dev %.2e, %.1f s", worst, seconds));
}

void directional_transfer()
{
    auto probs_at = [](const SystemSpec& sys) {
        const auto r = solve({sys, 0, Direction::Rightward, 0.0});
        struct {
            double t_f, t_b, r_back;
        } p{std::norm(r.outgoing(1, Direction::Rightward)),
            std::norm(r.outgoing(1, Direction::Leftward)),
            std::norm(r.outgoing(0, Direction::Leftward))};
        return p;
    };

    const auto fwd = probs_at(fig5_preset(50.0, 0.0, 0.1, 1.0));
    const auto bwd = probs_at(fig5_preset(0.0, 50.0, 0.1, 1.0));
    bool monotone = true;
    double previous = 2.0;
    for (int i = 0; i < 201; ++i) {
        const double kappa = grid(0.0, 1.0, 201, i);
        const double t_f = probs_at(fig5_preset(50.0, 0.0, kappa, 1.0)).t_f;
        if (t_f >= previous) monotone = false;
        previous = t_f;
    }
    const bool pass = fwd.t_f >= 0.94 && fwd.r_back <= 1e-2 && fwd.t_b <= 1e-2 &&
                      bwd.t_b >= 0.94 && monotone;
    report(9, "three-qubit directional transfer", pass,
           fmt("T_f %.4f, mirrored T_b %.4f", fwd.t_f, bwd.t_b));
}

void phase_map()
{
    double r_max = 0.0, corner_dev = 0.0, diagonal_dev = 0.0;
    double r_at_0 = -1.0, r_at_2pi = -1.0;
    for (int i = 0; i < 201; ++i) {
        const double theta = grid(0.0, 2.0 * M_PI, 201, i);
        for (int k = 0; k < 201; ++k) {
            const double phi = grid(0.0, 2.0 * M_PI, 201, k);
            const auto prob = probabilities(amplitudes_full(
                {theta, phi, 1.0, degeneracy_coupling(theta, phi, 1.0), 0.0, 0.0}));
            r_max = std::max(r_max, prob.r);
            if (i == 100 && k == 0) r_at_0 = prob.r;
            if (i == 100 && k == 200) r_at_2pi = prob.r;
            if (i == k && i != 0 && i != 100 && i != 200)
                diagonal_dev = std::max(diagonal_dev, std::abs(prob.t_f - 1.0));
        }
    }
    corner_dev = std::max(std::abs(r_at_0 - 1.0), std::abs(r_at_2pi - 1.0));
    const bool pass =
        corner_dev < 1e-9 && diagonal_dev < 1e-9 && r_max <= 1.0 + 1e-12;
    report(10, "phase map extremes", pass,
           fmt("corner dev %.2e, diagonal dev %.2e", corner_dev, diagonal_dev));
}

}  // namespace

int main()
{
    criterion(1, "equal four-way split", equal_split);
    criterion(2, "waveguide isolation", isolation);
    criterion(3, "forward channel drop, width 4*gamma", channel_drop);
    criterion(4, "backward routing identities", backward_routing);
    criterion(5, "dissipation closed forms", dissipation_laws);
    criterion(6, "flux conservation, 1e5 draws", conservation_suite);
    criterion(7, "dressed-state decomposition, 1e4 draws", decomposition_identity);
    criterion(8, "real-space oracle, carrier 1e9", oracle_equivalence);
    criterion(9, "three-qubit directional transfer", directional_transfer);
    criterion(10, "phase map extremes", phase_map);

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
