// wgqed command-line frontend: single-point evaluation, figure datasets,
// invariant audits, and JSON-driven solves/sweeps.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wgqed/closed_form.hpp"
#include "wgqed/json_io.hpp"
#include "wgqed/realspace.hpp"
#include "wgqed/sweep.hpp"

namespace {

using wgqed::complex;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Accepts plain radians or literal multiples of pi: "0.5pi", "pi", "-pi".
double parse_angle(const std::string& text)
{
    std::string s = text;
    double factor = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        factor = M_PI;
        s.erase(s.size() - 2);
        if (s.empty() || s == "+") return M_PI;
        if (s == "-") return -M_PI;
    }
    size_t used = 0;
    double value = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return value * factor;
}

void add_angle_option(CLI::App* app, const std::string& name, double& target,
                      const std::string& description)
{
    app->add_option_function<std::string>(
           name,
           [&target, name](const std::string& text) {
               try {
                   target = parse_angle(text);
               } catch (const std::exception&) {
                   throw CLI::ValidationError(name, "expected radians or a 'pi' multiple, got '" +
                                                        text + "'");
               }
           },
           description)
        ->type_name("ANGLE");
}

bool write_file_atomic(const std::string& path, const std::string& payload)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return false;
        out << payload;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            return false;
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        return false;
    }
    return true;
}

std::string format_complex(complex z)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%+.12g%+.12gi", z.real(), z.imag());
    return buf;
}

// ---------------------------------------------------------------- point ----

struct PointArgs {
    wgqed::TwoAtomParams p;
    bool json = false;
};

int run_point(const PointArgs& args)
{
    const auto amp = wgqed::amplitudes_full(args.p);
    const auto prob = wgqed::probabilities(amp);
    const auto coll = wgqed::collective_params(args.p);
    const auto cond = wgqed::classify_condition(args.p);

    std::vector<std::pair<const char*, bool>> flags = {
        {"j_sigma_zero", cond.j_sigma_zero},
        {"matched_forward", cond.matched_forward},
        {"matched_backward", cond.matched_backward},
        {"fully_degenerate", cond.fully_degenerate},
        {"dark_plus", cond.dark_plus},
        {"dark_minus", cond.dark_minus},
    };

    if (args.json) {
        nlohmann::json doc;
        doc["parameters"] = {{"theta", args.p.theta}, {"phi", args.p.phi},
                             {"gamma", args.p.gamma}, {"j", args.p.j},
                             {"kappa", args.p.kappa}, {"delta", args.p.detuning}};
        auto c2j = [](complex z) { return nlohmann::json::array({z.real(), z.imag()}); };
        doc["amplitudes"] = {{"t_r1", c2j(amp.t_r1)},
                             {"r_l1", c2j(amp.r_l1)},
                             {"t_r2", c2j(amp.t_r2)},
                             {"r_l2", c2j(amp.r_l2)}};
        doc["probabilities"] = {{"T", prob.t},     {"R", prob.r},       {"T_f", prob.t_f},
                                {"T_b", prob.t_b}, {"loss", prob.loss}};
        doc["collective"] = {{"lambda_plus", c2j(coll.lambda_plus)},
                             {"lambda_minus", c2j(coll.lambda_minus)},
                             {"gamma1_plus", coll.gamma1_plus},
                             {"gamma1_minus", coll.gamma1_minus},
                             {"gamma2_plus", coll.gamma2_plus},
                             {"gamma2_minus", coll.gamma2_minus},
                             {"j1", coll.j1},
                             {"j2", coll.j2},
                             {"j_sigma", coll.j_sigma}};
        doc["conditions"] = nlohmann::json::object();
        for (const auto& [name, on] : flags) doc["conditions"][name] = on;
        std::cout << doc.dump(2) << "\n";
        return kExitOk;
    }

    std::printf("parameters: theta=%.12g phi=%.12g gamma=%.12g j=%.12g kappa=%.12g delta=%.12g\n",
                args.p.theta, args.p.phi, args.p.gamma, args.p.j, args.p.kappa, args.p.detuning);
    std::printf("amplitudes:\n");
    std::printf("  t_r1 = %s\n", format_complex(amp.t_r1).c_str());
    std::printf("  r_l1 = %s\n", format_complex(amp.r_l1).c_str());
    std::printf("  t_r2 = %s\n", format_complex(amp.t_r2).c_str());
    std::printf("  r_l2 = %s\n", format_complex(amp.r_l2).c_str());
    std::printf("probabilities: T=%.12g R=%.12g T_f=%.12g T_b=%.12g loss=%.12g\n", prob.t, prob.r,
                prob.t_f, prob.t_b, prob.loss);
    std::printf("collective: lambda_plus=%s lambda_minus=%s\n",
                format_complex(coll.lambda_plus).c_str(),
                format_complex(coll.lambda_minus).c_str());
    std::printf("  Gamma_1+=%.12g Gamma_1-=%.12g Gamma_2+=%.12g Gamma_2-=%.12g\n",
                coll.gamma1_plus, coll.gamma1_minus, coll.gamma2_plus, coll.gamma2_minus);
    std::printf("  J1=%.12g J2=%.12g J_sigma=%.12g\n", coll.j1, coll.j2, coll.j_sigma);
    std::printf("conditions:");
    bool any = false;
    for (const auto& [name, on] : flags) {
        if (on) {
            std::printf(" %s", name);
            any = true;
        }
    }
    std::printf("%s\n", any ? "" : " none");
    return kExitOk;
}

// ------------------------------------------------------------------ fig ----

int run_fig(const std::string& name, const std::string& out_path)
{
    wgqed::SweepSpec spec = wgqed::figure_preset(name);  // throws on unknown name
    const wgqed::SweepTable table = wgqed::run_sweep(spec);

    std::ostringstream csv;
    wgqed::write_csv(table, csv);
    if (!write_file_atomic(out_path, csv.str())) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitIo;
    }

    std::printf("%s: %zu rows -> %s\n", name.c_str(), table.rows.size(), out_path.c_str());
    size_t bad = 0;
    for (const auto& row : table.rows)
        if (row.status != "ok") ++bad;
    for (const char* col : {"T", "R", "T_f", "T_b", "loss"}) {
        auto it = std::find(table.columns.begin(), table.columns.end(), col);
        if (it == table.columns.end()) continue;
        const size_t idx = static_cast<size_t>(it - table.columns.begin());
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& row : table.rows) {
            if (row.status != "ok") continue;
            lo = std::min(lo, row.values[idx]);
            hi = std::max(hi, row.values[idx]);
        }
        std::printf("  %-4s min=%.6g max=%.6g\n", col, lo, hi);
    }
    if (bad) std::printf("  %zu rows carry error markers\n", bad);
    return kExitOk;
}

// --------------------------------------------------------------- verify ----

struct InvariantResult {
    std::string name;
    long samples = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    wgqed::TwoAtomParams worst;
    bool pass() const { return max_error <= tolerance; }
};

void track(InvariantResult& inv, double err, const wgqed::TwoAtomParams& p)
{
    if (err > inv.max_error || inv.samples == 0) {
        inv.max_error = err;
        inv.worst = p;
    }
    ++inv.samples;
}

int run_verify(long n, unsigned long seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> coupling(-3.0, 3.0);
    std::uniform_real_distribution<double> detuning(-10.0, 10.0);
    std::uniform_real_distribution<double> kappa(0.01, 2.0);

    std::vector<InvariantResult> results;

    {
        InvariantResult inv{"conservation (kappa=0)", 0, 0.0, 1e-12};
        for (long i = 0; i < n; ++i) {
            wgqed::TwoAtomParams p{angle(rng), angle(rng), 1.0, coupling(rng), 0.0,
                                   detuning(rng)};
            const auto prob = wgqed::probabilities(wgqed::amplitudes_full(p));
            track(inv, std::abs(prob.t + prob.r + prob.t_f + prob.t_b - 1.0), p);
        }
        results.push_back(inv);
    }
    {
        InvariantResult inv{"lossy sum below one (kappa>0)", 0, 0.0, 0.0};
        for (long i = 0; i < n; ++i) {
            wgqed::TwoAtomParams p{angle(rng), angle(rng), 1.0, coupling(rng), kappa(rng),
                                   detuning(rng)};
            const auto prob = wgqed::probabilities(wgqed::amplitudes_full(p));
            const double sum = prob.t + prob.r + prob.t_f + prob.t_b;
            track(inv, sum < 1.0 ? 0.0 : sum - 1.0, p);
        }
        results.push_back(inv);
    }
    {
        InvariantResult inv{"dressed-pole route vs direct", 0, 0.0, 1e-12};
        for (long i = 0; i < n; ++i) {
            wgqed::TwoAtomParams p{angle(rng), angle(rng), 1.0, coupling(rng), 0.0,
                                   detuning(rng)};
            const auto a = wgqed::amplitudes_full(p);
            const auto b = wgqed::amplitudes_eigen(p);
            const double err =
                std::max(std::max(std::abs(a.t_r1 - b.t_r1), std::abs(a.r_l1 - b.r_l1)),
                         std::max(std::abs(a.t_r2 - b.t_r2), std::abs(a.r_l2 - b.r_l2)));
            track(inv, err, p);
        }
        results.push_back(inv);
    }
    {
        InvariantResult inv{"matched-phase identities", 0, 0.0, 1e-12};
        std::uniform_real_distribution<double> safe_angle(0.05, 0.95);  // avoid theta = pi
        for (long i = 0; i < n; ++i) {
            const double u = safe_angle(rng) * M_PI;
            const double theta = i % 2 ? u : 2.0 * M_PI - u;
            wgqed::TwoAtomParams p{theta, theta, 1.0, -2.0 * std::sin(theta), 0.0,
                                   detuning(rng)};
            const auto a = wgqed::amplitudes_full(p);
            const auto m = wgqed::amplitudes_matched(p);
            double err =
                std::max(std::max(std::abs(a.t_r1 - m.t_r1), std::abs(a.r_l1 - m.r_l1)),
                         std::max(std::abs(a.t_r2 - m.t_r2), std::abs(a.r_l2 - m.r_l2)));
            err = std::max(err, std::abs(a.t_r1 - (1.0 + a.t_r2)));
            err = std::max(err, std::abs(a.r_l1 - a.r_l2));
            track(inv, err, p);
        }
        results.push_back(inv);
    }
    {
        InvariantResult inv{"backward-routing identities", 0, 0.0, 1e-12};
        for (long i = 0; i < n; ++i) {
            const double theta = angle(rng);
            wgqed::TwoAtomParams p{theta, 2.0 * M_PI - theta, 1.0, 0.0, 0.0, detuning(rng)};
            const auto a = wgqed::amplitudes_full(p);
            double err = std::abs(a.r_l1 - a.t_r2);
            err = std::max(err, std::abs(a.t_r1 - (1.0 + a.r_l2)));
            track(inv, err, p);
        }
        results.push_back(inv);
    }
    {
        InvariantResult inv{"real-space solver vs closed form", 0, 0.0, 1e-10};
        const long solves = std::min<long>(n, 200);
        for (long i = 0; i < solves; ++i) {
            wgqed::TwoAtomParams p{angle(rng), angle(rng), 1.0, coupling(rng),
                                   i % 3 ? 0.0 : kappa(rng), detuning(rng)};
            const auto closed = wgqed::amplitudes_full(p);
            const auto system = wgqed::two_atom_to_system(
                p, 1e6, wgqed::PhaseMode::FixedPhase,
                wgqed::FrequencyUnits::DetuningFromReference);
            const auto sol =
                wgqed::solve({system, 0, wgqed::Direction::Rightward, p.detuning});
            using wgqed::Direction;
            double err = std::abs(sol.outgoing(0, Direction::Rightward) - closed.t_r1);
            err = std::max(err, std::abs(sol.outgoing(0, Direction::Leftward) - closed.r_l1));
            err = std::max(err, std::abs(sol.outgoing(1, Direction::Rightward) - closed.t_r2));
            err = std::max(err, std::abs(sol.outgoing(1, Direction::Leftward) - closed.r_l2));
            track(inv, err, p);
        }
        results.push_back(inv);
    }

    std::printf("%-34s %9s %13s %11s  %s\n", "invariant", "samples", "max error", "tolerance",
                "result");
    bool all_pass = true;
    for (const auto& inv : results) {
        std::printf("%-34s %9ld %13.3e %11.1e  %s\n", inv.name.c_str(), inv.samples,
                    inv.max_error, inv.tolerance, inv.pass() ? "pass" : "FAIL");
        all_pass = all_pass && inv.pass();
    }
    if (!all_pass) {
        for (const auto& inv : results) {
            if (inv.pass()) continue;
            std::fprintf(stderr,
                         "FAIL %s: worst case theta=%.17g phi=%.17g j=%.17g kappa=%.17g "
                         "delta=%.17g (error %.3e)\n",
                         inv.name.c_str(), inv.worst.theta, inv.worst.phi, inv.worst.j,
                         inv.worst.kappa, inv.worst.detuning, inv.max_error);
        }
        return kExitInvariant;
    }
    return kExitOk;
}

// ---------------------------------------------------------- solve/sweep ----

std::string read_input(const std::string& path)
{
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_solve(const std::string& input, double energy, int waveguide,
              const std::string& direction, const std::string& out_path)
{
    const wgqed::SystemSpec system = wgqed::system_from_json(read_input(input));
    wgqed::ScatteringProblem problem;
    problem.system = system;
    problem.input_waveguide = waveguide;
    problem.input_direction =
        direction == "left" ? wgqed::Direction::Leftward : wgqed::Direction::Rightward;
    problem.photon_energy = energy;
    const std::string payload = wgqed::solve_result_to_json(wgqed::solve(problem)) + "\n";
    if (out_path.empty()) {
        std::cout << payload;
        return kExitOk;
    }
    if (!write_file_atomic(out_path, payload)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitIo;
    }
    return kExitOk;
}

int run_sweep_cmd(const std::string& input, const std::string& out_path)
{
    const wgqed::SweepSpec spec = wgqed::sweep_spec_from_json(read_input(input));
    const wgqed::SweepTable table = wgqed::run_sweep(spec);
    std::ostringstream csv;
    wgqed::write_csv(table, csv);
    if (out_path.empty() || out_path == "-") {
        std::cout << csv.str();
        return kExitOk;
    }
    if (!write_file_atomic(out_path, csv.str())) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitIo;
    }
    std::printf("%zu rows -> %s\n", table.rows.size(), out_path.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"single-photon scattering engine for multi-point emitters on waveguides"};
    app.require_subcommand(1);

    PointArgs point_args;
    auto* point = app.add_subcommand("point", "evaluate one closed-form parameter set");
    add_angle_option(point, "--theta", point_args.p.theta, "phase of the waveguide-1 loop");
    add_angle_option(point, "--phi", point_args.p.phi, "phase of the waveguide-2 loop");
    point->add_option("--gamma", point_args.p.gamma, "per-leg decay rate (default 1)");
    point->add_option("--j", point_args.p.j, "direct emitter-emitter coupling");
    point->add_option("--kappa", point_args.p.kappa, "non-waveguide dissipation");
    point->add_option("--delta", point_args.p.detuning, "photon detuning");
    point->add_flag("--json", point_args.json, "machine-readable output");

    std::string fig_name, fig_out = "fig.csv";
    bool fig_list = false;
    auto* fig = app.add_subcommand("fig", "write a named figure dataset as CSV");
    fig->add_option("name", fig_name, "preset name (fig2, fig3a..fig5d)");
    fig->add_option("-o,--output", fig_out, "output CSV path");
    fig->add_flag("--list", fig_list, "list preset names and exit");

    long verify_n = 10000;
    unsigned long verify_seed = 1;
    auto* verify = app.add_subcommand("verify", "run the invariant audit suite");
    verify->add_option("-n,--samples", verify_n, "draws per invariant")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_seed, "RNG seed");

    std::string solve_in, solve_out, solve_direction = "right";
    double solve_energy = 0.0;
    int solve_waveguide = 0;
    auto* solve_cmd = app.add_subcommand("solve", "solve a JSON system description");
    solve_cmd->add_option("-i,--input", solve_in, "system JSON path, or - for stdin")
        ->required();
    solve_cmd->add_option("--energy", solve_energy, "photon energy (units per the system)");
    solve_cmd->add_option("--waveguide", solve_waveguide, "input waveguide id");
    solve_cmd->add_option("--direction", solve_direction, "right or left")
        ->check(CLI::IsMember({"right", "left"}));
    solve_cmd->add_option("-o,--output", solve_out, "result JSON path (default stdout)");

    std::string sweep_in, sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a JSON sweep specification");
    sweep_cmd->add_option("-i,--input", sweep_in, "sweep JSON path, or - for stdin")
        ->required();
    sweep_cmd->add_option("-o,--output", sweep_out, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (point->parsed()) return run_point(point_args);
        if (fig->parsed()) {
            if (fig_list) {
                for (const auto& name : wgqed::figure_preset_names())
                    std::printf("%s\n", name.c_str());
                return kExitOk;
            }
            if (fig_name.empty()) {
                std::cerr << "error: missing preset name\n";
                return kExitUsage;
            }
            return run_fig(fig_name, fig_out);
        }
        if (verify->parsed()) return run_verify(verify_n, verify_seed);
        if (solve_cmd->parsed())
            return run_solve(solve_in, solve_energy, solve_waveguide, solve_direction,
                             solve_out);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_in, sweep_out);
    } catch (const wgqed::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const wgqed::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
