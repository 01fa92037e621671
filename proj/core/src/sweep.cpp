#include "wgqed/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <utility>

#include "wgqed/closed_form.hpp"
#include "wgqed/realspace.hpp"

namespace wgqed {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double grid_value(const AxisSpec& axis, int i)
{
    if (i == 0) return axis.start;
    if (i == axis.count - 1) return axis.stop;
    return axis.start + (axis.stop - axis.start) * (static_cast<double>(i) / (axis.count - 1));
}

bool touches_two_atom(SweepAxis a)
{
    return a == SweepAxis::Theta || a == SweepAxis::Phi;
}

bool touches_fig5(SweepAxis a)
{
    return a == SweepAxis::Delta2 || a == SweepAxis::Delta3;
}

void validate_spec(const SweepSpec& spec)
{
    std::vector<std::string> problems;
    if (spec.axes.empty() || spec.axes.size() > 2)
        problems.push_back("sweep needs 1 or 2 axes");
    if (spec.axes.size() == 2 && spec.axes[0].axis == spec.axes[1].axis)
        problems.push_back("sweep axes must be distinct");
    for (const auto& axis : spec.axes) {
        if (axis.count < 2) problems.push_back("each axis needs count >= 2");
        if (!std::isfinite(axis.start) || !std::isfinite(axis.stop))
            problems.push_back("axis bounds must be finite");
    }
    if (spec.fig5 && spec.engine != SweepEngine::RealSpace)
        problems.push_back("the three-qubit base requires the RealSpace engine");
    for (const auto& axis : spec.axes) {
        if (touches_fig5(axis.axis) && !spec.fig5)
            problems.push_back("delta2/delta3 axes require the three-qubit base");
        if (touches_two_atom(axis.axis) && spec.fig5)
            problems.push_back("theta/phi axes do not apply to the three-qubit base");
    }
    if (spec.outputs.collective && spec.engine != SweepEngine::ClosedForm)
        problems.push_back("collective outputs are only defined for the ClosedForm engine");
    const double gamma = spec.fig5 ? spec.fig5->gamma : spec.base.gamma;
    if (!(gamma > 0.0)) problems.push_back("gamma must be positive");
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

struct RowPoint {
    TwoAtomParams p;              // in effect for two-atom rows
    Fig5Base f;                   // in effect for three-qubit rows
    bool fig5 = false;
    double probe = 0.0;           // photon detuning from the carrier
};

RowPoint apply_axes(const SweepSpec& spec, const std::vector<double>& axis_values)
{
    RowPoint pt;
    pt.fig5 = spec.fig5.has_value();
    pt.p = spec.base;
    if (pt.fig5) pt.f = *spec.fig5;
    for (size_t i = 0; i < spec.axes.size(); ++i) {
        const double v = axis_values[i];
        switch (spec.axes[i].axis) {
            case SweepAxis::Detuning:
                pt.p.detuning = v;
                pt.f.detuning = v;
                break;
            case SweepAxis::Theta: pt.p.theta = v; break;
            case SweepAxis::Phi: pt.p.phi = v; break;
            case SweepAxis::Kappa:
                pt.p.kappa = v;
                pt.f.kappa = v;
                break;
            case SweepAxis::Delta2: pt.f.delta2 = v; break;
            case SweepAxis::Delta3: pt.f.delta3 = v; break;
        }
    }
    if (!pt.fig5 && spec.enforce_degeneracy)
        pt.p.j = degeneracy_coupling(pt.p.theta, pt.p.phi, pt.p.gamma);
    pt.probe = pt.fig5 ? pt.f.detuning : pt.p.detuning;
    return pt;
}

ScatteringAmplitudes evaluate(const SweepSpec& spec, const RowPoint& pt)
{
    if (spec.engine == SweepEngine::ClosedForm) return amplitudes_full(pt.p);

    SystemSpec system;
    if (pt.fig5) {
        system = fig5_preset(pt.f.delta2, pt.f.delta3, pt.f.kappa, pt.f.gamma, pt.f.carrier);
    } else {
        const double carrier = spec.carrier > 0.0 ? spec.carrier : 1e6 * pt.p.gamma;
        system = two_atom_to_system(pt.p, carrier, spec.phase_mode,
                                    FrequencyUnits::DetuningFromReference);
    }
    ScatteringProblem problem{std::move(system), 0, Direction::Rightward, pt.probe};
    SolveResult result = solve(problem);
    return {result.outgoing(0, Direction::Rightward), result.outgoing(0, Direction::Leftward),
            result.outgoing(1, Direction::Rightward), result.outgoing(1, Direction::Leftward)};
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec)
{
    validate_spec(spec);
    const bool fig5 = spec.fig5.has_value();

    SweepTable table;
    table.columns = {"theta", "phi", "delta", "kappa"};
    if (fig5) {
        table.columns.push_back("delta2");
        table.columns.push_back("delta3");
    }
    const SweepOutputs& out = spec.outputs;
    if (out.t) table.columns.push_back("T");
    if (out.r) table.columns.push_back("R");
    if (out.t_f) table.columns.push_back("T_f");
    if (out.t_b) table.columns.push_back("T_b");
    if (out.loss) table.columns.push_back("loss");
    if (out.amplitudes)
        for (const char* name : {"t_r1_re", "t_r1_im", "r_l1_re", "r_l1_im", "t_r2_re",
                                 "t_r2_im", "r_l2_re", "r_l2_im"})
            table.columns.push_back(name);
    if (out.collective)
        for (const char* name :
             {"lambda_plus_re", "lambda_plus_im", "lambda_minus_re", "lambda_minus_im",
              "gamma1_plus", "gamma1_minus", "gamma2_plus", "gamma2_minus", "j1", "j2",
              "j_sigma"})
            table.columns.push_back(name);
    table.columns.push_back("status");

    const size_t n_values = table.columns.size() - 1;
    const int outer = spec.axes[0].count;
    const int inner = spec.axes.size() == 2 ? spec.axes[1].count : 1;
    table.rows.reserve(static_cast<size_t>(outer) * inner);

    std::vector<double> axis_values(spec.axes.size());
    for (int i = 0; i < outer; ++i) {
        axis_values[0] = grid_value(spec.axes[0], i);
        for (int k = 0; k < inner; ++k) {
            if (spec.axes.size() == 2) axis_values[1] = grid_value(spec.axes[1], k);
            const RowPoint pt = apply_axes(spec, axis_values);

            SweepRecord record;
            record.values.reserve(n_values);
            // The three-qubit scheme puts both pairs a quarter wavelength
            // apart, so the nominal carrier phases are pi/2.
            record.values.push_back(fig5 ? M_PI / 2.0 : pt.p.theta);
            record.values.push_back(fig5 ? M_PI / 2.0 : pt.p.phi);
            record.values.push_back(pt.probe);
            record.values.push_back(fig5 ? pt.f.kappa : pt.p.kappa);
            if (fig5) {
                record.values.push_back(pt.f.delta2);
                record.values.push_back(pt.f.delta3);
            }

            record.status = "ok";
            ScatteringAmplitudes amp{};
            ScatteringProbabilities prob{};
            try {
                amp = evaluate(spec, pt);
                prob = probabilities(amp);
            } catch (const NearPoleError&) {
                record.status = "near_pole";
            } catch (const SolverDegenerateError&) {
                record.status = "degenerate";
            } catch (const ValidationError&) {
                record.status = "invalid";
            } catch (const std::exception&) {
                record.status = "error";
            }
            const bool ok = record.status == "ok";
            auto push = [&](double v) { record.values.push_back(ok ? v : kNaN); };
            if (out.t) push(prob.t);
            if (out.r) push(prob.r);
            if (out.t_f) push(prob.t_f);
            if (out.t_b) push(prob.t_b);
            if (out.loss) push(prob.loss);
            if (out.amplitudes) {
                for (complex a : {amp.t_r1, amp.r_l1, amp.t_r2, amp.r_l2}) {
                    push(a.real());
                    push(a.imag());
                }
            }
            if (out.collective) {
                CollectiveParams c{};
                if (ok) c = collective_params(pt.p);
                push(c.lambda_plus.real());
                push(c.lambda_plus.imag());
                push(c.lambda_minus.real());
                push(c.lambda_minus.imag());
                push(c.gamma1_plus);
                push(c.gamma1_minus);
                push(c.gamma2_plus);
                push(c.gamma2_minus);
                push(c.j1);
                push(c.j2);
                push(c.j_sigma);
            }
            table.rows.push_back(std::move(record));
        }
    }
    return table;
}

SweepSpec figure_preset(const std::string& name)
{
    const AxisSpec detuning_axis{SweepAxis::Detuning, -10.0, 10.0, 201};

    SweepSpec spec;
    auto two_atom = [&](double theta, double phi) {
        spec.engine = SweepEngine::ClosedForm;
        spec.base = TwoAtomParams{theta, phi, 1.0, 0.0, 0.0, 0.0};
        spec.enforce_degeneracy = true;  // J pinned to -gamma (sin theta + sin phi)
        spec.axes = {detuning_axis};
    };
    auto three_qubit = [&](double delta2, double delta3) {
        spec.engine = SweepEngine::RealSpace;
        spec.fig5 = Fig5Base{delta2, delta3, 0.1, 1.0, 0.0, 0.0};
        spec.axes = {detuning_axis};
    };

    if (name == "fig2") {
        spec.engine = SweepEngine::ClosedForm;
        spec.base = TwoAtomParams{0.0, 0.0, 1.0, 0.0, 0.0, 0.0};
        spec.enforce_degeneracy = true;
        spec.axes = {{SweepAxis::Theta, 0.0, 2.0 * M_PI, 201},
                     {SweepAxis::Phi, 0.0, 2.0 * M_PI, 201}};
    } else if (name == "fig3a") {
        two_atom(M_PI, M_PI);
    } else if (name == "fig3b") {
        two_atom(M_PI, 2.0 * M_PI);
    } else if (name == "fig4a") {
        two_atom(M_PI / 8.0, M_PI / 8.0);
    } else if (name == "fig4b") {
        two_atom(M_PI / 4.0, M_PI / 4.0);
    } else if (name == "fig4c") {
        two_atom(M_PI / 2.0, M_PI / 2.0);
    } else if (name == "fig4d") {
        two_atom(M_PI / 8.0, 2.0 * M_PI - M_PI / 8.0);
    } else if (name == "fig4e") {
        two_atom(M_PI / 4.0, 2.0 * M_PI - M_PI / 4.0);
    } else if (name == "fig4f") {
        two_atom(M_PI / 2.0, 2.0 * M_PI - M_PI / 2.0);
    } else if (name == "fig5b") {
        three_qubit(50.0, 0.0);  // forward pair active
    } else if (name == "fig5c") {
        three_qubit(0.0, 50.0);  // backward pair active
    } else if (name == "fig5d") {
        three_qubit(50.0, 0.0);
        spec.axes = {{SweepAxis::Kappa, 0.0, 1.0, 201}};
    } else {
        throw ValidationError("unknown figure preset: " + name);
    }
    return spec;
}

std::vector<std::string> figure_preset_names()
{
    return {"fig2",  "fig3a", "fig3b", "fig4a", "fig4b", "fig4c",
            "fig4d", "fig4e", "fig4f", "fig5b", "fig5c", "fig5d"};
}

void write_csv(const SweepTable& table, std::ostream& out)
{
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    char buf[40];
    for (const auto& row : table.rows) {
        for (double v : row.values) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << buf << ',';
        }
        out << row.status << '\n';
    }
}

}  // namespace wgqed
