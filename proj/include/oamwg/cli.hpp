#pragma once

// Command-line front end. run() returns the process exit status:
//   0 success, 1 runtime/I-O/validation error, 2 winding analysis failure,
//   CLI11 codes for usage errors.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oamwg/cascade.hpp"
#include "oamwg/excitation.hpp"
#include "oamwg/io.hpp"
#include "oamwg/modes.hpp"
#include "oamwg/oam.hpp"

namespace oamwg::cli {

namespace detail {

class AnalysisFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    return os;
}

inline void finish_output(std::ofstream& os, const std::string& path) {
    os.flush();
    if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

inline Guide make_guide(double radius, double eps_r) {
    Guide g{radius, eps_r};
    g.validate();
    return g;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analytic OAM mode toolkit for dielectric-filled circular waveguides", "oamwg"};
    app.require_subcommand(1);

    int digits = io::kDefaultDigits;
    double radius = 0.02;
    double eps_r = 1.0;

    auto add_guide = [&](CLI::App* cmd) {
        cmd->add_option("--radius", radius, "Guide radius in metres")->capture_default_str();
        cmd->add_option("--epsr", eps_r, "Relative permittivity of the fill")->capture_default_str();
        cmd->add_option("--digits", digits, "Significant digits in numeric output")->capture_default_str()
            ->check(CLI::Range(1, 17));
    };

    // cutoff
    std::string mode_text = "TE21";
    auto* cutoff = app.add_subcommand("cutoff", "Print the cutoff frequency of a mode (Hz)");
    add_guide(cutoff);
    cutoff->add_option("--mode", mode_text, "Mode, e.g. TE21")->required();

    // modes
    double freq = 10e9;
    int l_max = 4, m_max = 2;
    bool both = false;
    auto* modes = app.add_subcommand("modes", "List modes above cutoff at a frequency");
    add_guide(modes);
    modes->add_option("--freq", freq, "Frequency in Hz")->required();
    modes->add_option("--lmax", l_max, "Largest azimuthal index")->capture_default_str();
    modes->add_option("--mmax", m_max, "Largest radial index")->capture_default_str();
    modes->add_flag("--both", both, "List cos and sin orientations separately");

    // synth
    std::string orient_text = "rot+";
    int grid = 101;
    double z = 0.0;
    std::string out_path;
    auto* synth = app.add_subcommand("synth", "Write a transverse field map of one mode to CSV");
    add_guide(synth);
    synth->add_option("--mode", mode_text, "Mode, e.g. TE21")->required();
    synth->add_option("--orient,--rotation", orient_text, "cos | sin | rot+ | rot-")->capture_default_str();
    synth->add_option("--freq", freq, "Frequency in Hz")->required();
    synth->add_option("--n", grid, "Grid points per side")->capture_default_str()->check(CLI::Range(16, 4096));
    synth->add_option("--z", z, "Axial position in metres")->capture_default_str();
    synth->add_option("--out", out_path, "Output CSV path")->required();

    // analyze
    std::string in_path, component_text = "Ex";
    double ring_frac = 0.2;
    int n_phi = 256, q_max = 6;
    auto* analyze = app.add_subcommand("analyze", "Phase winding and azimuthal spectrum on a ring");
    add_guide(analyze);
    auto* in_opt = analyze->add_option("--in", in_path, "Field-map CSV written by synth");
    auto* amode = analyze->add_option("--mode", mode_text, "Mode to evaluate analytically instead of --in");
    analyze->add_option("--orient,--rotation", orient_text, "cos | sin | rot+ | rot-")->capture_default_str();
    analyze->add_option("--freq", freq, "Frequency in Hz (with --mode)");
    analyze->add_option("--z", z, "Axial position in metres (with --mode)");
    analyze->add_option("--component", component_text, "Ex Ey Erho Ephi Hz Eplus Eminus")->capture_default_str();
    analyze->add_option("--ring", ring_frac, "Ring radius as a fraction of the guide radius")->capture_default_str();
    analyze->add_option("--nphi", n_phi, "Samples on the ring")->capture_default_str();
    analyze->add_option("--qmax", q_max, "Largest |q| in the spectrum")->capture_default_str();
    in_opt->excludes(amode);

    // excite
    std::string config_path;
    l_max = 4;
    auto* excite_cmd = app.add_subcommand("excite", "Mode spectrum excited by a dipole array");
    excite_cmd->add_option("--config", config_path, "Array configuration (JSON)")->required();
    excite_cmd->add_option("--freq", freq, "Frequency in Hz")->required();
    excite_cmd->add_option("--lmax", l_max, "Largest azimuthal index")->capture_default_str();
    excite_cmd->add_option("--mmax", m_max, "Largest radial index")->capture_default_str();
    excite_cmd->add_option("--out", out_path, "Output spectrum document (JSON)");
    excite_cmd->add_option("--digits", digits, "Significant digits in numeric output")->capture_default_str()
        ->check(CLI::Range(1, 17));

    // cascade
    std::string segments_text;
    double f_start = 5e9, f_stop = 10e9, end_eps = 1.0;
    int steps = 501;
    auto* cascade_cmd = app.add_subcommand("cascade", "Transmission sweep through dielectric segments");
    add_guide(cascade_cmd);
    cascade_cmd->add_option("--segments", segments_text, "e.g. air:0.011,diel:2.5:0.008,air:0.011")->required();
    cascade_cmd->add_option("--mode", mode_text, "Mode, e.g. TE21")->capture_default_str();
    cascade_cmd->add_option("--fstart", f_start, "Sweep start (Hz)")->capture_default_str();
    cascade_cmd->add_option("--fstop", f_stop, "Sweep stop (Hz)")->capture_default_str();
    cascade_cmd->add_option("--steps", steps, "Number of frequency points")->capture_default_str();
    cascade_cmd->add_option("--end-epsr", end_eps, "Fill of both semi-infinite end regions")->capture_default_str();
    cascade_cmd->add_option("--out", out_path, "Output sweep CSV");

    std::vector<const char*> argv{"oamwg"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    auto num = [&](double v) { return io::format_number(v, digits); };

    try {
        if (*cutoff) {
            const auto mode = io::parse_mode(mode_text);
            out << num(cutoff_frequency(detail::make_guide(radius, eps_r), mode)) << '\n';
            return 0;
        }

        if (*modes) {
            const auto guide = detail::make_guide(radius, eps_r);
            static constexpr Orientation kBoth[] = {Orientation::Cos, Orientation::Sin};
            const auto list = both ? list_propagating(guide, freq, l_max, m_max, kBoth)
                                   : list_propagating(guide, freq, l_max, m_max);
            out << "mode,orientation,fc_hz,beta_rad_per_m,impedance_ohm\n";
            for (const auto& e : list)
                out << e.mode.name() << ',' << to_string(e.mode.orientation) << ',' << num(e.params.f_c) << ','
                    << num(e.params.gamma.imag()) << ',' << num(e.params.impedance.real()) << '\n';
            return 0;
        }

        if (*synth) {
            const auto guide = detail::make_guide(radius, eps_r);
            const auto mode = io::parse_mode(mode_text, io::parse_orientation(orient_text));
            const Constituent c[] = {{mode, 1.0}};
            const auto map = synthesize(guide, c, freq, grid, z);
            auto os = detail::open_output(out_path);
            io::write_field_map(os, map, digits);
            detail::finish_output(os, out_path);
            double peak = 0.0;
            for (const auto& s : map.samples)
                if (s) peak = std::max(peak, std::abs(s->ex()));
            out << "wrote " << out_path << " (" << grid << "x" << grid << ")\n";
            out << "peak |Ex| = " << num(peak) << " V/m\n";
            out << "suggested analysis ring: rho0 = " << num(0.2 * guide.radius) << " m (0.2 a)\n";
            return 0;
        }

        if (*analyze) {
            const auto component = io::parse_component(component_text);
            RingSamples ring;
            double a = radius;
            if (!in_path.empty()) {
                std::ifstream is(in_path, std::ios::binary);
                if (!is) throw std::runtime_error("cannot open '" + in_path + "'");
                const auto map = io::read_field_map(is);
                a = map.radius;
                ring = ring_extract(map, component, ring_frac * a, n_phi);
            } else if (!mode_text.empty() && *amode) {
                const auto guide = detail::make_guide(radius, eps_r);
                const Constituent c[] = {{io::parse_mode(mode_text, io::parse_orientation(orient_text)), 1.0}};
                ring = ring_extract(Superposition(guide, c, freq), component, ring_frac * a, n_phi, z);
            } else {
                throw std::runtime_error("analyze needs --in or --mode");
            }
            const auto spectrum = charge_spectrum(ring, q_max);
            const double total = spectrum.total();
            out << "component: " << to_string(component) << ", ring rho0 = " << num(ring.rho) << " m, N_phi = "
                << ring.size() << '\n';
            out << "q,power,fraction\n";
            for (int q = -q_max; q <= q_max; ++q)
                out << q << ',' << num(spectrum.at(q)) << ',' << num(total > 0 ? spectrum.at(q) / total : 0.0) << '\n';
            out << "dominant q: " << spectrum.dominant_q << '\n';
            try {
                const auto w = phase_winding(ring);
                out << "winding: " << w.charge << '\n' << "residual: " << num(w.residual) << '\n';
            } catch (const DomainError& e) {
                throw detail::AnalysisFailure(e.what());
            }
            return 0;
        }

        if (*excite_cmd) {
            std::ifstream is(config_path, std::ios::binary);
            if (!is) throw std::runtime_error("cannot open '" + config_path + "'");
            io::json doc;
            try {
                doc = io::json::parse(is);
            } catch (const io::json::parse_error& e) {
                throw std::runtime_error(config_path + ": " + e.what());
            }
            const auto cfg = io::parse_array_config(doc);
            const auto spectrum = excite(cfg.array, freq, l_max, m_max);
            for (const auto& w : spectrum.warnings) err << "warning: " << w << '\n';

            auto report = io::spectrum_to_json(spectrum, cfg.array.guide, digits);
            const double same_l = purity(spectrum, cfg.target, PurityScope::SameLSubspace);
            report["target"] = {{"mode", cfg.target.name()},
                                {"orientation", to_string(cfg.target.orientation)},
                                {"purity_same_l", io::round_to_digits(same_l, digits)}};
            out << "target " << cfg.target.label() << '\n';
            out << "purity (same-l subspace): " << num(same_l) << '\n';
            if (spectrum.at(cfg.target).propagating) {
                const double all = purity(spectrum, cfg.target, PurityScope::AllPropagating);
                report["target"]["purity_all_propagating"] = io::round_to_digits(all, digits);
                out << "purity (all propagating): " << num(all) << '\n';
            } else {
                out << "purity (all propagating): n/a (target is evanescent)\n";
            }
            if (!out_path.empty()) {
                auto os = detail::open_output(out_path);
                os << report.dump(2) << '\n';
                detail::finish_output(os, out_path);
                out << "wrote " << out_path << '\n';
            }
            return 0;
        }

        if (*cascade_cmd) {
            const auto segments = io::parse_segments(segments_text);
            const auto mode = io::parse_mode(mode_text);
            const EndRegions ends{end_eps, end_eps};
            const auto sweep = transmission_sweep(radius, mode, f_start, f_stop, steps, segments, ends);
            if (!out_path.empty()) {
                auto os = detail::open_output(out_path);
                os << "f_hz,abs_T,arg_T_rad\n";
                for (const auto& p : sweep.points) os << num(p.f) << ',' << num(p.magnitude) << ',' << num(p.phase) << '\n';
                detail::finish_output(os, out_path);
                out << "wrote " << out_path << '\n';
            }
            out << "end-region cutoff of " << mode.name() << ": " << num(cutoff_frequency(Guide{radius, end_eps}, mode))
                << " Hz\n";
            if (sweep.onset)
                out << "onset (|T| > 0.5): " << num(*sweep.onset) << " Hz\n";
            else
                out << "onset (|T| > 0.5): none in sweep\n";
            return 0;
        }
    } catch (const detail::AnalysisFailure& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace oamwg::cli
