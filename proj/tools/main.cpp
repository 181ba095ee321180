// mmpfloer: symplectic MMP runnings, disk-potential certificates, polytope
// timelines, and curved A-infinity verification from the command line.

#include <mmpfloer/json_io.hpp>
#include <mmpfloer/svg.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using mmpfloer::Rational;
using mmpfloer::io::json;
namespace mmp = mmpfloer::mmp;
namespace nv = mmpfloer::novikov;
namespace pot = mmpfloer::potential;

constexpr int kExitSpecError = 2;
constexpr int kExitInfeasible = 3;

struct Config {
    std::string spec_path;
    std::string truncation = "10";
    double zero_tol = 1e-9;
    std::string out_path;
    std::string svg_path;
    std::string coeff_mode = "complex";
    size_t transition_index = 0;
};

long read_thread_cap() {
    const char* env = std::getenv("MMPFLOER_THREADS");
    if (!env) return 0;
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) {
        std::cerr << "warning: ignoring invalid MMPFLOER_THREADS=" << env << "\n";
        return 0;
    }
    return n;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw nlohmann::json::other_error::create(500, "cannot open " + path, nullptr);
    return json::parse(in);
}

void write_output(const Config& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(cfg.out_path);
    if (!out) throw std::runtime_error("cannot write " + cfg.out_path);
    out << text << "\n";
}

bool infeasibility_error(const std::string& msg) {
    return msg.find("unbounded") != std::string::npos ||
           msg.find("empty solution set") != std::string::npos ||
           msg.find("empty initial moduli") != std::string::npos ||
           msg.find("dominant") != std::string::npos ||
           msg.find("[0, 1/2]") != std::string::npos;
}

int cmd_run(const Config& cfg) {
    json spec;
    try {
        spec = load_json(cfg.spec_path);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kExitSpecError;
    }
    try {
        mmp::Geometry g = mmpfloer::io::geometry_from_json(spec);
        mmp::MmpRunning run = mmp::run_mmp(g);
        json report = mmpfloer::io::running_to_json(run);
        report["coefficient_mode"] = cfg.coeff_mode;
        write_output(cfg, report.dump(2));
        return 0;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kExitSpecError;
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        std::cerr << (infeasibility_error(msg) ? "infeasible geometry: " : "spec error: ") << msg
                  << "\n";
        return infeasibility_error(msg) ? kExitInfeasible : kExitSpecError;
    }
}

int cmd_certify(const Config& cfg) {
    json spec;
    try {
        spec = load_json(cfg.spec_path);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kExitSpecError;
    }
    try {
        mmp::Geometry g = mmpfloer::io::geometry_from_json(spec);
        const auto* tg = std::get_if<mmp::ToricGeometry>(&g);
        if (!tg) {
            std::cerr << "certify requires a toric geometry spec\n";
            return kExitSpecError;
        }
        const auto& P = tg->poly;
        auto transitions = mmp::toric_transition_times(P);
        if (cfg.transition_index >= transitions.size()) {
            std::cerr << "transition index " << cfg.transition_index << " out of range (have "
                      << transitions.size() << ")\n";
            return kExitSpecError;
        }
        const auto& tr = transitions[cfg.transition_index];
        auto fiber = mmp::toric_regular_fiber(P, tr);

        Rational trunc = mmpfloer::parse_rational(cfg.truncation);
        pot::LaurentPotential W = pot::toric_potential(P, fiber.point, trunc);
        pot::LaurentPotential W0 = pot::leading_part(W);
        auto cps = pot::critical_points_leading(W0);

        json points = json::array();
        bool all_real = true;
        for (const auto& cp : cps) {
            pot::CriticalPoint lifted = pot::newton_lift(W, cp, trunc);
            pot::HFCertificate cert = pot::hf_certificate(W, lifted);
            for (const auto& v : lifted.y.values)
                for (const auto& t : v.terms) all_real = all_real && std::abs(t.coef.imag()) < 1e-9;
            points.push_back({{"local_system", mmpfloer::io::local_system_to_json(lifted.y)},
                              {"hessian_det", mmpfloer::io::series_to_json(lifted.hessian_det)},
                              {"nondegenerate", lifted.nondegenerate},
                              {"certificate", mmpfloer::io::certificate_to_json(cert)}});
        }
        if (cfg.coeff_mode == "exact" && !all_real) {
            std::cerr << "exact coefficient mode cannot represent these critical local systems "
                         "(non-real roots of unity); rerun with --coeff complex\n";
            return kExitInfeasible;
        }
        json report = {{"transition", mmpfloer::io::transition_to_json(tr)},
                       {"potential", mmpfloer::io::potential_to_json(W)},
                       {"critical_points", points},
                       {"coefficient_mode", cfg.coeff_mode}};
        json fiber_pt = json::array();
        for (const auto& x : fiber.point) fiber_pt.push_back(mmpfloer::rational_to_string(x));
        report["fiber"] = {{"point", fiber_pt}, {"regular", fiber.regular},
                           {"terminal", fiber.terminal}, {"note", fiber.note}};
        long m = tr.multiplicity.value_or(-1);
        report["multiplicity_check"] = {{"transition_multiplicity", m},
                                        {"critical_count", cps.size()},
                                        {"consistent", m == long(cps.size())}};
        write_output(cfg, report.dump(2));
        return 0;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kExitSpecError;
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        std::cerr << (infeasibility_error(msg) ? "infeasible geometry: " : "spec error: ") << msg
                  << "\n";
        return infeasibility_error(msg) ? kExitInfeasible : kExitSpecError;
    }
}

int cmd_svg(const Config& cfg) {
    try {
        json spec = load_json(cfg.spec_path);
        mmp::Geometry g = mmpfloer::io::geometry_from_json(spec);
        const auto* tg = std::get_if<mmp::ToricGeometry>(&g);
        if (!tg) {
            std::cerr << "svg requires a toric geometry spec\n";
            return kExitSpecError;
        }
        std::string drawing = mmpfloer::svg::render_toric_timeline(tg->poly);
        std::string path = cfg.svg_path.empty() ? cfg.out_path : cfg.svg_path;
        if (path.empty()) {
            std::cout << drawing;
        } else {
            std::ofstream out(path);
            if (!out) throw std::runtime_error("cannot write " + path);
            out << drawing;
        }
        return 0;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kExitSpecError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSpecError;
    }
}

int cmd_ainfty_verify(const Config& cfg) {
    try {
        json spec = load_json(cfg.spec_path);
        auto A = mmpfloer::io::algebra_from_json(spec);
        auto report = mmpfloer::ainfty::verify_ainfty(A);
        json offenders = json::array();
        for (const auto& o : report.offenders)
            offenders.push_back({{"inputs", o.inputs}, {"residual", o.residual}});
        json out = {{"max_residual", report.max_residual}, {"offenders", offenders}};
        if (A.unit_index) out["strict_unit"] = mmpfloer::ainfty::verify_strict_unit(A);
        if (spec.contains("b")) {
            mmpfloer::ainfty::MCElement b;
            b.b = mmpfloer::ainfty::el_zero(A);
            auto arr = spec.at("b");
            for (size_t i = 0; i < arr.size() && i < b.b.size(); ++i)
                b.b[i] = mmpfloer::io::series_from_json(arr[i]);
            auto [ok, W] = mmpfloer::ainfty::weak_mc_check(A, b);
            out["weak_mc"] = {{"is_solution", ok},
                              {"potential", mmpfloer::io::series_to_json(W)},
                              {"mu1b_squared", mmpfloer::ainfty::mu1b_squared(A, b)}};
        }
        write_output(cfg, out.dump(2));
        return out["max_residual"].get<double>() <= nv::zero_tolerance() ? 0 : 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kExitSpecError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSpecError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symplectic mmp runnings and Floer certificates"};
    app.require_subcommand(1);
    Config cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("spec", cfg.spec_path, "geometry/algebra spec (JSON)")->required();
        sub->add_option("--truncation", cfg.truncation, "Novikov truncation order P/Q");
        sub->add_option("--zero-tol", cfg.zero_tol, "coefficient zero tolerance");
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
        sub->add_option("--coeff", cfg.coeff_mode, "coefficient mode")
            ->check(CLI::IsMember({"exact", "complex"}));
    };

    auto* run = app.add_subcommand("run", "compute and classify the mmp running");
    add_common(run);
    auto* certify = app.add_subcommand("certify", "Floer non-triviality certificate at a transition");
    add_common(certify);
    certify->add_option("--transition", cfg.transition_index, "transition index (default 0)");
    auto* svg = app.add_subcommand("svg", "render a 2-d toric running timeline");
    add_common(svg);
    svg->add_option("--svg", cfg.svg_path, "SVG output path");
    auto* ainfty = app.add_subcommand("ainfty-verify", "verify a curved A-infinity algebra spec");
    add_common(ainfty);

    CLI11_PARSE(app, argc, argv);

    try {
        Rational trunc = mmpfloer::parse_rational(cfg.truncation);
        if (trunc <= 0) throw std::invalid_argument("truncation must be positive");
        nv::set_zero_tolerance(cfg.zero_tol);
    } catch (const std::invalid_argument& e) {
        std::cerr << "option error: " << e.what() << "\n";
        return kExitSpecError;
    }
    read_thread_cap();  // validated; computation is deterministic single-run

    if (run->parsed()) return cmd_run(cfg);
    if (certify->parsed()) return cmd_certify(cfg);
    if (svg->parsed()) return cmd_svg(cfg);
    if (ainfty->parsed()) return cmd_ainfty_verify(cfg);
    return kExitSpecError;
}
