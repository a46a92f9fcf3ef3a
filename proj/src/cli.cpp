#include "thetascope/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "thetascope/json_io.hpp"
#include "thetascope/parallel.hpp"

namespace thetascope::cli {

namespace {

using io::json;

core::Precision parse_precision(const std::string& s) {
    if (s == "standard") return core::Precision::standard;
    if (s == "extended") return core::Precision::extended;
    throw CLI::ValidationError("--precision", "must be 'standard' or 'extended'");
}

std::string default_precision() {
    const char* env = std::getenv("THETA_SCOPE_PRECISION");
    if (env && (std::string(env) == "extended" || std::string(env) == "standard"))
        return env;
    return "standard";
}

// Output goes to --out when given, standard output otherwise.
void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

struct Options {
    double q = 0.0, q2 = 0.0, x_re = 0.0, x_im = 0.0;
    double radius = 1.0, tol = 1e-12, x_mod = 1.0;
    double q_lo = 0.0, q_hi = 0.0, q_min = 0.0, q_max = 0.0;
    int n = 0, k = 1, steps = 16, resolution = 0, q_steps = 0;
    bool block = false;
    std::string precision = default_precision();
    std::string format = "csv";
    std::string feature;
    std::string out_path;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"certified evaluation, zero localization and unit-circle image "
                 "geometry of the partial theta function"};
    app.name("theta-scope");
    app.require_subcommand(1);

    Options o;
    int exit_code = kExitOk;
    std::string pending_output;

    auto add_precision = [&](CLI::App* cmd) {
        cmd->add_option("--precision", o.precision, "standard or extended")
            ->default_val(default_precision());
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", o.out_path, "write output to this file");
    };

    // eval / deriv
    auto* eval = app.add_subcommand("eval", "certified theta(q, x)");
    eval->add_option("--q", o.q)->required();
    eval->add_option("--x-re", o.x_re)->required();
    eval->add_option("--x-im", o.x_im);
    add_precision(eval);
    add_out(eval);
    eval->callback([&] {
        auto cv = core::eval_theta(o.q, {o.x_re, o.x_im}, parse_precision(o.precision));
        pending_output = io::certified_json(cv).dump() + "\n";
    });

    auto* deriv = app.add_subcommand("deriv", "certified d theta / dx");
    deriv->add_option("--q", o.q)->required();
    deriv->add_option("--x-re", o.x_re)->required();
    deriv->add_option("--x-im", o.x_im);
    add_precision(deriv);
    add_out(deriv);
    deriv->callback([&] {
        auto cv = core::eval_theta_dx(o.q, {o.x_re, o.x_im}, parse_precision(o.precision));
        pending_output = io::certified_json(cv).dump() + "\n";
    });

    auto* trunc = app.add_subcommand("truncate", "exact partial sum theta_n(q, x)");
    trunc->add_option("--q", o.q)->required();
    trunc->add_option("--x-re", o.x_re)->required();
    trunc->add_option("--x-im", o.x_im);
    trunc->add_option("--n", o.n)->required();
    add_out(trunc);
    trunc->callback([&] {
        auto v = core::eval_truncation(o.q, {o.x_re, o.x_im}, o.n);
        pending_output = json{{"q", o.q}, {"n", o.n}, {"value", io::complex_json(v)}}.dump() + "\n";
    });

    auto* certify = app.add_subcommand("certify-disk", "argument-principle zero count on |x| = radius");
    certify->add_option("--q", o.q)->required();
    certify->add_option("--radius", o.radius)->default_val(1.0);
    add_precision(certify);
    add_out(certify);
    certify->callback([&] {
        if (o.q == 0.0)
            throw CLI::ValidationError("--q", "q = 0 makes theta identically 1; nothing to certify");
        auto cert = zeros::count_zeros_in_disk(o.q, o.radius, parse_precision(o.precision));
        pending_output = io::disk_json(cert).dump() + "\n";
        if (cert.status != zeros::DiskCertificate::Status::certified)
            exit_code = kExitInconclusive;
        else if (o.radius <= 1.0 && cert.winding != 0)
            exit_code = kExitContractFailure;
    });

    auto* zcmd = app.add_subcommand("zeros", "roots of the degree-n truncation");
    zcmd->add_option("--q", o.q)->required();
    zcmd->add_option("--n", o.n)->required();
    double inside = 0.0;
    auto* inside_opt = zcmd->add_option("--inside", inside, "keep roots with modulus < this");
    add_out(zcmd);
    zcmd->callback([&] {
        if (o.q == 0.0)
            throw CLI::ValidationError("--q", "q = 0 makes theta identically 1; no zeros exist");
        auto tr = zeros::truncation_roots(o.q, o.n);
        if (!inside_opt->empty()) {
            zeros::TruncationRoots filtered = tr;
            filtered.roots.clear();
            filtered.residuals.clear();
            for (std::size_t i = 0; i < tr.roots.size(); ++i) {
                if (std::abs(tr.roots[i]) < inside) {
                    filtered.roots.push_back(tr.roots[i]);
                    filtered.residuals.push_back(tr.residuals[i]);
                }
            }
            tr = std::move(filtered);
        }
        pending_output = io::truncation_roots_json(tr).dump() + "\n";
        if (!tr.converged) exit_code = kExitInconclusive;
    });

    auto* track = app.add_subcommand("track", "predictor-corrector zero continuation in q");
    track->add_option("--q-start", o.q)->required();
    track->add_option("--q-end", o.q2)->required();
    track->add_option("--seed-re", o.x_re)->required();
    track->add_option("--seed-im", o.x_im);
    track->add_option("--steps", o.steps)->default_val(16);
    add_precision(track);
    add_out(track);
    track->callback([&] {
        auto tr = zeros::track_zero(o.q, o.q2, {o.x_re, o.x_im}, o.steps,
                                    parse_precision(o.precision));
        pending_output = io::track_json(tr).dump() + "\n";
        if (!tr.reached_end) exit_code = kExitInconclusive;
    });

    auto* ek = app.add_subcommand("ek-bound", "Enestrom-Kakeya minimum ratio bound");
    ek->add_option("--q", o.q)->required();
    ek->add_option("--n", o.n)->default_val(50);
    add_out(ek);
    ek->callback([&] {
        pending_output =
            json{{"q", o.q}, {"n", o.n}, {"bound", zeros::enestrom_kakeya_bound(o.q, o.n)}}.dump() + "\n";
    });

    auto* sqrtdisk = app.add_subcommand("sqrt-disk", "lower bound for |theta| on |x| = 1/sqrt|q|");
    sqrtdisk->add_option("--q", o.q)->required();
    add_out(sqrtdisk);
    sqrtdisk->callback([&] {
        pending_output = json{{"q", o.q}, {"bound", zeros::sqrt_disk_bound(o.q)}}.dump() + "\n";
    });

    auto* budget = app.add_subcommand("tail-budget", "certified truncation tail budget");
    budget->add_option("--q", o.q)->required();
    budget->add_option("--x-mod", o.x_mod)->required();
    budget->add_option("--n", o.n)->required();
    add_out(budget);
    budget->callback([&] {
        auto tb = zeros::tail_budget(o.q, o.x_mod, o.n);
        json j = io::tail_budget_json(tb);
        j["q"] = o.q;
        j["x_mod"] = o.x_mod;
        j["n"] = o.n;
        pending_output = j.dump() + "\n";
    });

    auto* tp = app.add_subcommand("triple-product", "Jacobi triple product partial value");
    tp->add_option("--q", o.q)->required();
    tp->add_option("--x-re", o.x_re)->required();
    tp->add_option("--x-im", o.x_im);
    tp->add_option("--tol", o.tol)->default_val(1e-12);
    add_out(tp);
    tp->callback([&] {
        auto r = jacobi::triple_product(o.q, {o.x_re, o.x_im}, o.tol);
        json j = io::triple_product_json(r);
        j["identity_residual"] = jacobi::identity_residual(o.q, {o.x_re, o.x_im});
        pending_output = j.dump() + "\n";
    });

    auto* un = app.add_subcommand("unity", "numerator polynomial at a primitive root of unity");
    un->add_option("--n", o.n)->required();
    un->add_option("--k", o.k)->default_val(1);
    un->add_flag("--block", o.block, "degree n-1 antiperiodic block (even n)");
    add_out(un);
    un->callback([&] {
        auto num = o.block ? unity::build_antiperiodic_block(o.n, o.k)
                           : unity::build_numerator(o.n, o.k);
        json j = io::unity_json(num);
        j["self_reciprocal_residual"] = unity::check_self_reciprocal(num);
        const auto root = unity::interior_root(num);
        j["interior_root"] = io::complex_json(root);
        j["interior_root_modulus"] = std::abs(root);
        pending_output = j.dump() + "\n";
    });

    auto* cls = app.add_subcommand("classify-image", "shape classification of the circle image");
    cls->add_option("--q", o.q)->required();
    cls->add_option("--resolution", o.resolution)->default_val(512);
    add_precision(cls);
    add_out(cls);
    cls->callback([&] {
        auto c = geom::classify_image(o.q, parse_precision(o.precision), o.resolution);
        pending_output = io::classification_json(c).dump() + "\n";
    });

    auto* sample = app.add_subcommand("sample-image", "sampled image of the unit circle");
    sample->add_option("--q", o.q)->required();
    sample->add_option("--resolution", o.resolution)->default_val(256);
    sample->add_option("--format", o.format)->default_val("csv")
        ->check(CLI::IsMember({"csv", "json"}));
    add_precision(sample);
    add_out(sample);
    sample->callback([&] {
        auto s = geom::sample_circle_image(o.q, o.resolution, parse_precision(o.precision));
        if (o.format == "csv") {
            std::ostringstream ss;
            geom::write_csv(s, ss);
            pending_output = ss.str();
        } else {
            pending_output = io::curve_sample_json(s).dump() + "\n";
        }
    });

    auto* nest = app.add_subcommand("nesting", "is the inner image inside the (loop-excised) outer image");
    nest->add_option("--q-inner", o.q)->required();
    nest->add_option("--q-outer", o.q2)->required();
    add_precision(nest);
    add_out(nest);
    nest->callback([&] {
        const bool nested = geom::nesting_check(o.q, o.q2, parse_precision(o.precision));
        pending_output =
            json{{"q_inner", o.q}, {"q_outer", o.q2}, {"nested", nested}}.dump() + "\n";
    });

    auto* thr = app.add_subcommand("threshold", "bisection on q for a shape-feature onset");
    thr->add_option("--feature", o.feature)->required()
        ->check(CLI::IsMember({"cusp", "right_inflections", "self_intersection", "axis_tangency"}));
    thr->add_option("--q-lo", o.q_lo)->required();
    thr->add_option("--q-hi", o.q_hi)->required();
    add_precision(thr);
    add_out(thr);
    thr->callback([&] {
        geom::Feature f = geom::Feature::cusp;
        if (o.feature == "right_inflections") f = geom::Feature::right_inflections;
        else if (o.feature == "self_intersection") f = geom::Feature::self_intersection;
        else if (o.feature == "axis_tangency") f = geom::Feature::axis_tangency;
        const double qt = geom::threshold_search(f, o.q_lo, o.q_hi, parse_precision(o.precision));
        pending_output = json{{"feature", o.feature},
                              {"q_lo", o.q_lo},
                              {"q_hi", o.q_hi},
                              {"q_threshold", qt}}.dump() + "\n";
    });

    auto* hyp = app.add_subcommand("hyperbola", "max residual of the q = -1 image against (X-1/2)^2 - Y^2 = 1/4");
    hyp->add_option("--resolution", o.resolution)->default_val(4096);
    add_out(hyp);
    hyp->callback([&] {
        pending_output = json{{"resolution", o.resolution},
                              {"max_residual", geom::hyperbola_residual(o.resolution)}}.dump() + "\n";
    });

    auto* sweep = app.add_subcommand("sweep", "certify-disk over a q grid, one JSON line per q");
    sweep->add_option("--q-min", o.q_min)->required();
    sweep->add_option("--q-max", o.q_max)->required();
    sweep->add_option("--q-steps", o.q_steps)->required()->check(CLI::PositiveNumber);
    sweep->add_option("--radius", o.radius)->default_val(1.0);
    add_precision(sweep);
    add_out(sweep);
    sweep->callback([&] {
        std::vector<double> grid;
        for (int i = 0; i < o.q_steps; ++i) {
            const double q = o.q_steps == 1
                                 ? o.q_min
                                 : o.q_min + (o.q_max - o.q_min) * i / (o.q_steps - 1);
            if (q != 0.0 && std::abs(q) < 1.0) grid.push_back(q);
        }
        const auto prec = parse_precision(o.precision);
        std::vector<zeros::DiskCertificate> certs(grid.size());
        // Parallel over the grid; each certification runs its serial path.
        parallel_for(default_exec(), grid.size(), [&](std::size_t i) {
            certs[i] = zeros::count_zeros_in_disk(grid[i], o.radius, prec, Exec::serial);
        });
        std::string lines;
        bool any_fail = false, any_inconclusive = false;
        for (const auto& c : certs) {
            lines += io::disk_json(c).dump() + "\n";
            if (c.status != zeros::DiskCertificate::Status::certified) any_inconclusive = true;
            else if (o.radius <= 1.0 && c.winding != 0) any_fail = true;
        }
        pending_output = lines;
        if (any_fail) exit_code = kExitContractFailure;
        else if (any_inconclusive) exit_code = kExitInconclusive;
    });

    try {
        std::vector<const char*> argv;
        argv.push_back("theta-scope");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const zeros::NoConvergenceError& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const zeros::DegenerateDerivativeError& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const unity::ContradictionError& e) {
        err << "contract failure: " << e.what() << "\n";
        return kExitContractFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    emit(pending_output, o.out_path, out);
    return exit_code;
}

} // namespace thetascope::cli
