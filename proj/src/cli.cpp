#include "famedkit/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "famedkit/acceptance.hpp"
#include "famedkit/partition.hpp"
#include "famedkit/report.hpp"

namespace famedkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct MathFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

cplx parse_complex(const std::string& s) {
    auto comma = s.find(',');
    try {
        size_t used = 0;
        if (comma == std::string::npos) {
            double re = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return {re, 0};
        }
        std::string a = s.substr(0, comma), b = s.substr(comma + 1);
        double re = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(s);
        double im = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(s);
        return {re, im};
    } catch (const std::logic_error&) {
        throw InputError("expected RE,IM but got '" + s + "'");
    }
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.pop_back();
        size_t start = tok.find_first_not_of(" \t\n");
        if (start == std::string::npos) continue;
        tok = tok.substr(start);
        try {
            size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            throw InputError("bad number '" + tok + "'");
        }
    }
    return out;
}

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array() && !j.empty() && (j.front().is_structured())) {
        for (size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << " = ";
        if (j.is_number_float()) out << num(j.get<double>());
        else if (j.is_string()) out << j.get<std::string>();
        else if (j.is_array()) {
            out << "[";
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out << ", ";
                if (j[i].is_number_float()) out << num(j[i].get<double>());
                else if (j[i].is_string()) out << j[i].get<std::string>();
                else out << j[i].dump();
            }
            out << "]";
        } else out << j.dump();
        out << "\n";
    }
}

AngleStructure resolve_alpha(const OrderedTriangulation& tri, const std::string& spec) {
    if (spec == "max") {
        auto vr = maximize_volume(tri);
        if (!vr.converged) throw MathFailure("volume maximization did not converge: " + vr.message);
        return vr.maximizer;
    }
    if (spec == "witness") {
        auto w = feasibility(tri);
        if (!w) throw MathFailure("angle structure space is empty");
        return *w;
    }
    std::string text = spec;
    std::ifstream f(spec);
    if (f) {
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
        for (auto& ch : text)
            if (ch == '\n' || ch == ' ' || ch == '\t') ch = ',';
    }
    AngleStructure a{parse_doubles(text)};
    if (a.angles.size() != 3 * static_cast<size_t>(tri.size()))
        throw InputError("--alpha needs " + std::to_string(3 * tri.size()) + " angles");
    if (max_constraint_violation(tri, a) > 1e-9) throw InputError("--alpha is not an angle structure");
    for (double x : a.angles)
        if (!(x > 0 && x < kPi)) throw InputError("--alpha is not an angle structure");
    return a;
}

json contour_json(const ContourSpec& c) {
    return {{"shift", c.shift}, {"half_length", c.half_length}, {"tilt", c.tilt}, {"nodes", c.nodes}};
}

json prediction_json(const Prediction& p) {
    return {{"modulus", p.modulus}, {"volume", p.volume},   {"tau", complex_json(p.tau)},
            {"hm", complex_json(p.hm)}, {"hl", complex_json(p.hl)}, {"prefactor", p.prefactor}};
}

struct Common {
    std::string file;
    bool json_out = false;
    int threads = 1;
};

void add_common(CLI::App* sub, Common& c, bool file = true) {
    if (file) sub->add_option("file", c.file, "triangulation file or preset name")->required();
    sub->add_flag("--json", c.json_out, "emit a JSON report");
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"famedkit: ordered ideal triangulations, FAMED certification and state-integral numerics", "famedkit"};
    app.set_version_flag("--version", artifact_version());
    app.require_subcommand(1);
    Common c;

    auto* parse = app.add_subcommand("parse", "summarize a triangulation");
    add_common(parse, c);

    auto* matrices = app.add_subcommand("matrices", "kinematical matrices R, A, B, Q, scriptG");
    add_common(matrices, c);

    int drop_edge = -1;
    std::string convention = "gpp-gp";
    auto* famed = app.add_subcommand("famed", "FAMED certificate");
    add_common(famed, c);
    famed->add_option("--drop-edge", drop_edge, "index of the edge equation to drop");
    famed->add_option("--convention", convention, "gpp-gp or gpp-g")->check(CLI::IsMember({"gpp-gp", "gpp-g"}));

    std::string slices, curve = "l";
    bool csv = false;
    auto* volume = app.add_subcommand("volume", "maximize the volume functional");
    add_common(volume, c);
    volume->add_option("--slice", slices, "comma separated holonomy values theta");
    volume->add_option("--curve", curve, "curve fixing the slice");
    volume->add_flag("--csv", csv, "CSV output");

    std::string u = "0,0";
    auto* solve = app.add_subcommand("solve", "solve the gluing equations");
    add_common(solve, c);
    solve->add_option("--u", u, "holonomy target RE,IM");

    std::string from, to;
    int steps = 10;
    auto* sweep = app.add_subcommand("sweep-u", "follow the geometric branch");
    add_common(sweep, c);
    sweep->add_option("--from", from, "start RE,IM")->required();
    sweep->add_option("--to", to, "end RE,IM")->required();
    sweep->add_option("--steps", steps, "number of intervals")->check(CLI::PositiveNumber);
    sweep->add_flag("--csv", csv, "CSV output");

    auto* oneloop = app.add_subcommand("one-loop", "flattening and 1-loop invariant");
    add_common(oneloop, c);
    oneloop->add_option("--u", u, "holonomy target RE,IM");

    double b = 1.0;
    std::string z = "0,0";
    auto* qdilog = app.add_subcommand("qdilog", "Faddeev quantum dilogarithm");
    add_common(qdilog, c, false);
    qdilog->add_option("--b", b, "b")->required()->check(CLI::PositiveNumber);
    qdilog->add_option("--z", z, "argument RE,IM")->required();

    std::string alpha = "max", contour = "scaled";
    int nodes = 192;
    double shift = 0;
    auto* partition = app.add_subcommand("partition", "state integral modulus");
    add_common(partition, c);
    partition->add_option("--alpha", alpha, "csv angles, a file, 'max' or 'witness'");
    partition->add_option("--b", b, "b")->required()->check(CLI::PositiveNumber);
    partition->add_option("--nodes", nodes, "quadrature nodes per axis")->check(CLI::Range(20, 4000));
    partition->add_option("--contour", contour, "unscaled or scaled")->check(CLI::IsMember({"unscaled", "scaled"}));
    partition->add_option("--shift", shift, "extra contour shift");

    std::string sweep_b = "1.0,0.8,0.6,0.5,0.45,0.4", target = "partition";
    auto* asympt = app.add_subcommand("asympt", "fit the b -> 0 asymptotics");
    add_common(asympt, c);
    asympt->add_option("--sweep", sweep_b, "comma separated b values");
    asympt->add_option("--alpha", alpha, "csv angles, a file, 'max' or 'witness'");
    auto* asympt_nodes = asympt->add_option("--nodes", nodes, "quadrature nodes per axis (default 192, 320 for jones)")->check(CLI::Range(20, 4000));
    asympt->add_option("--target", target, "partition or jones")->check(CLI::IsMember({"partition", "jones"}));
    asympt->add_flag("--csv", csv, "CSV output");

    std::string x = "0,0";
    auto* jones = app.add_subcommand("jones", "Jones function");
    add_common(jones, c);
    jones->add_option("--x", x, "argument RE,IM");
    jones->add_option("--b", b, "b")->required()->check(CLI::PositiveNumber);
    jones->add_option("--alpha", alpha, "csv angles, a file, 'max' or 'witness'");
    int jnodes = 640;
    jones->add_option("--nodes", jnodes, "quadrature nodes per free axis")->check(CLI::Range(20, 4000));

    std::string poly;
    int samples = 20;
    auto* aj = app.add_subcommand("aj", "evaluate an operator polynomial on the geometric branch");
    add_common(aj, c);
    aj->add_option("--poly", poly, "polynomial file")->required();
    aj->add_option("--samples", samples, "branch samples")->check(CLI::PositiveNumber);

    std::string suite = "desk", only;
    auto* accept = app.add_subcommand("accept", "run the acceptance suite");
    add_common(accept, c, false);
    accept->add_option("--suite", suite, "suite name")->check(CLI::IsMember({"desk"}));
    accept->add_option("--only", only, "comma separated criterion ids");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kExitInput;
    }

    RunReport rep;
    rep.command = app.get_subcommands().front()->get_name();
    int code = kExitOk;
    std::string csv_text;
    try {
        OrderedTriangulation tri;
        if (!c.file.empty()) {
            StageTimer t(rep, "parse");
            rep.inputs["file"] = resolve_triangulation_path(c.file);
            tri = load_triangulation(rep.inputs["file"].get<std::string>());
        }
        rep.inputs["threads"] = c.threads;
        auto& o = rep.outputs;
        if (parse->parsed()) {
            o = triangulation_json(tri);
        } else if (matrices->parsed()) {
            StageTimer t(rep, "matrices");
            auto km = kinematical(tri);
            o = kinematical_json(km);
            if (km.detA == 0) code = kExitMath;
        } else if (famed->parsed()) {
            NZOptions opt;
            opt.drop_edge = drop_edge;
            opt.convention = parse_convention(convention);
            rep.inputs["drop_edge"] = drop_edge;
            rep.inputs["convention"] = convention;
            StageTimer t(rep, "famed");
            auto cert = famed_check(tri, opt);
            o = famed_json(cert);
            if (!cert.famed) code = kExitMath;
        } else if (volume->parsed()) {
            rep.inputs["curve"] = curve;
            std::vector<std::optional<double>> thetas;
            if (slices.empty()) thetas.push_back(std::nullopt);
            for (double th : parse_doubles(slices)) thetas.push_back(th);
            rep.inputs["slice"] = slices;
            json list = json::array();
            std::ostringstream cs;
            cs << "theta,volume,converged\n";
            StageTimer t(rep, "volume");
            for (auto th : thetas) {
                VolumeOptions vo;
                vo.slice_theta = th;
                vo.slice_curve = curve;
                auto vr = maximize_volume(tri, vo);
                list.push_back(volume_json(vr));
                cs << (th ? num(*th) : "") << "," << num(vr.value) << "," << (vr.converged ? "true" : "false") << "\n";
                if (!vr.converged) code = kExitMath;
            }
            csv_text = cs.str();
            if (list.size() == 1) o = list[0];
            else o["slices"] = list;
        } else if (solve->parsed()) {
            cplx hl = parse_complex(u);
            rep.inputs["u"] = complex_json(hl);
            StageTimer t(rep, "solve");
            auto sol = solve_gluing(tri, hl);
            o = shape_json(sol);
            o["volume"] = hyperbolic_volume(sol);
            for (const auto& pc : tri.curves) o["holonomy"][pc.name] = complex_json(complex_holonomy(pc, sol));
            if (!sol.converged) code = kExitMath;
        } else if (sweep->parsed()) {
            cplx a = parse_complex(from), e = parse_complex(to);
            rep.inputs["from"] = complex_json(a);
            rep.inputs["to"] = complex_json(e);
            rep.inputs["steps"] = steps;
            auto nz = nz_system(tri);
            std::vector<cplx> start;
            json pts = json::array();
            std::ostringstream cs;
            cs << "u_re,u_im,volume,residual,converged\n";
            StageTimer t(rep, "sweep");
            for (int i = 0; i <= steps; ++i) {
                cplx hl = a + (e - a) * (double(i) / steps);
                auto sol = start.empty() ? solve_gluing(tri, hl) : solve_gluing(nz, tri.signs(), hl, start);
                if (sol.converged) start = sol.z;
                else code = kExitMath;
                double v = hyperbolic_volume(sol);
                pts.push_back({{"u", complex_json(hl)}, {"volume", v}, {"residual", sol.residual},
                               {"converged", sol.converged}, {"z", complex_vector_json(sol.z)}});
                cs << num(hl.real()) << "," << num(hl.imag()) << "," << num(v) << "," << num(sol.residual) << ","
                   << (sol.converged ? "true" : "false") << "\n";
            }
            o["points"] = pts;
            csv_text = cs.str();
        } else if (oneloop->parsed()) {
            cplx hl = parse_complex(u);
            rep.inputs["u"] = complex_json(hl);
            Flattening fl;
            {
                StageTimer t(rep, "flattening");
                fl = strong_flattening(tri);
            }
            StageTimer t(rep, "one_loop");
            auto nz = nz_system(tri);
            auto sol = solve_gluing(tri, hl);
            if (!sol.converged) throw MathFailure("gluing equations did not converge: " + sol.message);
            auto val = one_loop_tau(tri, nz, sol, fl);
            o["flattening"] = flattening_json(fl);
            o["valid_flattening"] = is_valid_flattening(tri, fl);
            o["tau"] = complex_json(val.tau);
            o["convention"] = to_string(val.convention);
            o["alt_tau"] = complex_json(val.alt_tau);
            o["conventions_agree"] = val.conventions_agree;
            o["shapes"] = complex_vector_json(sol.z);
            auto km = kinematical(tri);
            if (hl.real() == 0 && km.detA != 0 && !nz.Binv.empty() && sol.geometric) {
                auto cp = find_critical_point(nz, km, hl.imag(), sol.z);
                auto hb = hessian_torsion_bridge(nz, km, cp, fl);
                o["hessian_bridge"] = {{"det_hessian", complex_json(hb.det_hessian)}, {"rhs", complex_json(hb.rhs)},
                                       {"modulus_rel_error", hb.modulus_rel_error},
                                       {"phase_mod_pi_error", hb.phase_mod_pi_error}};
            }
        } else if (qdilog->parsed()) {
            cplx zz = parse_complex(z);
            rep.inputs["b"] = b;
            rep.inputs["z"] = complex_json(zz);
            StageTimer t(rep, "qdilog");
            QDilogParams qp(b);
            if (!(std::abs(zz.imag()) < qp.strip_halfwidth())) throw InputError("z outside the strip |Im z| < c_b");
            cplx v = phi_b(zz, b);
            cplx inv = phi_b(zz, b) * phi_b(-zz, b) * std::exp(-cplx(0, kPi) * (b * b + 1 / (b * b)) / 12.0) *
                       std::exp(-cplx(0, kPi) * zz * zz);
            o["value"] = complex_json(v);
            o["log_value"] = complex_json(log_phi_b(zz, b));
            o["unitarity_residual"] = std::abs(std::abs(phi_b(zz.real(), b)) - 1);
            o["inversion_residual"] = std::abs(inv - 1.0);
            o["semiclassical_residual"] = phi_b_semiclassical_residual(zz, b);
        } else if (partition->parsed()) {
            ContourOptions co;
            co.nodes = nodes;
            co.scaling = contour == "unscaled" ? ContourScaling::Unscaled : ContourScaling::Scaled;
            co.extra_shift = shift;
            rep.inputs["b"] = b;
            rep.inputs["nodes"] = nodes;
            rep.inputs["contour"] = contour;
            rep.inputs["shift"] = shift;
            AngleStructure al;
            {
                StageTimer t(rep, "angles");
                al = resolve_alpha(tri, alpha);
            }
            rep.inputs["alpha"] = al.angles;
            StageTimer t(rep, "partition");
            auto ps = partition_setup(tri, al, b);
            auto spec = make_contour(ps, b, co);
            cplx integral = partition_integral(ps, b, spec);
            double mod = partition_modulus(tri, al, b, co);
            o["modulus"] = mod;
            o["integral"] = complex_json(integral);
            o["lambda"] = ps.lambda;
            o["contour"] = contour_json(spec);
            try {
                auto pred = predicted_modulus(tri, al, b);
                o["prediction"] = prediction_json(pred);
                o["ratio"] = pred.modulus / mod;
            } catch (const InputError&) {
            }
        } else if (asympt->parsed()) {
            if (target == "jones" && asympt_nodes->count() == 0) nodes = 320;
            auto bs = parse_doubles(sweep_b);
            rep.inputs["sweep"] = bs;
            rep.inputs["nodes"] = nodes;
            rep.inputs["target"] = target;
            AngleStructure al = resolve_alpha(tri, alpha);
            rep.inputs["alpha"] = al.angles;
            ContourOptions co;
            co.nodes = nodes;
            std::vector<AsymptoticSample> s;
            StageTimer t(rep, "asympt");
            for (double bb : bs) {
                if (target == "partition") s.push_back({bb, partition_modulus(tri, al, bb, co)});
                else {
                    auto js = jones_setup(tri, al, bb);
                    s.push_back({bb, std::abs(jones_function(js, 0.0, bb, jones_contour(js, bb, co)))});
                }
            }
            double vol = volume_functional(al);
            double pre = 0;
            try {
                if (target == "partition") pre = predicted_modulus(tri, al, bs.back()).prefactor;
            } catch (const InputError&) {
            }
            auto rr = fit_asymptotics(s, vol, pre, target == "partition" ? 0 : tri.size() - 1);
            o = asymptotic_json(rr);
            o["volume"] = vol;
            std::ostringstream cs;
            cs << "b,modulus,rate_partial,prefactor_partial\n";
            for (size_t i = 0; i < rr.samples.size(); ++i) {
                double bb = rr.samples[i].b, m = rr.samples[i].value;
                double pf = m * std::exp(vol / (2 * kPi * bb * bb));
                cs << num(bb) << "," << num(m) << "," << num(i < rr.partial_rates.size() ? rr.partial_rates[i] : NAN) << ","
                   << num(pf) << "\n";
            }
            csv_text = cs.str();
        } else if (jones->parsed()) {
            cplx xx = parse_complex(x);
            rep.inputs["x"] = complex_json(xx);
            rep.inputs["b"] = b;
            rep.inputs["nodes"] = jnodes;
            AngleStructure al = resolve_alpha(tri, alpha);
            rep.inputs["alpha"] = al.angles;
            ContourOptions co;
            co.nodes = jnodes;
            StageTimer t(rep, "jones");
            auto js = jones_setup(tri, al, b);
            auto spec = jones_contour(js, b, co);
            cplx v = jones_function(js, xx, b, spec);
            o["value"] = complex_json(v);
            o["modulus"] = std::abs(v);
            o["pivot"] = js.pivot;
            o["coefficients"] = js.a;
            o["contour"] = contour_json(spec);
        } else if (aj->parsed()) {
            rep.inputs["poly"] = poly;
            rep.inputs["samples"] = samples;
            auto p = load_polynomial(poly);
            StageTimer t(rep, "aj");
            auto r = aj_evaluate(p, tri, default_branch_samples(samples));
            json pts = json::array();
            for (size_t i = 0; i < r.values.size(); ++i)
                pts.push_back({{"hl", complex_json(r.hl[i])}, {"value", complex_json(r.values[i])}});
            o["points"] = pts;
            o["max_abs"] = r.max_abs;
            o["vanishes"] = r.max_abs < 1e-8;
            if (!(r.max_abs < 1e-8)) code = kExitMath;
        } else if (accept->parsed()) {
            std::vector<std::string> ids;
            std::stringstream ss(only);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) ids.push_back(tok);
            auto known = acceptance_ids();
            for (const auto& id : ids)
                if (std::find(known.begin(), known.end(), id) == known.end()) throw InputError("unknown criterion '" + id + "'");
            rep.inputs["suite"] = suite;
            rep.inputs["only"] = ids;
            json list = json::array();
            bool all = true;
            for (const auto& id : ids.empty() ? known : ids) {
                auto r = run_criterion(id);
                if (!c.json_out) out << format_line(r) << std::endl;
                rep.timings[id] = r.seconds * 1000;
                list.push_back({{"id", r.id}, {"passed", r.passed}, {"summary", r.summary}, {"details", r.details}});
                all = all && r.passed;
            }
            o["criteria"] = list;
            o["all_passed"] = all;
            if (!all) code = kExitMath;
            if (!c.json_out) return code;
        }
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        rep.outputs["error"] = e.what();
        code = kExitMath;
    }
    if (c.json_out) out << render(rep.to_json());
    else if (csv && !csv_text.empty()) out << csv_text;
    else {
        json j = rep.to_json();
        j.erase("versions");
        flatten(j, "", out);
    }
    return code;
}

}
