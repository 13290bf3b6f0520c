// Command-line surface: norm queries, semivariation, distribution-function
// export, Luxemburg solves, Calderon/interpolation computations and the
// verification harness. JSON in, JSON out; errors to stderr with nonzero exit.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "orlicz/orlicz.hpp"

namespace {

using orlicz::Json;

constexpr int kExitVerificationFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitDomainError = 3;

// Spec arguments are inline JSON; '@path' reads the document from a file.
Json spec_arg(const std::string& arg) {
    if (!arg.empty() && arg.front() == '@') return orlicz::load_json_file(arg.substr(1));
    try {
        return Json::parse(arg);
    } catch (const std::exception& e) {
        throw orlicz::ParseError(std::string("invalid inline JSON: ") + e.what());
    }
}

void emit(const Json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw orlicz::Error("cannot write '" + out_path + "'");
    out << doc.dump(2) << "\n";
}

Json value_doc(double v) { return Json{{"v", orlicz::kSchemaVersion}, {"value", v}}; }

const std::map<std::string, std::string>& suite_table() {
    static const std::map<std::string, std::string> suites{
        {"all", "*"},
        {"semivar", "semivar-*,scalar-variation-bound,rybakov-equivalence,distfn-*,choquet-*"},
        {"spaces", "qbfs-*"},
        {"lemmas",
         "chi-norm-formula,sup-embedding-bound,modular-battery,bounded-set-transfer,"
         "fatou-transfer,delta2-*,orlicz-*,lux-*,weak-orlicz-identity"},
        {"cp", "cp-*,young-calderon-power"},
        {"lconvex", "lconvexity-*,s-convexity"},
        {"powers", "cp-power-commutation,interp-exponent-identity,lux-pnorm-oracle"},
        {"young", "young-*"},
    };
    return suites;
}

struct VerifyArgs {
    std::string group;
    std::string filter;
    std::string suite;
    std::uint64_t seed = 42;
    int budget = 0;
    int threads = 0;
    std::string out;
};

int run_verify(const VerifyArgs& a) {
    std::string filter = "*";
    if (!a.filter.empty()) {
        filter = a.filter;
    } else if (!a.suite.empty()) {
        auto it = suite_table().find(a.suite);
        if (it == suite_table().end())
            throw orlicz::UnknownFilterError("unknown suite '" + a.suite + "'");
        filter = it->second;
    } else if (!a.group.empty()) {
        auto it = suite_table().find(a.group);
        filter = it != suite_table().end() ? it->second : a.group;
    }
    orlicz::Registry reg = orlicz::default_registry();
    auto t0 = std::chrono::steady_clock::now();
    std::vector<orlicz::Verdict> verdicts =
        orlicz::run_suite(reg, filter, a.seed, a.budget, a.threads);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool all_pass = true;
    for (const auto& v : verdicts) {
        std::cerr << (v.pass() ? "[PASS] " : "[FAIL] ") << v.id << " (" << v.instances
                  << " instances)\n";
        all_pass = all_pass && v.pass();
    }
    std::cerr << verdicts.size() << " checks in " << secs << " s\n";
    emit(orlicz::verdicts_to_json(verdicts, filter, a.seed, a.budget), a.out);
    return all_pass ? 0 : kExitVerificationFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orlicz-space computations over finite atomic measure spaces"};
    app.require_subcommand(1);

    std::string out_path;

    // norm
    auto* norm = app.add_subcommand("norm", "evaluate a quasi-norm");
    std::string norm_space, norm_fn;
    norm->add_option("--space", norm_space, "space spec (inline JSON or @file)")->required();
    norm->add_option("--fn", norm_fn, "function file")->required();

    // semivar
    auto* semivar = app.add_subcommand("semivar", "semivariation of a set");
    std::string sv_measure, sv_set;
    semivar->add_option("--measure", sv_measure, "vector measure file")->required();
    semivar->add_option("--set", sv_set, "atom id list (inline JSON or @file)")->required();

    // distfn
    auto* distfn = app.add_subcommand("distfn", "distribution function of |f|");
    std::string df_measure, df_fn, df_csv, df_svg;
    distfn->add_option("--measure", df_measure, "vector measure file")->required();
    distfn->add_option("--fn", df_fn, "function file")->required();
    distfn->add_option("--csv", df_csv, "write t,value rows to this file");
    distfn->add_option("--svg", df_svg, "write a staircase plot to this file");

    // luxemburg
    auto* lux = app.add_subcommand("luxemburg", "Luxemburg gauge norm");
    std::string lux_base, lux_phi, lux_fn;
    double lux_tol = 1e-10;
    lux->add_option("--base", lux_base, "base space spec")->required();
    lux->add_option("--phi", lux_phi, "gauge spec")->required();
    lux->add_option("--fn", lux_fn, "function file")->required();
    lux->add_option("--tol", lux_tol, "solver tolerance")->capture_default_str();

    // calderon
    auto* cal = app.add_subcommand("calderon", "Calderon product upper bound");
    std::string cal_x0, cal_x1, cal_fn, cal_method = "alternating";
    double cal_theta = 0.5;
    cal->add_option("--x0", cal_x0, "first space spec")->required();
    cal->add_option("--x1", cal_x1, "second space spec")->required();
    cal->add_option("--theta", cal_theta, "interpolation parameter")->required();
    cal->add_option("--fn", cal_fn, "function file")->required();
    cal->add_option("--method", cal_method, "orlicz-constructive | alternating | grid-oracle")
        ->capture_default_str();

    // interpolate
    auto* interp = app.add_subcommand("interpolate", "interpolation space of two gauges");
    std::string in_base, in_phi0, in_phi1;
    double in_theta = 0.5;
    std::uint64_t in_seed = 42;
    int in_trials = 2000;
    interp->add_option("--base", in_base, "base space spec")->required();
    interp->add_option("--phi0", in_phi0, "first gauge spec")->required();
    interp->add_option("--phi1", in_phi1, "second gauge spec")->required();
    interp->add_option("--theta", in_theta, "interpolation parameter")->required();
    interp->add_option("--seed", in_seed, "seed for the convexity certificate");
    interp->add_option("--trials", in_trials, "convexity search budget");

    // verify
    auto* verify = app.add_subcommand("verify", "run the statement registry");
    VerifyArgs va;
    verify->add_option("group", va.group, "suite name or filter glob");
    verify->add_option("--filter", va.filter, "comma-separated id globs");
    verify->add_option("--suite", va.suite, "named suite (all, semivar, lemmas, cp, ...)");
    verify->add_option("--seed", va.seed, "base seed")->capture_default_str();
    verify->add_option("--budget", va.budget, "instances per check (0 = per-check default)");
    verify->add_option("--threads", va.threads, "worker cap (0 = ORLICZ_THREADS or hardware)");

    for (auto* sub : {norm, semivar, distfn, lux, cal, interp, verify})
        sub->add_option("--out", out_path, "write the JSON result to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParseError;
    }

    try {
        if (*norm) {
            Json fn_doc = orlicz::load_json_file(norm_fn);
            std::size_t n = fn_doc.contains("values") ? fn_doc.at("values").size() : 0;
            orlicz::QuasiNormedSpace X =
                orlicz::parse_base_space(spec_arg(norm_space), orlicz::unit_space(std::max<std::size_t>(n, 1)));
            orlicz::Fn f = orlicz::parse_fn(fn_doc, X.carrier());
            emit(value_doc(X(f)), out_path);
        } else if (*semivar) {
            orlicz::VectorMeasure m = orlicz::parse_measure(orlicz::load_json_file(sv_measure));
            orlicz::AtomSet a = orlicz::parse_atom_set(spec_arg(sv_set), m.space());
            emit(value_doc(orlicz::semivariation(m, a)), out_path);
        } else if (*distfn) {
            orlicz::VectorMeasure m = orlicz::parse_measure(orlicz::load_json_file(df_measure));
            orlicz::Fn f = orlicz::parse_fn(orlicz::load_json_file(df_fn), m.space());
            orlicz::StepFunction s = orlicz::distribution_function(m, f);
            if (!df_csv.empty()) {
                std::ofstream csv(df_csv);
                if (!csv) throw orlicz::Error("cannot write '" + df_csv + "'");
                orlicz::write_step_csv(csv, s);
            }
            if (!df_svg.empty()) {
                std::ofstream svg(df_svg);
                if (!svg) throw orlicz::Error("cannot write '" + df_svg + "'");
                orlicz::write_step_svg(svg, s);
            }
            emit(orlicz::step_to_json(s), out_path);
        } else if (*lux) {
            Json fn_doc = orlicz::load_json_file(lux_fn);
            std::size_t n = fn_doc.contains("values") ? fn_doc.at("values").size() : 0;
            orlicz::QuasiNormedSpace base =
                orlicz::parse_base_space(spec_arg(lux_base), orlicz::unit_space(std::max<std::size_t>(n, 1)));
            orlicz::Fn f = orlicz::parse_fn(fn_doc, base.carrier());
            orlicz::OrliczSpace os(base, orlicz::parse_young(spec_arg(lux_phi)), lux_tol);
            emit(value_doc(os.luxemburg(f)), out_path);
        } else if (*cal) {
            Json fn_doc = orlicz::load_json_file(cal_fn);
            std::size_t n = fn_doc.contains("values") ? fn_doc.at("values").size() : 0;
            orlicz::SpacePtr fallback = orlicz::unit_space(std::max<std::size_t>(n, 1));
            Json j0 = spec_arg(cal_x0), j1 = spec_arg(cal_x1);
            orlicz::CalderonMethod method = orlicz::parse_calderon_method(cal_method);
            bool orlicz_pair = j0.value("kind", "") == "orlicz" && j1.value("kind", "") == "orlicz";
            if (method == orlicz::CalderonMethod::OrliczConstructive &&
                (!orlicz_pair || j0.at("base") != j1.at("base")))
                throw orlicz::MethodInapplicableError(
                    "orlicz-constructive needs two orlicz specs over the same base");
            orlicz::CalderonInstance inst =
                (method == orlicz::CalderonMethod::OrliczConstructive)
                    ? orlicz::make_calderon_orlicz(
                          orlicz::parse_base_space(j0.at("base"), fallback),
                          orlicz::parse_young(j0.at("phi")), orlicz::parse_young(j1.at("phi")),
                          cal_theta)
                    : orlicz::make_calderon(orlicz::parse_base_space(j0, fallback),
                                            orlicz::parse_base_space(j1, fallback), cal_theta);
            orlicz::Fn f = orlicz::parse_fn(fn_doc, inst.x0.carrier());
            orlicz::CalderonUpper u = orlicz::calderon_norm_upper(inst, f, method);
            Json doc{{"v", orlicz::kSchemaVersion},
                     {"lambda", u.value},
                     {"converged", u.converged},
                     {"iterations", u.iterations},
                     {"f0", u.factorization().f0.values()},
                     {"f1", u.factorization().f1.values()}};
            emit(doc, out_path);
        } else if (*interp) {
            // carrier comes from the base spec itself here
            orlicz::QuasiNormedSpace base = orlicz::parse_base_space(spec_arg(in_base));
            orlicz::InterpolationOptions opts;
            opts.seed = in_seed;
            opts.trials = in_trials;
            orlicz::InterpolationResult res = orlicz::complex_interpolation(
                base, orlicz::parse_young(spec_arg(in_phi0)), orlicz::parse_young(spec_arg(in_phi1)),
                in_theta, opts);
            Json doc{{"v", orlicz::kSchemaVersion},
                     {"space",
                      Json{{"kind", "orlicz"},
                           {"base", spec_arg(in_base)},
                           {"phi", orlicz::young_to_json(res.space.phi())}}},
                     {"delta2",
                      Json{{"phi0", Json{{"constant", res.delta2_0.constant},
                                         {"doubling", res.delta2_0.is_delta2()}}},
                           {"phi1", Json{{"constant", res.delta2_1.constant},
                                         {"doubling", res.delta2_1.is_delta2()}}}}},
                     {"lconvexity",
                      Json{{"eps", res.base_certificate.eps},
                           {"trials", res.base_certificate.trials},
                           {"passed", res.base_certificate.passed}}}};
            emit(doc, out_path);
        } else if (*verify) {
            va.out = out_path;
            return run_verify(va);
        }
    } catch (const orlicz::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed document: " << e.what() << "\n";
        return kExitParseError;
    } catch (const orlicz::UnknownFilterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const orlicz::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
    return 0;
}
