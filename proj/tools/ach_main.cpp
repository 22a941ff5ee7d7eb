#include "ach/json_io.hpp"
#include "ach/latex.hpp"
#include "ach/lichnerowicz.hpp"
#include "ach/scalar_laplacian.hpp"
#include "ach/verify.hpp"
#include "ach/volume.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace ach;

struct CliError {
    int code;
    std::string message;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw CliError{2, "cannot open output file: " + out_path};
    f << text << "\n";
}

std::string render_op(const OpPoly& p, int n, const std::string& format) {
    if (format == "json") return to_json(p, n).dump(2);
    if (format == "latex") return latex(p);
    return pretty_text(p);
}

std::string render_nc(const NcNormal& op, const std::string& format) {
    if (format == "json") return to_json(op).dump(2);
    if (format == "latex") return latex(op);
    return pretty_text(op);
}

std::vector<int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) return {std::stoi(text)};
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        if (lo > hi) throw CliError{2, "empty dimension range: " + text};
        std::vector<int> out;
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    } catch (const std::invalid_argument&) {
        throw CliError{2, "bad dimension range: " + text};
    }
}

Json profile_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CliError{2, "cannot open profile file: " + path};
    Json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw CliError{2, std::string("profile JSON parse error: ") + e.what()};
    }
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"Exact operator calculus on the complex hyperbolic model over the Heisenberg group"};
    app.require_subcommand(1);

    std::string format = "text", out_path, boundary, upsilon, profile_path;
    std::string suite = "all", nrange = "2";
    int n = 2, k = 1, max_order = -1, jobs = 1;
    std::uint64_t seed = 0;
    bool timings = false;

    auto add_common = [&](CLI::App* cmd, bool with_format = true) {
        if (with_format)
            cmd->add_option("--format", format, "output format")
                ->check(CLI::IsMember({"json", "latex", "text"}));
        cmd->add_option("--out", out_path, "write the result to a file instead of stdout");
    };

    auto* cmd_gjms = app.add_subcommand("gjms", "emit the flat-model GJMS operator P_{2k}");
    cmd_gjms->add_option("--n", n, "CR dimension")->required();
    cmd_gjms->add_option("--k", k, "operator half-order")->required();
    add_common(cmd_gjms);

    bool obs_report = false;
    auto* cmd_obs = app.add_subcommand("obstruction",
                                       "emit the linearized obstruction operator");
    cmd_obs->add_option("--n", n, "CR dimension")->required();
    cmd_obs->add_flag("--report", obs_report,
                      "emit the full solver report (per-order residual status) instead of "
                      "the bare operator");
    add_common(cmd_obs);

    auto* cmd_dir = app.add_subcommand("dirichlet", "solve the generalized eigenfunction problem");
    cmd_dir->add_option("--n", n, "CR dimension")->required();
    cmd_dir->add_option("--k", k, "indicial separation")->required();
    cmd_dir->add_option("--boundary", boundary, "boundary datum f (expression)")->required();
    cmd_dir->add_option("--max-order", max_order, "truncation order");
    add_common(cmd_dir);

    auto* cmd_logq = app.add_subcommand("logq", "solve the log expansion and report Q");
    cmd_logq->add_option("--profile", profile_path, "profile JSON file")->required();
    cmd_logq->add_option("--max-order", max_order, "truncation order");
    add_common(cmd_logq);

    auto* cmd_vol = app.add_subcommand("volume", "volume expansion coefficients and the log-term identity");
    cmd_vol->add_option("--profile", profile_path, "profile JSON file")->required();
    add_common(cmd_vol);

    auto* cmd_qt = app.add_subcommand("qtransform", "apply the critical operator to a rescaling");
    cmd_qt->add_option("--n", n, "CR dimension")->required();
    cmd_qt->add_option("--upsilon", upsilon, "rescaling generator (expression)")->required();
    add_common(cmd_qt);

    auto* cmd_dump = app.add_subcommand("dump-curvature", "dump the model curvature tensor");
    cmd_dump->add_option("--n", n, "CR dimension")->required();
    cmd_dump->add_option("--max-order", max_order, "series truncation order");
    add_common(cmd_dump, false);

    auto* cmd_verify = app.add_subcommand("verify", "run the identity suites");
    cmd_verify->add_option("--suite", suite, "suite name")
        ->check(CLI::IsMember(verify_suites()));
    cmd_verify->add_option("--n", nrange, "dimension or range, e.g. 2 or 1..3");
    cmd_verify->add_option("--seed", seed, "seed for the randomized property checks");
    cmd_verify->add_option("--jobs", jobs, "concurrent checks");
    cmd_verify->add_flag("--timings", timings, "include wall-clock timing (non-canonical)");
    cmd_verify->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd_verify->add_option("--out", out_path, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(cmd_gjms)) {
            if (n < 1 || k < 1 || k > n + 1)
                throw CliError{2, "gjms requires n >= 1 and 1 <= k <= n+1"};
            OpPoly rec = extract_gjms(n, k);
            OpPoly prod = gjms_product(n, k);
            if (!(rec == prod)) {
                std::cerr << "equality check failed: recursion differs from the product formula\n"
                          << "difference: " << (rec - prod).str() << "\n";
                return 1;
            }
            emit(render_op(rec, n, format), out_path);
            return 0;
        }

        if (app.got_subcommand(cmd_obs)) {
            if (n < 2) throw CliError{2, "obstruction requires dimension 2n+1 >= 5 (n >= 2)"};
            LichState st = solve_lichnerowicz(n);
            ObstructionResult r = extract_obstruction(st);
            NcNormal closed = obstruction_closed_form(n);
            if (!(r.op == closed) || !r.checks.all_passed()) {
                std::cerr << "verification failed: solver output differs from the closed form\n";
                NcNormal diff = r.op - closed;
                std::cerr << "per-term difference: " << diff.str() << "\n";
                for (const auto& c : r.checks.checks)
                    if (!c.passed) std::cerr << "failed: " << c.id << " (" << c.identity << ")\n";
                return 1;
            }
            if (obs_report) {
                Json orders = Json::array();
                for (int j = 0; j <= st.max_order; ++j) {
                    orders.push_back(Json{
                        {"j", j},
                        {"res_tautau", st.res_tt.a(j).is_zero() ? "zero" : "nonzero"},
                        {"res_taua", st.res_ta.a(j).is_zero() ? "zero" : "nonzero"},
                        {"res_ab", st.res_ab.a(j).is_zero() ? "zero" : "nonzero"},
                        {"div_tau", st.div_t.a(j).is_zero() ? "zero" : "nonzero"},
                        {"div_a", st.div_a.a(j).is_zero() ? "zero" : "nonzero"}});
                }
                Json out{{"n", n},
                         {"orders", orders},
                         {"operator", to_json(r.op)},
                         {"k_ta", to_json(r.k_ta)},
                         {"checks", to_json(r.checks)["checks"]}};
                emit(out.dump(2), out_path);
            } else {
                emit(render_nc(r.op, format), out_path);
            }
            return 0;
        }

        if (app.got_subcommand(cmd_dir)) {
            if (n < 1 || k < 1 || k > n + 1)
                throw CliError{2, "dirichlet requires n >= 1 and 1 <= k <= n+1"};
            if (max_order < 0) max_order = 2 * n + 6;
            if (max_order < 2 * k)
                throw CliError{2, "dirichlet requires --max-order >= 2k"};
            HeisPoly f = parse_expression(boundary, n);
            auto r = solve_eigen(n, k, f, max_order);
            HeisFrame frame(n);
            HeisPoly expect = gjms_product(n, k).apply(frame, f).scaled(gjms_ck(k));
            bool cross = (r.g0 == expect);
            // substitute the solved series back into the defining equation
            ScalarLaplacian flat = ScalarLaplacian::flat(n, max_order);
            ShiftedLaplacian<HeisPoly, HeisCoeffOps> op{
                flat, HeisCoeffOps(n), n + 1 - k,
                BigRational((n + 1) * (n + 1) - k * k, 4)};
            bool residual_zero = op.apply(r.full).is_zero();
            cross = cross && residual_zero;
            if (format == "text") {
                std::string msg = "G|_M = " + r.g0.str() +
                                  (cross ? "  (cross-check passed)" : "  (CROSS-CHECK FAILED)");
                emit(msg, out_path);
            } else {
                // u = rho^{n+1-k} F + rho^{n+1+k} log(rho) G
                RhoSeries<HeisPoly> F(max_order, HeisPoly(n));
                RhoSeries<HeisPoly> G(max_order, HeisPoly(n));
                for (int j = 0; j <= max_order; ++j) {
                    F.set_a(j, r.full.a(j));
                    if (2 * k + j <= max_order) G.set_a(j, r.full.b(2 * k + j));
                }
                Json out{{"n", n},
                         {"k", k},
                         {"base_exponent", n + 1 - k},
                         {"F", to_json(F)},
                         {"G", to_json(G)},
                         {"g0", to_json(r.g0)},
                         {"residual", residual_zero ? "zero through max order" : "NONZERO"},
                         {"cross_check", cross ? "pass" : "fail"}};
                emit(out.dump(2), out_path);
            }
            return cross ? 0 : 1;
        }

        if (app.got_subcommand(cmd_logq)) {
            Json pj = profile_from_file(profile_path);
            VolumeProfile prof = profile_from_json(pj, max_order < 0 ? 0 : max_order);
            if (max_order >= 0 && max_order < 2 * prof.n + 2)
                throw CliError{2, "logq requires --max-order >= 2n+2"};
            ScalarLaplacian lap = prof.laplacian();
            int order = max_order < 0 ? std::max(2 * prof.n + 6, prof.b.max_order()) : max_order;
            LogResult lr = solve_log(lap, order);
            BigRational q = q_curvature(lap);
            ShiftedLaplacian<GaussianRational, ConstCoeffOps> op{lap, ConstCoeffOps{}, 0,
                                                                 BigRational(0)};
            RhoSeries<GaussianRational> resid = op.apply(lr.full);
            RhoSeries<GaussianRational> rhs(order, GaussianRational(0));
            rhs.set_a(0, GaussianRational(BigRational(prof.n + 1, 2)));
            resid -= rhs;
            Json out{{"n", prof.n},
                     {"series", to_json(lr.full)},
                     {"B0", to_json(lr.b0)},
                     {"Q", q.str()},
                     {"residual", resid.is_zero() ? "zero through max order" : "NONZERO"}};
            emit(format == "text" ? ("Q = " + q.str()) : out.dump(2), out_path);
            return resid.is_zero() ? 0 : 1;
        }

        if (app.got_subcommand(cmd_vol)) {
            Json pj = profile_from_file(profile_path);
            VolumeProfile prof = profile_from_json(pj, 0);
            VolumeExpansion v = volume_coeffs(prof);
            Report check = total_q_check(prof);
            Json coeffs = Json::object();
            for (const auto& [j, c] : v.c) coeffs[std::to_string(j)] = c.str();
            Json out{{"n", prof.n},
                     {"coefficients", coeffs},
                     {"L", v.log_coeff.str()},
                     {"total_q_identity", check.all_passed() ? "pass" : "fail"}};
            emit(format == "text"
                     ? ("L = " + v.log_coeff.str() +
                        (check.all_passed() ? "  (identity holds)" : "  (IDENTITY FAILED)"))
                     : out.dump(2),
                 out_path);
            return check.all_passed() ? 0 : 1;
        }

        if (app.got_subcommand(cmd_qt)) {
            if (n < 1) throw CliError{2, "qtransform requires n >= 1"};
            HeisPoly u = parse_expression(upsilon, n);
            HeisPoly r = q_transform(n, u);
            emit(format == "json" ? to_json(r).dump(2) : r.str(), out_path);
            return 0;
        }

        if (app.got_subcommand(cmd_dump)) {
            if (n < 1) throw CliError{2, "dump-curvature requires n >= 1"};
            FrameGeometry geo(n);
            FrameTensor r = geo.curvature_tensor(max_order < 0 ? 0 : max_order);
            emit(to_json(r).dump(2), out_path);
            return 0;
        }

        if (app.got_subcommand(cmd_verify)) {
            VerifyOptions opt;
            opt.ns = parse_range(nrange);
            for (int nv : opt.ns)
                if (nv < 1) throw CliError{2, "dimensions must be >= 1"};
            opt.seed = seed;
            opt.jobs = jobs;
            auto start = std::chrono::steady_clock::now();
            Report rep = run_suite(suite, opt);
            auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
            if (format == "text") {
                std::string txt;
                for (const auto& c : rep.checks)
                    txt += std::string(c.passed ? "PASS " : "FAIL ") + c.id + "  " + c.identity +
                           (c.detail.empty() ? "" : "  [" + c.detail + "]") + "\n";
                txt += rep.all_passed() ? "all checks passed" : "FAILURES PRESENT";
                if (timings) txt += "\ntotal_ms " + std::to_string(elapsed);
                emit(txt, out_path);
            } else {
                Json out{{"suite", suite}, {"seed", seed}};
                Json ns = Json::array();
                for (int nv : opt.ns) ns.push_back(nv);
                out["ns"] = ns;
                Json body = to_json(rep);
                out["passed"] = body["passed"];
                out["checks"] = body["checks"];
                if (timings) out["timings"] = Json{{"total_ms", elapsed}};
                emit(out.dump(2), out_path);
            }
            return rep.all_passed() ? 0 : 1;
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
