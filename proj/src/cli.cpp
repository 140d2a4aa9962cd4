#include "schurlab/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "schurlab/error.hpp"
#include "schurlab/extremality.hpp"
#include "schurlab/fullness.hpp"
#include "schurlab/io.hpp"
#include "schurlab/multiplier_norm.hpp"
#include "schurlab/random.hpp"
#include "schurlab/schur_ops.hpp"

namespace schurlab {

using nlohmann::json;

namespace {

struct Settings {
    double tol = kDefaultTol;
    double eps = 1e-6;
    std::uint64_t seed = 0;
    std::size_t trials = 100;
    std::string format = "auto";
    std::string output;
    std::string input;
    int starts = 50;
};

struct Outcome {
    json result = json::object();
    int exit_code = 0;
    std::string summary;
};

class Context {
public:
    explicit Context(const Settings& s) : s_(s) {}

    Mat load(const std::string& path) {
        if (path.empty()) throw Error(ErrorKind::InvalidArgument, "an input file is required (--input)");
        const MatrixFormat fmt = parse_format(s_.format);
        Mat m = path == "-" ? parse_matrix_stream(std::cin, fmt) : parse_matrix_file(path, fmt);
        if (!m.all_finite()) throw Error(ErrorKind::ParseError, "non-finite entry in '" + path + "'");
        if (!digest_.empty()) digest_ += "+";
        digest_ += matrix_digest(m);
        return m;
    }

    Mat input() { return load(s_.input); }

    ExtremalityOptions opts() const {
        ExtremalityOptions o;
        o.tol = s_.tol;
        o.rel_tol = s_.tol;
        o.eps = s_.eps;
        o.norm = norm_opts();
        return o;
    }

    NormOptions norm_opts() const {
        NormOptions n;
        n.seed = s_.seed;
        n.starts = s_.starts;
        n.tol = s_.tol;
        n.rel_tol = s_.tol;
        return n;
    }

    const Settings& settings() const { return s_; }
    const std::string& digest() const { return digest_; }

private:
    const Settings& s_;
    std::string digest_;
};

std::string fmt_double(double v) {
    std::ostringstream ss;
    ss.precision(10);
    ss << v;
    return ss.str();
}

int verdict_exit(Verdict v) {
    return v == Verdict::Extremal || v == Verdict::NecessaryConditionsPass ? 0 : 1;
}

Outcome norm_outcome(const NormResult& r, bool compress, const Mat& x, const Context& ctx) {
    NormResult out = r;
    if (compress) out.factorization = balance(compress_to_rank(r.factorization, x, ctx.settings().tol));
    Outcome o;
    o.result = out;
    o.exit_code = r.precision_reached ? 0 : 3;
    o.summary = "multiplier norm in [" + fmt_double(r.lower) + ", " + fmt_double(r.upper) + "]" +
                (r.precision_reached ? "" : " (precision not reached)");
    return o;
}

Outcome report_outcome(const ExtremalityReport& r) {
    Outcome o;
    o.result = r;
    o.exit_code = verdict_exit(r.verdict);
    o.summary = std::string(to_string(r.verdict)) + ", rank " + std::to_string(r.rank) +
                ", fullness margin " + fmt_double(r.margin);
    return o;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    Settings s;
    CLI::App app{"Schur multiplier norms, fullness and extremality", "schurlab"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--tol", s.tol, "rank / PSD tolerance")->envname(kTolEnvVar)->capture_default_str();
    app.add_option("--eps", s.eps, "multiplier norm precision")->capture_default_str();
    app.add_option("--seed", s.seed, "master seed")->capture_default_str();
    app.add_option("--trials", s.trials, "trial count for sampling commands")->capture_default_str();
    app.add_option("--format", s.format, "input format")
        ->check(CLI::IsMember({"auto", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--output", s.output, "write the report here instead of stdout");
    app.add_option("--starts", s.starts, "ascent restarts for norm estimation")->capture_default_str();

    Context ctx(s);
    std::function<Outcome()> action;

    auto with_input = [&](CLI::App* sub) {
        sub->add_option("--input,-i", s.input, "matrix file (JSON or CSV, '-' for stdin)");
        return sub;
    };

    auto* norm = with_input(app.add_subcommand("norm", "bracket the Schur multiplier norm"));
    norm->callback([&] {
        action = [&] {
            const Mat x = ctx.input();
            return norm_outcome(multiplier_norm(x, s.eps, ctx.norm_opts()), false, x, ctx);
        };
    });

    bool fvg = false;
    auto* factorize = with_input(app.add_subcommand("factorize", "Schur factorization X = L* R"));
    factorize->add_flag("--fvg", fvg, "also give X = F V G with unit-column squares");
    factorize->callback([&] {
        action = [&] {
            const Mat x = ctx.input();
            const NormResult r = multiplier_norm(x, s.eps, ctx.norm_opts());
            Outcome o = norm_outcome(r, true, x, ctx);
            if (fvg) {
                const FvgFactorization f = fvg_factorization(x, ctx.opts());
                o.result["fvg"] = f;
            }
            return o;
        };
    });

    std::string transform;
    auto* fullness = with_input(app.add_subcommand("fullness", "is the column set full?"));
    fullness->add_option("--transform", transform, "matrix T; also test T applied to the set");
    fullness->callback([&] {
        action = [&] {
            const Mat v = ctx.input();
            Outcome o;
            FullnessResult fr;
            if (transform.empty()) {
                fr = fullness_test(v, s.tol);
                o.result = fr;
            } else {
                const Mat t = ctx.load(transform);
                const std::vector<Vec> cols = v.columns();
                auto [a, b] = transport_fullness(cols, t, s.tol);
                o.result = json{{"set", a}, {"image", b}, {"agree", a.is_full == b.is_full}};
                fr = a;
            }
            o.exit_code = fr.is_full ? 0 : 1;
            o.summary = std::string(fr.is_full ? "full" : "not full") + ", span rank " +
                        std::to_string(fr.span_rank) + ", achieved " + std::to_string(fr.achieved_rank) +
                        "/" + std::to_string(fr.required_rank);
            return o;
        };
    });

    auto* exq = with_input(app.add_subcommand("extremal-q", "is X an extremal correlation matrix?"));
    exq->callback([&] {
        action = [&] { return report_outcome(q_extremality(ctx.input(), ctx.opts())); };
    });

    auto* exp = with_input(app.add_subcommand("extremal-positive", "necessary condition for positive X"));
    exp->callback([&] {
        action = [&] {
            return report_outcome(positive_extremality_necessary(ctx.input(), ctx.opts()));
        };
    });

    bool normalize = false;
    auto* exg = with_input(app.add_subcommand("extremal-general", "necessary conditions in the unit ball"));
    exg->add_flag("--normalize", normalize, "rescale X to multiplier norm one first");
    exg->callback([&] {
        action = [&] {
            ExtremalityOptions o = ctx.opts();
            o.normalize = normalize;
            return report_outcome(general_necessary_conditions(ctx.input(), o));
        };
    });

    std::string mode = "q";
    auto* dec = with_input(app.add_subcommand("decompose", "split X into two distinct summands"));
    dec->add_option("--mode", mode, "q | positive | general")
        ->check(CLI::IsMember({"q", "positive", "general"}))
        ->capture_default_str();
    dec->add_flag("--normalize", normalize, "general mode: rescale X to norm one first");
    dec->callback([&] {
        action = [&] {
            const Mat x = ctx.input();
            ExtremalityOptions o = ctx.opts();
            o.normalize = normalize;
            std::optional<ConvexSplit> split;
            std::optional<ExtremalityReport> rep;
            if (mode == "q") {
                split = q_decompose(x, o);
            } else {
                rep = mode == "positive" ? positive_extremality_necessary(x, o)
                                         : general_necessary_conditions(x, o);
                split = rep->split;
            }
            Outcome out;
            if (!split) {
                out.result = json{{"split", nullptr}, {"report", *rep}};
                out.exit_code = 1;
                out.summary = "no split found (" + std::string(to_string(rep->verdict)) + ")";
                return out;
            }
            out.result = json{{"split", *split}};
            if (rep) out.result["report"] = *rep;
            out.summary = "split with alpha " + fmt_double(split->alpha) + ", residual " +
                          fmt_double(split->reconstruction_residual) + ", distinctness " +
                          fmt_double(split->distinctness);
            return out;
        };
    });

    std::string ypath, zpath;
    double alpha = 0.5;
    auto* face = with_input(app.add_subcommand("face-check", "do both summands of X lie in Q_n?"));
    face->add_option("--y", ypath, "first summand")->required();
    face->add_option("--z", zpath, "second summand")->required();
    face->add_option("--alpha", alpha, "X = (1 - alpha) Y + alpha Z")->capture_default_str();
    face->callback([&] {
        action = [&] {
            const Mat x = ctx.input();
            const Mat y = ctx.load(ypath);
            const Mat z = ctx.load(zpath);
            const bool ok = q_face_check(x, alpha, y, z, ctx.opts());
            Outcome o;
            o.result = json{{"both_in_q", ok}, {"alpha", alpha}};
            o.exit_code = ok ? 0 : 1;
            o.summary = ok ? "both summands in Q_n" : "a summand is outside Q_n";
            return o;
        };
    });

    auto* bound = with_input(app.add_subcommand("bound", "minimum number of extremal summands"));
    bound->callback([&] {
        action = [&] {
            const Mat x = ctx.input();
            const double b = corollary_decomposition_bound(x, ctx.opts());
            Outcome o;
            o.result = json{{"bound", b}, {"rank", rank_of(x, s.tol)}, {"n", x.rows()}};
            o.summary = "any decomposition into extremal points needs at least " + fmt_double(b) + " terms";
            return o;
        };
    });

    std::size_t gen_n = 4, gen_r = 2;
    auto* gen = app.add_subcommand("generate", "sample extremal correlation matrices");
    gen->add_option("--n", gen_n, "matrix size")->capture_default_str();
    gen->add_option("--r", gen_r, "rank")->capture_default_str();
    gen->callback([&] {
        action = [&] {
            const auto samples = generate_extremal_q(gen_n, gen_r, s.trials, s.seed, ctx.opts());
            json list = json::array();
            for (const auto& [x, rep] : samples)
                list.push_back(json{{"X", x}, {"rank", rep.rank}, {"verdict", std::string(to_string(rep.verdict))},
                                    {"margin", rep.margin}});
            Outcome o;
            o.result = json{{"n", gen_n}, {"r", gen_r}, {"trials", s.trials}, {"accepted", samples.size()},
                            {"samples", std::move(list)}};
            o.summary = std::to_string(samples.size()) + " extremal samples from " + std::to_string(s.trials) +
                        " trials";
            return o;
        };
    });

    std::string extra_path;
    std::size_t extra_k = 0;
    auto* ext = with_input(app.add_subcommand("extend", "append unit columns to a full factor L"));
    ext->add_option("--extra", extra_path, "matrix whose columns are the extra unit vectors");
    ext->add_option("--k", extra_k, "number of random unit columns (seeded)");
    ext->callback([&] {
        action = [&] {
            const Mat l = ctx.input();
            Mat extra;
            if (!extra_path.empty()) extra = ctx.load(extra_path);
            else if (extra_k > 0) extra = Rng(s.seed).unit_columns(l.rows(), extra_k);
            else throw Error(ErrorKind::InvalidArgument, "give --extra or --k");
            const std::vector<Vec> cols = extra.columns();
            auto [x, rep] = extend_columns(l, cols, ctx.opts());
            Outcome o = report_outcome(rep);
            o.result = json{{"X", x}, {"report", rep}};
            return o;
        };
    });

    std::string other;
    auto* prod = with_input(app.add_subcommand("schur-product", "entrywise product of two matrices"));
    prod->add_option("--other", other, "second factor")->required();
    prod->callback([&] {
        action = [&] {
            const Mat x = ctx.input();
            const Mat y = ctx.load(other);
            Outcome o;
            o.result = json{{"product", schur_product(x, y)}};
            o.summary = "product of shape " + std::to_string(x.rows()) + "x" + std::to_string(x.cols());
            return o;
        };
    });

    Report report;
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        report.command = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
        report.exit_code = 2;
        report.error_kind = "UsageError";
        report.error_message = e.what();
        out << json(report).dump(2) << '\n';
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    report.command = app.get_subcommands().front()->get_name();
    report.seed = s.seed;
    report.tolerances = json{{"tol", s.tol}, {"rel_tol", s.tol}, {"eps", s.eps}, {"starts", s.starts}};
    try {
        const Outcome o = action();
        report.result = o.result;
        report.exit_code = o.exit_code;
        err << report.command << ": " << o.summary << '\n';
    } catch (const Error& e) {
        switch (e.kind()) {
            case ErrorKind::PrecisionNotReached: report.exit_code = 3; break;
            case ErrorKind::ActuallyExtremal: report.exit_code = 1; break;
            default: report.exit_code = 2;
        }
        report.error_kind = std::string(to_string(e.kind()));
        report.error_message = e.what();
        err << report.command << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        report.exit_code = 2;
        report.error_kind = "InternalError";
        report.error_message = e.what();
        err << report.command << ": " << e.what() << '\n';
    }
    report.input_digest = ctx.digest();
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string text = json(report).dump(2) + "\n";
    if (s.output.empty()) {
        out << text;
    } else {
        std::ofstream f(s.output, std::ios::binary);
        if (!f) {
            err << "cannot write '" << s.output << "'\n";
            out << text;
            return 2;
        }
        f << text;
    }
    return report.exit_code;
}

}  // namespace schurlab
