#include "polyapprox/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "polyapprox/acceptance.hpp"
#include "polyapprox/error.hpp"
#include "polyapprox/generators.hpp"
#include "polyapprox/intersection.hpp"
#include "polyapprox/io.hpp"
#include "polyapprox/minkowski.hpp"

namespace polyapprox {

namespace {

struct Flags {
    double eps = 0.1;
    int dim = 2;
    std::uint64_t seed = 1;
    std::vector<std::string> in;
    std::string out;
    std::string format = "json";
    std::string algo = "dudley";
    std::string kind = "random-hull";
    long long n = 100;
    double margin = 2.0;
    double scale = 0.02;
    bool timings = false;
};

void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidParameter, "--eps must lie in (0, 1)");
}

void check_dim(int d) {
    if (d < 2 || d > kMaxDim) throw Error(ErrorCode::InvalidParameter, "--dim must lie in [2, 8]");
}

const std::string& single_input(const Flags& f) {
    if (f.in.size() != 1) throw Error(ErrorCode::InvalidParameter, "expected exactly one --in");
    return f.in.front();
}

bool is_index(const Json& j) { return j.is_object() && j.contains("kernel"); }
bool is_pair(const Json& j) { return j.is_object() && j.contains("a") && j.contains("b"); }

PointPolytope points_of(const Json& j) {
    if (is_index(j)) return index_source_from_json(j);
    return point_polytope_from_json(j);
}

// A stored index is reused when it is at least as accurate as asked.
WidthIndex index_of(const Json& j, double eps) {
    if (is_index(j) && j.at("eps").is_number() && j.at("eps").get<double>() <= eps) return index_from_json(j);
    return WidthIndex::build(points_of(j), eps);
}

std::pair<Json, Json> two_inputs(const Flags& f) {
    if (f.in.size() == 1) {
        Json j = read_json_file(f.in.front());
        if (!is_pair(j)) throw Error(ErrorCode::InvalidParameter, "a single --in must hold a pair {\"a\", \"b\"}");
        return {j.at("a"), j.at("b")};
    }
    if (f.in.size() != 2) throw Error(ErrorCode::InvalidParameter, "expected two --in files or one pair file");
    return {read_json_file(f.in[0]), read_json_file(f.in[1])};
}

Json certificate_json(const PairCertificate& c) {
    Json j = {{"intersecting", c.intersecting}};
    if (c.intersecting) {
        j["witness"] = to_json(c.witness);
    } else {
        j["direction"] = to_json(c.direction);
        j["gap"] = c.gap;
    }
    return j;
}

Json cmd_gen(const Flags& f) {
    check_dim(f.dim);
    if (f.n < 1) throw Error(ErrorCode::InvalidParameter, "--n must be >= 1");
    const InstanceKind kind = parse_instance_kind(f.kind);
    const auto n = static_cast<Eigen::Index>(f.n);
    Json j;
    switch (kind) {
        case InstanceKind::SphereShell: j = to_json(sphere_shell(f.dim, n, f.seed, 0.8)); break;
        case InstanceKind::RandomHull: j = to_json(random_hull(f.dim, n, f.seed)); break;
        case InstanceKind::RotatedBox: {
            const AnalyticInstance a = rotated_box(f.dim, f.seed);
            j = to_json(a.points);
            j["width"] = a.width;
            break;
        }
        case InstanceKind::Simplex: {
            const AnalyticInstance a = regular_simplex(f.dim, f.seed);
            j = to_json(a.points);
            j["width"] = a.width;
            break;
        }
        case InstanceKind::NearTouchingPair: {
            check_eps(f.eps);
            const PolytopePair p = near_touching_pair(f.dim, n, f.eps, f.margin, f.seed);
            j = {{"a", to_json(p.a)}, {"b", to_json(p.b)}, {"certificate", certificate_json(p.certificate)}};
            break;
        }
    }
    j["kind"] = std::string(to_string(kind));
    j["seed"] = f.seed;
    return j;
}

Json cmd_build(const Flags& f) {
    check_eps(f.eps);
    const PointPolytope s = points_of(read_json_file(single_input(f)));
    return to_json(WidthIndex::build(s, f.eps), s);
}

Json cmd_kernel(const Flags& f) {
    check_eps(f.eps);
    const PointPolytope s = points_of(read_json_file(single_input(f)));
    const WidthIndex idx = WidthIndex::build(s, f.eps);
    Json pts = Json::array();
    for (Eigen::Index i = 0; i < idx.kernel_points().cols(); ++i) pts.push_back(to_json(Vec(idx.kernel_points().col(i))));
    return {{"dim", idx.dim()},
            {"eps", f.eps},
            {"input_size", s.size()},
            {"kernel_size", idx.kernel_size()},
            {"net_size", idx.net_size()},
            {"kernel", idx.kernel_indices()},
            {"points", pts}};
}

Json cmd_intersect(const Flags& f) {
    check_eps(f.eps);
    const auto [ja, jb] = two_inputs(f);
    const WidthIndex a = index_of(ja, f.eps / kCalibration);
    const WidthIndex b = index_of(jb, f.eps / kCalibration);
    const ApproxAnswer ans = approx_intersect(a, b, f.eps);
    Json j = {{"verdict", std::string(to_string(ans.verdict))},
              {"trivial", ans.trivial},
              {"eps", f.eps},
              {"envelope_min", ans.envelope_min},
              {"evaluations", ans.evaluations},
              {"frame",
               {{"r", ans.frame.r}, {"lambda", ans.frame.lambda}, {"beta", ans.frame.beta}, {"alpha", ans.frame.alpha}}}};
    if (ans.verdict == Verdict::Disjoint) {
        j["direction"] = to_json(ans.direction);
        j["certified_upper"] = ans.certified_upper;
    }
    return j;
}

// Returns JSON, or SVG text in `svg` when asked for.
Json cmd_minksum(const Flags& f, std::optional<std::string>& svg) {
    check_eps(f.eps);
    std::vector<AnyPolytope> layers;
    Json j;
    if (f.in.size() == 1 && !is_pair(read_json_file(f.in.front()))) {
        const Json src = read_json_file(f.in.front());
        AnyPolytope p = is_index(src) ? AnyPolytope(index_source_from_json(src)) : polytope_from_json(src);
        AnyPolytope q;
        if (const auto* pts = std::get_if<PointPolytope>(&p)) {
            q = convert_to_halfspaces(*pts, f.eps);
        } else {
            q = convert_to_points(std::get<HalfspacePolytope>(p), f.eps);
        }
        j = to_json(q);
        j["operation"] = "convert";
        layers = {p, q};
    } else {
        const auto [ja, jb] = two_inputs(f);
        const double e = f.eps / kCalibration;
        const WidthIndex a = index_of(ja, e);
        const WidthIndex b = index_of(jb, e);
        SumBody k(a.dim());
        k.add(a).add(b);
        const Approximation ap = approximate(k, f.eps);
        if (f.algo == "dudley") {
            j = to_json(ap.outer);
            layers.push_back(ap.outer);
        } else {
            j = to_json(ap.inner);
            layers.push_back(ap.inner);
        }
        j["operation"] = "minksum";
        j["algo"] = f.algo;
        j["net_size"] = ap.samples.size();
        j["probes"] = ap.probes;
        j["evaluations"] = ap.evaluations;
        if (f.format == "svg") {
            layers.insert(layers.begin(), pairwise_sum(points_of(ja), points_of(jb)));
        }
    }
    j["eps"] = f.eps;
    if (f.format == "svg") svg = svg_render_2d(layers);
    return j;
}

Json cmd_width(const Flags& f) {
    check_eps(f.eps);
    const Json src = read_json_file(single_input(f));
    const ApproxWidth w = approx_width(index_of(src, f.eps / kCalibration), f.eps);
    return {{"width", w.width},
            {"direction", to_json(w.direction)},
            {"eps", f.eps},
            {"halfspaces", w.halfspaces},
            {"evaluations", w.evaluations}};
}

Json cmd_bench(const Flags& f) {
    check_dim(f.dim);
    const Eigen::Index n = f.dim <= 3 ? 20000 : 5000;
    const PointPolytope s = sphere_shell(f.dim, n, f.seed, 0.8);
    Json rows = Json::array();
    for (double eps : {0.2, 0.1, 0.05, 0.02}) {
        const auto t0 = std::chrono::steady_clock::now();
        const WidthIndex idx = WidthIndex::build(s, eps);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        Json row = {{"eps", eps},
                    {"kernel_size", idx.kernel_size()},
                    {"net_size", idx.net_size()},
                    {"scaled_kernel", static_cast<double>(idx.kernel_size()) * std::pow(eps, 0.5 * (f.dim - 1))}};
        if (f.timings) row["build_seconds"] = secs;
        rows.push_back(row);
    }
    return {{"dim", f.dim}, {"seed", f.seed}, {"input_size", n}, {"rows", rows}};
}

Json cmd_selftest(const Flags& f) {
    if (!(f.scale > 0.0 && f.scale <= 1.0)) throw Error(ErrorCode::InvalidParameter, "--scale must lie in (0, 1]");
    SuiteOptions o;
    o.scale = f.scale;
    o.seed = f.seed;
    const std::vector<CriterionReport> rs = run_acceptance(o);
    Json crit = Json::array();
    bool ok = true;
    for (const CriterionReport& r : rs) {
        crit.push_back(to_json(r, f.timings));
        ok = ok && r.passed;
    }
    return {{"passed", ok}, {"scale", f.scale}, {"seed", f.seed}, {"criteria", crit}};
}

void emit(const std::string& text, const Flags& f, std::ostream& out) {
    if (f.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(f.out, std::ios::binary);
    if (!file) throw Error(ErrorCode::Parse, "cannot write '" + f.out + "'");
    file << text;
    if (!file.flush()) throw Error(ErrorCode::Parse, "write failed for '" + f.out + "'");
    out << dump({{"written", f.out}, {"bytes", text.size()}});
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polytope approximation tools"};
    app.require_subcommand(1, 1);
    Flags f;
    app.add_option("--eps", f.eps, "accuracy in (0, 1)");
    app.add_option("--dim", f.dim, "dimension for gen and bench");
    app.add_option("--seed", f.seed, "generator seed");
    app.add_option("--in", f.in, "input file (repeatable)");
    app.add_option("--out", f.out, "write the result here instead of stdout");
    app.add_option("--format", f.format, "json or svg")->check(CLI::IsMember({"json", "svg"}));
    app.add_option("--algo", f.algo, "dudley (outer) or bi (inner)")->check(CLI::IsMember({"dudley", "bi"}));
    app.add_option("--kind", f.kind, "instance kind for gen");
    app.add_option("--n", f.n, "point count for gen");
    app.add_option("--margin", f.margin, "near-touching-pair gap in units of eps");
    app.add_option("--scale", f.scale, "selftest instance fraction");
    app.add_flag("--timings", f.timings, "include wall-clock timings");

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"gen", "generate an instance"},
        {"build", "build a width index"},
        {"intersect", "approximate intersection test"},
        {"minksum", "approximate Minkowski sum, or convert one representation"},
        {"width", "approximate width"},
        {"kernel", "eps-kernel of a point set"},
        {"bench", "kernel sizes across eps"},
        {"selftest", "reduced acceptance run"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        const std::string cmd = app.get_subcommands().front()->get_name();
        std::optional<std::string> svg;
        Json j;
        if (f.format == "svg" && cmd != "minksum") throw Error(ErrorCode::InvalidParameter, "--format svg is only for minksum");
        if (cmd == "gen") j = cmd_gen(f);
        else if (cmd == "build") j = cmd_build(f);
        else if (cmd == "kernel") j = cmd_kernel(f);
        else if (cmd == "intersect") j = cmd_intersect(f);
        else if (cmd == "minksum") j = cmd_minksum(f, svg);
        else if (cmd == "width") j = cmd_width(f);
        else if (cmd == "bench") j = cmd_bench(f);
        else j = cmd_selftest(f);
        emit(svg ? *svg : dump(j), f, out);
        return 0;
    } catch (const Error& e) {
        err << dump({{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}});
    } catch (const std::exception& e) {
        err << dump({{"error", {{"code", "internal"}, {"message", e.what()}}}});
    }
    return 1;
}

}  // namespace polyapprox
