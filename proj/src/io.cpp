#include "polyapprox/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace polyapprox {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::Parse, path + ": " + what);
}

const Json& field(const Json& j, const std::string& path, const char* key) {
    if (!j.is_object()) fail(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(path.empty() ? key : path + "." + key, "missing field");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) fail(path, "expected a finite number");
    return x;
}

int dimension(const Json& j) {
    const Json& d = field(j, "", "dim");
    if (!d.is_number_integer()) fail("dim", "expected an integer");
    const int dim = d.get<int>();
    if (dim < 2 || dim > kMaxDim) fail("dim", "must lie in [2, " + std::to_string(kMaxDim) + "]");
    return dim;
}

Vec vector_of(const Json& j, const std::string& path, int dim) {
    if (!j.is_array()) fail(path, "expected an array");
    if (static_cast<int>(j.size()) != dim) fail(path, "expected " + std::to_string(dim) + " coordinates");
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = number(j[static_cast<std::size_t>(i)], path + "[" + std::to_string(i) + "]");
    return v;
}

SquareMat matrix_of(const Json& j, const std::string& path, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim) fail(path, "expected " + std::to_string(dim) + " rows");
    SquareMat m(dim, dim);
    for (int i = 0; i < dim; ++i) m.row(i) = vector_of(j[static_cast<std::size_t>(i)], path + "[" + std::to_string(i) + "]", dim).transpose();
    return m;
}

std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

struct P2 {
    double x, y;
};

double cross(const P2& o, const P2& a, const P2& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

std::vector<P2> hull_2d(std::vector<P2> p) {
    std::sort(p.begin(), p.end(), [](const P2& a, const P2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    if (p.size() < 3) return p;
    std::vector<P2> h(2 * p.size());
    std::size_t k = 0;
    for (const P2& q : p) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], q) <= 0) --k;
        h[k++] = q;
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    return h;
}

std::vector<P2> outline(const AnyPolytope& layer) {
    std::vector<P2> pts;
    if (const auto* p = std::get_if<PointPolytope>(&layer)) {
        if (p->dim() != 2) throw Error(ErrorCode::DimensionMismatch, "svg output needs dim 2");
        for (Eigen::Index i = 0; i < p->size(); ++i) pts.push_back({p->points()(0, i), p->points()(1, i)});
        return hull_2d(pts);
    }
    const auto& h = std::get<HalfspacePolytope>(layer);
    if (h.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "svg output needs dim 2");
    const auto& hs = h.halfspaces();
    double scale = 0.0;
    for (const Hyperplane& a : hs) scale = std::max(scale, std::abs(a.offset));
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            const double det = hs[i].normal[0] * hs[j].normal[1] - hs[i].normal[1] * hs[j].normal[0];
            if (std::abs(det) < 1e-12) continue;
            const double x = (hs[i].offset * hs[j].normal[1] - hs[j].offset * hs[i].normal[1]) / det;
            const double y = (hs[i].normal[0] * hs[j].offset - hs[j].normal[0] * hs[i].offset) / det;
            if (h.contains(Vec(Eigen::Vector2d(x, y)), 1e-9 * (1 + scale))) pts.push_back({x, y});
        }
    return hull_2d(pts);
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << std::fixed << x;
    return os.str();
}

}  // namespace

Json to_json(const Vec& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Json to_json(const PointPolytope& p) {
    Json pts = Json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) pts.push_back(to_json(Vec(p.point(i))));
    return Json{{"dim", p.dim()}, {"points", std::move(pts)}};
}

Json to_json(const HalfspacePolytope& h) {
    Json hs = Json::array();
    for (const Hyperplane& a : h.halfspaces()) hs.push_back(Json{{"normal", to_json(a.normal)}, {"offset", a.offset}});
    return Json{{"dim", h.dim()}, {"halfspaces", std::move(hs)}};
}

Json to_json(const AnyPolytope& p) {
    return std::visit([](const auto& x) { return to_json(x); }, p);
}

Json to_json(const AffineMap& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.dim(); ++i) rows.push_back(to_json(Vec(m.matrix().row(i).transpose())));
    return Json{{"matrix", std::move(rows)}, {"translation", to_json(m.translation_part())}};
}

Json to_json(const SymmetricBody& b) {
    Json gens = Json::array();
    for (Eigen::Index j = 0; j < b.generators.cols(); ++j) gens.push_back(to_json(Vec(b.generators.col(j))));
    return Json{{"center", to_json(b.center)}, {"generators", std::move(gens)}, {"lambda", b.lambda}};
}

Json to_json(const WidthIndex& idx, const PointPolytope& source) {
    Json kernel = Json::array();
    for (Eigen::Index i : idx.kernel_indices()) kernel.push_back(i);
    Json j = to_json(source);
    j["eps"] = idx.eps();
    j["kernel"] = std::move(kernel);
    j["body"] = to_json(idx.body());
    j["map"] = to_json(idx.own_map());
    return j;
}

Json parse_json_text(std::string_view text, std::string_view origin) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string(origin) + ": " + line_column(text, e.byte == 0 ? 0 : e.byte - 1) +
                                          ": malformed JSON");
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Parse, path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

PointPolytope point_polytope_from_json(const Json& j) {
    const int d = dimension(j);
    const Json& pts = field(j, "", "points");
    if (!pts.is_array()) fail("points", "expected an array");
    if (pts.empty()) fail("points", "expected at least one point");
    PointMat m(d, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        m.col(static_cast<Eigen::Index>(i)) = vector_of(pts[i], "points[" + std::to_string(i) + "]", d);
    return PointPolytope(m);
}

HalfspacePolytope halfspace_polytope_from_json(const Json& j) {
    const int d = dimension(j);
    const Json& hs = field(j, "", "halfspaces");
    if (!hs.is_array()) fail("halfspaces", "expected an array");
    std::vector<Hyperplane> out;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const std::string path = "halfspaces[" + std::to_string(i) + "]";
        const Vec n = vector_of(field(hs[i], path, "normal"), path + ".normal", d);
        if (n.norm() == 0.0) fail(path + ".normal", "must be nonzero");
        out.emplace_back(n, number(field(hs[i], path, "offset"), path + ".offset"));
    }
    return HalfspacePolytope(d, std::move(out));
}

AnyPolytope polytope_from_json(const Json& j) {
    if (!j.is_object()) fail("(root)", "expected an object");
    const bool has_points = j.contains("points"), has_halfspaces = j.contains("halfspaces");
    if (has_points == has_halfspaces) fail("(root)", "expected exactly one of points, halfspaces");
    if (has_points) return point_polytope_from_json(j);
    return halfspace_polytope_from_json(j);
}

PointPolytope index_source_from_json(const Json& j) { return point_polytope_from_json(j); }

WidthIndex index_from_json(const Json& j) {
    const PointPolytope s = point_polytope_from_json(j);
    const int d = s.dim();
    const double eps = number(field(j, "", "eps"), "eps");
    const Json& kernel = field(j, "", "kernel");
    if (!kernel.is_array() || kernel.empty()) fail("kernel", "expected a nonempty array");
    std::vector<Eigen::Index> k;
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        const std::string path = "kernel[" + std::to_string(i) + "]";
        if (!kernel[i].is_number_integer()) fail(path, "expected an integer");
        const auto v = kernel[i].get<long long>();
        if (v < 0 || v >= s.size()) fail(path, "point index out of range");
        k.push_back(static_cast<Eigen::Index>(v));
    }
    const Json& body = field(j, "", "body");
    SymmetricBody b;
    b.center = vector_of(field(body, "body", "center"), "body.center", d);
    const Json& gens = field(body, "body", "generators");
    if (!gens.is_array()) fail("body.generators", "expected an array");
    b.generators.resize(d, static_cast<Eigen::Index>(gens.size()));
    for (std::size_t i = 0; i < gens.size(); ++i)
        b.generators.col(static_cast<Eigen::Index>(i)) = vector_of(gens[i], "body.generators[" + std::to_string(i) + "]", d);
    b.lambda = number(field(body, "body", "lambda"), "body.lambda");
    const Json& map = field(j, "", "map");
    const SquareMat m = matrix_of(field(map, "map", "matrix"), "map.matrix", d);
    const Vec t = vector_of(field(map, "map", "translation"), "map.translation", d);
    try {
        return WidthIndex::from_parts(s, eps, std::move(k), std::move(b), AffineMap(m, t));
    } catch (const Error& e) {
        fail("(index)", e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string svg_render_2d(const std::vector<AnyPolytope>& layers) {
    static const char* const colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::vector<std::vector<P2>> outlines;
    double lo_x = INFINITY, lo_y = INFINITY, hi_x = -INFINITY, hi_y = -INFINITY;
    for (const AnyPolytope& l : layers) {
        outlines.push_back(outline(l));
        for (const P2& p : outlines.back()) {
            lo_x = std::min(lo_x, p.x), hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y), hi_y = std::max(hi_y, p.y);
        }
    }
    if (!std::isfinite(lo_x)) lo_x = lo_y = -1, hi_x = hi_y = 1;
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    const double pad = 0.05 * span, size = 512.0, s = size / (span + 2 * pad);
    auto sx = [&](double x) { return fmt((x - lo_x + pad) * s); };
    auto sy = [&](double y) { return fmt((hi_y + pad - y) * s); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size) << "\" height=\"" << fmt(size)
       << "\" viewBox=\"0 0 " << fmt(size) << " " << fmt(size) << "\">\n";
    for (std::size_t i = 0; i < outlines.size(); ++i) {
        os << "  <polygon fill=\"none\" stroke=\"" << colors[i % 5] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < outlines[i].size(); ++k)
            os << (k ? " " : "") << sx(outlines[i][k].x) << "," << sy(outlines[i][k].y);
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace polyapprox
