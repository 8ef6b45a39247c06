#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyapprox/error.hpp"
#include "polyapprox/generators.hpp"
#include "polyapprox/intersection.hpp"
#include "polyapprox/io.hpp"
#include "polyapprox/minkowski.hpp"
#include "polyapprox/oracles.hpp"

namespace py = pybind11;
using namespace polyapprox;

namespace {

using RowPoints = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Python side: points are the rows of an (n, d) array.
PointPolytope from_rows(const RowPoints& rows) {
    if (rows.cols() < 1 || rows.cols() > kMaxDim) throw Error(ErrorCode::DimensionMismatch, "points must have 1..8 columns");
    return PointPolytope(PointMat(rows.transpose()));
}

RowPoints to_rows(const PointPolytope& p) { return p.points().transpose(); }

Vec to_vec(const Eigen::VectorXd& v) {
    if (v.size() < 1 || v.size() > kMaxDim) throw Error(ErrorCode::DimensionMismatch, "vector must have 1..8 entries");
    return Vec(v);
}

HalfspacePolytope from_arrays(const RowPoints& normals, const Eigen::VectorXd& offsets) {
    if (normals.rows() != offsets.size()) throw Error(ErrorCode::DimensionMismatch, "one offset per normal");
    std::vector<Hyperplane> hs;
    for (Eigen::Index i = 0; i < normals.rows(); ++i) hs.emplace_back(to_vec(normals.row(i).transpose()), offsets[i]);
    return HalfspacePolytope(static_cast<int>(normals.cols()), std::move(hs));
}

py::tuple to_arrays(const HalfspacePolytope& h) {
    RowPoints n(static_cast<Eigen::Index>(h.size()), h.dim());
    Eigen::VectorXd b(static_cast<Eigen::Index>(h.size()));
    for (std::size_t i = 0; i < h.size(); ++i) {
        n.row(static_cast<Eigen::Index>(i)) = h.halfspaces()[i].normal.transpose();
        b[static_cast<Eigen::Index>(i)] = h.halfspaces()[i].offset;
    }
    return py::make_tuple(n, b);
}

}  // namespace

PYBIND11_MODULE(_polyapprox, m) {
    m.doc() = "Approximate extent measures of convex polytopes";

    // messages start with the error code, e.g. "invalid parameter: ..."
    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    py::class_<WidthIndex>(m, "WidthIndex")
        .def_static(
            "build", [](const RowPoints& pts, double eps) { return WidthIndex::build(from_rows(pts), eps); },
            py::arg("points"), py::arg("eps"))
        .def_property_readonly("eps", &WidthIndex::eps)
        .def_property_readonly("dim", &WidthIndex::dim)
        .def_property_readonly("kernel_size", &WidthIndex::kernel_size)
        .def_property_readonly("kernel_indices", &WidthIndex::kernel_indices)
        .def_property_readonly("kernel_points",
                               [](const WidthIndex& w) { return RowPoints(w.kernel_points().transpose()); })
        .def(
            "query_width",
            [](const WidthIndex& w, const Eigen::VectorXd& v) {
                const WidthAnswer a = w.query_width(to_vec(v));
                return py::dict(py::arg("width") = a.width, py::arg("p") = Eigen::VectorXd(a.p),
                                py::arg("q") = Eigen::VectorXd(a.q), py::arg("p_index") = a.p_index,
                                py::arg("q_index") = a.q_index);
            },
            py::arg("v"))
        .def(
            "query_support",
            [](const WidthIndex& w, const Eigen::VectorXd& v) {
                const SupportAnswer a = w.query_support(to_vec(v));
                return py::make_tuple(a.value, Eigen::VectorXd(a.witness), a.index);
            },
            py::arg("v"))
        .def("to_json", [](const WidthIndex& w, const RowPoints& source) {
            return dump(to_json(w, from_rows(source)));
        });

    m.def(
        "intersect",
        [](const RowPoints& a, const RowPoints& b, double eps) {
            const WidthIndex ia = WidthIndex::build(from_rows(a), eps / kCalibration);
            const WidthIndex ib = WidthIndex::build(from_rows(b), eps / kCalibration);
            const ApproxAnswer ans = approx_intersect(ia, ib, eps);
            py::dict d(py::arg("verdict") = std::string(to_string(ans.verdict)), py::arg("trivial") = ans.trivial,
                       py::arg("envelope_min") = ans.envelope_min, py::arg("evaluations") = ans.evaluations);
            if (ans.verdict == Verdict::Disjoint) d["direction"] = Eigen::VectorXd(ans.direction);
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("eps"));

    m.def(
        "minkowski_sum",
        [](const RowPoints& a, const RowPoints& b, double eps, const std::string& algo) -> py::object {
            const WidthIndex ia = WidthIndex::build(from_rows(a), eps / kCalibration);
            const WidthIndex ib = WidthIndex::build(from_rows(b), eps / kCalibration);
            if (algo == "dudley") return to_arrays(dudley(ia, ib, eps));
            if (algo == "bi") return py::cast(to_rows(bronshteyn_ivanov(ia, ib, eps)));
            throw Error(ErrorCode::InvalidParameter, "algo must be 'dudley' or 'bi'");
        },
        py::arg("a"), py::arg("b"), py::arg("eps"), py::arg("algo") = "dudley",
        "dudley: (normals, offsets) of an outer approximation; bi: points of an inner one.");

    m.def(
        "to_halfspaces", [](const RowPoints& p, double eps) { return to_arrays(convert_to_halfspaces(from_rows(p), eps)); },
        py::arg("points"), py::arg("eps"));
    m.def(
        "to_points",
        [](const RowPoints& normals, const Eigen::VectorXd& offsets, double eps) {
            return to_rows(convert_to_points(from_arrays(normals, offsets), eps));
        },
        py::arg("normals"), py::arg("offsets"), py::arg("eps"));

    m.def(
        "width",
        [](const RowPoints& p, double eps) {
            const ApproxWidth w = approx_width(from_rows(p), eps);
            return py::dict(py::arg("width") = w.width, py::arg("direction") = Eigen::VectorXd(w.direction),
                            py::arg("halfspaces") = w.halfspaces, py::arg("evaluations") = w.evaluations);
        },
        py::arg("points"), py::arg("eps"));

    m.def(
        "width_exact", [](const RowPoints& p, const Eigen::VectorXd& v) { return width_exact(from_rows(p), to_vec(v)); },
        py::arg("points"), py::arg("v"));
    m.def(
        "intersect_exact",
        [](const RowPoints& a, const RowPoints& b) {
            return std::string(to_string(lp_intersect_exact(from_rows(a), from_rows(b)).verdict));
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "sphere_shell",
        [](int d, Eigen::Index n, std::uint64_t seed, double inner) { return to_rows(sphere_shell(d, n, seed, inner)); },
        py::arg("dim"), py::arg("n"), py::arg("seed"), py::arg("inner") = 1.0);
    m.def(
        "random_hull", [](int d, Eigen::Index n, std::uint64_t seed) { return to_rows(random_hull(d, n, seed)); },
        py::arg("dim"), py::arg("n"), py::arg("seed"));
    m.def(
        "rotated_box",
        [](const Eigen::VectorXd& half, std::uint64_t seed) {
            const AnalyticInstance a = rotated_box(to_vec(half), seed);
            return py::make_tuple(to_rows(a.points), a.width);
        },
        py::arg("half_extents"), py::arg("seed"));
    m.def(
        "regular_simplex",
        [](int d, std::uint64_t seed) {
            const AnalyticInstance a = regular_simplex(d, seed);
            return py::make_tuple(to_rows(a.points), a.width);
        },
        py::arg("dim"), py::arg("seed") = 0);
}
