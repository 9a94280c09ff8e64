// Python bindings for the core operations: extremal families and their
// exact statistics, grid rearrangement, the energy functionals, and the
// inequality verifiers. Reports come back as plain dicts so callers can
// dump them straight to JSON.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "pslab/extremal.hpp"
#include "pslab/functionals.hpp"
#include "pslab/geometry.hpp"
#include "pslab/grid_field.hpp"
#include "pslab/io.hpp"
#include "pslab/measure.hpp"
#include "pslab/rearrangement.hpp"
#include "pslab/scenario.hpp"
#include "pslab/verify.hpp"
#include "pslab/young.hpp"

namespace py = pybind11;
using namespace pslab;

namespace {

Point to_point(const std::vector<double>& v) {
    if (v.empty() || v.size() > 3)
        throw std::invalid_argument("point needs 1 to 3 coordinates");
    Point p{0.0, 0.0, 0.0};
    for (size_t i = 0; i < v.size(); ++i)
        p[i] = v[i];
    return p;
}

py::array_t<double> field_values(const GridField& u) {
    std::vector<py::ssize_t> shape;
    for (int a = u.n - 1; a >= 0; --a)
        shape.push_back(u.dims[size_t(a)]);
    py::array_t<double> out(shape);
    std::copy(u.values.begin(), u.values.end(), out.mutable_data());
    return out;
}

GridField field_from_array(const py::array_t<double, py::array::c_style |
                                                         py::array::forcecast>& a,
                           const std::vector<double>& origin, double spacing) {
    GridField u;
    u.n = int(a.ndim());
    if (u.n < 1 || u.n > 3)
        throw std::invalid_argument("array must be 1-, 2- or 3-dimensional");
    u.origin = to_point(origin);
    u.h = spacing;
    for (int axis = 0; axis < u.n; ++axis)
        u.dims[size_t(axis)] = int(a.shape(u.n - 1 - axis));
    u.values.assign(a.data(), a.data() + a.size());
    u.validate();
    return u;
}

py::dict report_dict(const BoundReport& rep) {
    py::dict d;
    d["bound_id"] = rep.bound_id;
    d["lhs"] = rep.lhs;
    d["rhs"] = rep.rhs;
    d["ratio"] = rep.ratio;
    d["tolerance"] = rep.tolerance;
    d["verdict"] = rep.verdict;
    d["vacuous"] = rep.vacuous;
    py::dict params;
    for (const auto& [k, v] : rep.params)
        params[py::str(k)] = v;
    d["params"] = params;
    return d;
}

py::dict stats_dict(const ExtremalStats& st) {
    py::dict d;
    d["ess_sup"] = st.ess_sup;
    d["support_measure"] = st.support_measure;
    d["critical_measure"] = st.critical_measure;
    d["singular_mass"] = st.singular_mass;
    d["singular_variation"] = st.singular_variation;
    d["bv_only"] = st.bv_only;
    return d;
}

py::dict decomposition_dict(const MeasureDecomposition& dec) {
    py::dict d;
    d["ess_sup"] = dec.ess_sup;
    d["total_mass"] = dec.total_mass;
    d["ac_mass"] = dec.ac_mass();
    d["singular_mass"] = dec.singular_mass();
    d["jump_heights"] = dec.jump_heights;
    d["jump_masses"] = dec.jump_masses;
    d["sc_heights"] = dec.sc_heights;
    d["sc_masses"] = dec.sc_masses;
    d["top_plateau_mass"] = dec.top_plateau_mass;
    return d;
}

ExtremalSpec build_from_lists(
    int n, const std::vector<std::tuple<double, double>>& knots,
    const std::vector<double>& center_heights,
    const std::vector<std::vector<double>>& center_points) {
    RadialProfile profile;
    for (const auto& [t, r] : knots)
        profile.knots.push_back({t, r, false});
    CenterPath path;
    if (center_heights.empty()) {
        path = CenterPath::constant(Point{0.0, 0.0, 0.0});
    } else {
        path.heights = center_heights;
        for (const auto& c : center_points)
            path.centers.push_back(to_point(c));
    }
    return build_extremal(n, profile, path);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Symmetric decreasing rearrangement: exact extremal families, "
              "grid operators and stability-bound verifiers.";

    py::class_<YoungFunction>(m, "YoungFunction")
        .def_static("power", &YoungFunction::power, py::arg("exponent"))
        .def_static("piecewise_linear", &YoungFunction::piecewise_linear,
                    py::arg("points"))
        .def("__call__", &YoungFunction::value, py::arg("t"))
        .def("derivative", &YoungFunction::derivative, py::arg("t"));

    py::class_<GridField>(m, "GridField")
        .def(py::init(&field_from_array), py::arg("values"), py::arg("origin"),
             py::arg("spacing"))
        .def_property_readonly("values", &field_values)
        .def_property_readonly(
            "origin",
            [](const GridField& u) {
                return std::vector<double>(u.origin.begin(),
                                           u.origin.begin() + u.n);
            })
        .def_readonly("spacing", &GridField::h)
        .def_readonly("n", &GridField::n);

    py::class_<ExtremalSpec>(m, "ExtremalSpec")
        .def_readonly("n", &ExtremalSpec::n)
        .def_readonly("family", &ExtremalSpec::family)
        .def_property_readonly(
            "params",
            [](const ExtremalSpec& s) {
                py::dict d;
                for (const auto& [k, v] : s.params)
                    d[py::str(k)] = v;
                return d;
            })
        .def_property_readonly(
            "ess_sup", [](const ExtremalSpec& s) { return s.top(); })
        .def("__call__",
             [](const ExtremalSpec& s, const std::vector<double>& x) {
                 return eval_extremal(s, to_point(x));
             })
        .def("stats",
             [](const ExtremalSpec& s) {
                 return stats_dict(extremal_exact_stats(s));
             })
        .def("decompose",
             [](const ExtremalSpec& s) {
                 return decomposition_dict(decompose(exact_distribution(s)));
             })
        .def("sample", &sample_grid, py::arg("cells"),
             py::arg("margin") = 0.25);

    m.def("cone_frustrum",
          [](int n, double a, double rho, double rho_prime,
             const std::vector<double>& e) {
              return family_cone_frustrum(n, a, rho, rho_prime, to_point(e));
          },
          py::arg("n"), py::arg("a"), py::arg("rho"), py::arg("rho_prime"),
          py::arg("e"));
    m.def("staircase",
          [](int n, const std::vector<std::pair<double, double>>& levels,
             const std::vector<std::vector<double>>& centers) {
              std::vector<Point> pts;
              for (const auto& c : centers)
                  pts.push_back(to_point(c));
              return family_staircase(n, levels, pts);
          },
          py::arg("n"), py::arg("levels"), py::arg("centers"));
    m.def("devils_staircase", &family_devils_staircase, py::arg("n"),
          py::arg("depth"), py::arg("center_scale") = 0.0);
    m.def("build_extremal", &build_from_lists, py::arg("n"), py::arg("knots"),
          py::arg("center_heights") = std::vector<double>{},
          py::arg("center_points") = std::vector<std::vector<double>>{});
    m.def("translate",
          [](const ExtremalSpec& s, const std::vector<double>& v) {
              return translate_spec(s, to_point(v));
          },
          py::arg("spec"), py::arg("v"));
    m.def("dilate", &dilate_spec, py::arg("spec"), py::arg("factor"));

    m.def("rearrange", &rearrange, py::arg("field"),
          "Symmetric decreasing rearrangement of a grid sample.");
    m.def("optimal_translation",
          [](const ExtremalSpec& s) {
              const auto p = optimal_translation(s);
              return std::vector<double>(p.begin(), p.begin() + s.n);
          },
          py::arg("spec"));
    m.def("lq_norm", py::overload_cast<const GridField&, double>(&lq_norm),
          py::arg("field"), py::arg("q"));
    m.def("gradient_norm_lp", &gradient_norm_lp, py::arg("field"),
          py::arg("p"));
    m.def("dirichlet_functional",
          py::overload_cast<const GridField&, const YoungFunction&>(
              &dirichlet_functional),
          py::arg("field"), py::arg("phi"));
    m.def("dirichlet_functional",
          py::overload_cast<const ExtremalSpec&, const YoungFunction&>(
              &dirichlet_functional),
          py::arg("spec"), py::arg("phi"));
    m.def("psi_distance",
          py::overload_cast<const GridField&, const GridField&,
                            const YoungFunction&>(&psi_distance),
          py::arg("u"), py::arg("v"), py::arg("psi"));

    m.def("stability_gap_lq",
          [](const ExtremalSpec& s, double q) {
              return stability_gap_lq(s, q).value;
          },
          py::arg("spec"), py::arg("q"));
    m.def("stability_gap_sup", &stability_gap_sup, py::arg("spec"));

    m.def("verify_theorem_main",
          [](const ExtremalSpec& s, double q) {
              return report_dict(verify_theorem_main(s, q));
          },
          py::arg("spec"), py::arg("q"));
    m.def("verify_theorem_finite",
          [](const ExtremalSpec& s, double p) {
              return report_dict(verify_theorem_finite(s, p));
          },
          py::arg("spec"), py::arg("p"));
    m.def("verify_theorem_morrey",
          [](const ExtremalSpec& s, double p, double M) {
              return report_dict(verify_theorem_morrey(s, p, M));
          },
          py::arg("spec"), py::arg("p"), py::arg("morrey_constant"));
    m.def("verify_cf_bound",
          [](const ExtremalSpec& s, double p) {
              return report_dict(verify_cf_bound(s, p));
          },
          py::arg("spec"), py::arg("p"));
    m.def("verify_density_bound",
          [](const ExtremalSpec& s, double q) {
              return report_dict(verify_density_bound(s, q));
          },
          py::arg("spec"), py::arg("q"));
    m.def("verify_corollary_young",
          [](const ExtremalSpec& s, const YoungFunction& phi,
             const YoungFunction& psi) {
              return report_dict(verify_corollary_young(s, phi, psi));
          },
          py::arg("spec"), py::arg("phi"), py::arg("psi"));
    m.def("verify_corollary_finite",
          [](const ExtremalSpec& s, const YoungFunction& phi) {
              return report_dict(verify_corollary_finite(s, phi));
          },
          py::arg("spec"), py::arg("phi"));
    m.def("verify_coarea_bound",
          [](const ExtremalSpec& s, double q) {
              return report_dict(verify_coarea_bound(s, q));
          },
          py::arg("spec"), py::arg("q"));

    m.def("unit_ball_volume", &unit_ball_volume, py::arg("n"));
    m.def("kn_constant", &kn_constant, py::arg("n"));
    m.def("ball_symdiff_volume", &ball_symdiff_volume, py::arg("n"),
          py::arg("r"), py::arg("d"));
    m.def("symdiff_bound", &symdiff_bound, py::arg("n"), py::arg("volume"),
          py::arg("d"));

    m.def("save_field", &save_grid_field, py::arg("field"), py::arg("path"));
    m.def("load_field", &load_grid_field, py::arg("path"));

    m.def("run_scenario",
          [](const std::string& config_path, const std::string& out_dir) {
              auto cfg = load_scenario(config_path);
              if (!out_dir.empty())
                  cfg.out_dir = out_dir;
              const auto res = run_scenario(cfg);
              py::dict d;
              d["exit_code"] = res.exit_code;
              d["files"] = res.files;
              d["summary"] = res.summary;
              return d;
          },
          py::arg("config_path"), py::arg("out_dir") = std::string());
}
