#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "cc4/cocircular.hpp"
#include "cc4/configuration.hpp"
#include "cc4/core_dynamics.hpp"
#include "cc4/dipole_field.hpp"
#include "cc4/errors.hpp"
#include "cc4/geometry.hpp"
#include "cc4/json_io.hpp"
#include "cc4/nonzero_multiplier.hpp"
#include "cc4/simulate.hpp"
#include "cc4/zero_multiplier.hpp"

namespace py = pybind11;

namespace {

std::string vec_repr(const cc4::Vec2& v) {
    std::ostringstream ss;
    ss << "Vec2(" << v.x << ", " << v.y << ")";
    return ss.str();
}

}  // namespace

PYBIND11_MODULE(_cc4, m) {
    m.doc() = "Planar central configurations of four bodies with masses x, -x, y, -y";

    py::register_exception<cc4::CollisionError>(m, "CollisionError");
    py::register_exception<cc4::DegenerateError>(m, "DegenerateError");
    py::register_exception<cc4::SingularityError>(m, "SingularityError");
    py::register_exception<cc4::NoConvergenceError>(m, "NoConvergenceError");
    py::register_exception<cc4::NoRootError>(m, "NoRootError");
    py::register_exception<cc4::InvalidMassError>(m, "InvalidMassError");
    py::register_exception<cc4::FlatTriangleError>(m, "FlatTriangleError");
    py::register_exception<cc4::NotATrapezoidError>(m, "NotATrapezoidError");
    py::register_exception<cc4::NotCocircularError>(m, "NotCocircularError");
    py::register_exception<cc4::CollinearError>(m, "CollinearError");
    py::register_exception<cc4::StepFailureError>(m, "StepFailureError");
    py::register_exception<cc4::ParseError>(m, "ParseError");

    py::class_<cc4::Vec2>(m, "Vec2")
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def(py::init([](py::sequence s) {
            if (s.size() != 2) throw py::value_error("Vec2 expects two numbers");
            return cc4::Vec2{s[0].cast<double>(), s[1].cast<double>()};
        }))
        .def_readwrite("x", &cc4::Vec2::x)
        .def_readwrite("y", &cc4::Vec2::y)
        .def("norm", &cc4::Vec2::norm)
        .def("__repr__", &vec_repr)
        .def("__getitem__", [](const cc4::Vec2& v, int i) {
            if (i == 0 || i == -2) return v.x;
            if (i == 1 || i == -1) return v.y;
            throw py::index_error();
        })
        .def("__len__", [](const cc4::Vec2&) { return 2; });
    py::implicitly_convertible<py::sequence, cc4::Vec2>();

    py::class_<cc4::Configuration>(m, "Configuration")
        .def(py::init<std::vector<double>, std::vector<cc4::Vec2>>(),
             py::arg("masses"), py::arg("positions"))
        .def_property_readonly("masses", &cc4::Configuration::masses)
        .def_property_readonly("positions", &cc4::Configuration::positions)
        .def("__len__", &cc4::Configuration::size)
        .def("total_mass", &cc4::Configuration::total_mass)
        .def("scale", &cc4::Configuration::scale)
        .def("translated", &cc4::Configuration::translated)
        .def("rotated", &cc4::Configuration::rotated)
        .def("scaled", &cc4::Configuration::scaled)
        .def("to_json", [](const cc4::Configuration& c) { return cc4::config_to_json(c); })
        .def_static("from_json", [](const std::string& text) {
            return cc4::config_from_json(text);
        });

    py::class_<cc4::CentralityReport>(m, "CentralityReport")
        .def_readonly("xi_fit", &cc4::CentralityReport::xi_fit)
        .def_readonly("max_pair_residual", &cc4::CentralityReport::max_pair_residual)
        .def_readonly("laura_andoyer_triple", &cc4::CentralityReport::laura_andoyer_triple)
        .def_readonly("inertia_vector", &cc4::CentralityReport::inertia_vector)
        .def_readonly("moment_of_inertia_at_origin",
                      &cc4::CentralityReport::moment_of_inertia_at_origin)
        .def_readonly("collinear_triples", &cc4::CentralityReport::collinear_triples);

    py::class_<cc4::AffineWeights>(m, "AffineWeights")
        .def_readonly("delta", &cc4::AffineWeights::delta);

    py::class_<cc4::FieldSample>(m, "FieldSample")
        .def_readonly("point", &cc4::FieldSample::point)
        .def_readonly("field", &cc4::FieldSample::field)
        .def_readonly("jacobian_det", &cc4::FieldSample::jacobian_det);

    py::class_<cc4::ZeroMultSolution>(m, "ZeroMultSolution")
        .def_readonly("x", &cc4::ZeroMultSolution::x)
        .def_readonly("y", &cc4::ZeroMultSolution::y)
        .def_readonly("u", &cc4::ZeroMultSolution::u)
        .def_readonly("v", &cc4::ZeroMultSolution::v)
        .def_readonly("u_prime", &cc4::ZeroMultSolution::u_prime)
        .def_readonly("v_prime", &cc4::ZeroMultSolution::v_prime)
        .def_readonly("configuration", &cc4::ZeroMultSolution::configuration)
        .def_readonly("caller_body", &cc4::ZeroMultSolution::caller_body)
        .def_readonly("report", &cc4::ZeroMultSolution::report);

    py::enum_<cc4::BandClass>(m, "BandClass")
        .value("Balanced", cc4::BandClass::Balanced)
        .value("SemiBalanced", cc4::BandClass::SemiBalanced)
        .value("Unbalanced", cc4::BandClass::Unbalanced);

    py::class_<cc4::TrapezoidSolution>(m, "TrapezoidSolution")
        .def_readonly("x", &cc4::TrapezoidSolution::x)
        .def_readonly("y", &cc4::TrapezoidSolution::y)
        .def_readonly("u", &cc4::TrapezoidSolution::u)
        .def_readonly("v", &cc4::TrapezoidSolution::v)
        .def_readonly("r23_sq", &cc4::TrapezoidSolution::r23_sq)
        .def_readonly("r14_sq", &cc4::TrapezoidSolution::r14_sq)
        .def_readonly("configuration", &cc4::TrapezoidSolution::configuration)
        .def_readonly("caller_body", &cc4::TrapezoidSolution::caller_body)
        .def_readonly("band_class", &cc4::TrapezoidSolution::band_class)
        .def_readonly("report", &cc4::TrapezoidSolution::report);

    py::class_<cc4::CircleFit>(m, "CircleFit")
        .def_readonly("center", &cc4::CircleFit::center)
        .def_readonly("radius", &cc4::CircleFit::radius)
        .def_readonly("max_deviation", &cc4::CircleFit::max_deviation);

    py::class_<cc4::GapReport>(m, "GapReport")
        .def_readonly("ordering", &cc4::GapReport::ordering)
        .def_readonly("arc_normalized", &cc4::GapReport::arc_normalized)
        .def_readonly("gap", &cc4::GapReport::gap);

    py::class_<cc4::Trajectory>(m, "Trajectory")
        .def_readonly("initial", &cc4::Trajectory::initial)
        .def_readonly("times", &cc4::Trajectory::times)
        .def_readonly("positions", &cc4::Trajectory::positions)
        .def_readonly("velocities", &cc4::Trajectory::velocities)
        .def_readonly("energy", &cc4::Trajectory::energy)
        .def_readonly("close_approach", &cc4::Trajectory::close_approach);

    py::class_<cc4::HomotheticFit>(m, "HomotheticFit")
        .def_readonly("alpha", &cc4::HomotheticFit::alpha)
        .def_readonly("shape_deviation", &cc4::HomotheticFit::shape_deviation)
        .def_readonly("max_shape_deviation", &cc4::HomotheticFit::max_shape_deviation)
        .def_readonly("fixed_center", &cc4::HomotheticFit::fixed_center)
        .def_readonly("fixed_center_residual", &cc4::HomotheticFit::fixed_center_residual);

    // core dynamics
    m.def("accelerations", &cc4::accelerations, py::arg("config"));
    m.def("potential", &cc4::potential, py::arg("config"));
    m.def("fit_multiplier", &cc4::fit_multiplier, py::arg("config"));
    m.def("laura_andoyer_triple", &cc4::laura_andoyer_triple, py::arg("config"));
    m.def("affine_weights", &cc4::affine_weights, py::arg("config"));
    m.def("moment_of_inertia", &cc4::moment_of_inertia, py::arg("config"), py::arg("a"));
    m.def("inertia_vector", &cc4::inertia_vector, py::arg("config"), py::arg("a"));

    // dipole field
    m.def("field_eval", &cc4::field_eval, py::arg("r"));
    m.def("jacobian_det", &cc4::jacobian_det, py::arg("r"));
    m.def("preimage", &cc4::preimage, py::arg("target"), py::arg("tol") = 1e-8);
    m.def("sample_field_grid", &cc4::sample_field_grid, py::arg("umin"),
          py::arg("umax"), py::arg("vmin"), py::arg("vmax"), py::arg("steps"));

    // vanishing multiplier
    m.def("curve_g_point", &cc4::curve_g_point, py::arg("u"), py::arg("x"), py::arg("y"));
    m.def("solve_zero", &cc4::solve_zero, py::arg("x"), py::arg("y"),
          "Returns the unique vanishing-multiplier parallelogram, or None when |x| == |y|.");
    m.def("build_parallelogram", &cc4::build_parallelogram, py::arg("u"),
          py::arg("v"), py::arg("u_prime"), py::arg("v_prime"), py::arg("x"),
          py::arg("y"));
    m.def("flat_degeneracy_gap", &cc4::flat_degeneracy_gap, py::arg("b"));

    // nonzero multiplier
    m.def("phi_map", &cc4::phi_map, py::arg("u"), py::arg("v"), py::arg("x"), py::arg("y"));
    m.def("solve_nonzero", &cc4::solve_nonzero, py::arg("x"), py::arg("y"),
          "Returns the two trapezoid solutions, the (u >= v) branch first.");
    m.def("build_trapezoid", &cc4::build_trapezoid, py::arg("u"), py::arg("v"),
          py::arg("x"), py::arg("y"));
    m.def("classify_bands", &cc4::classify_bands, py::arg("config"));

    // co-circular configurations
    m.def("circumcircle", &cc4::circumcircle, py::arg("p1"), py::arg("p2"), py::arg("p3"));
    m.def("cocircular_gap", &cc4::cocircular_gap, py::arg("config"),
          py::arg("tol_circle") = 1e-9);

    // dynamics
    m.def("integrate", &cc4::integrate, py::arg("config"), py::arg("t_end"),
          py::arg("tol") = 1e-10);
    m.def("homothetic_fit", &cc4::homothetic_fit, py::arg("traj"));
}
