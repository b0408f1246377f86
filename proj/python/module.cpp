#include "k3walls/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>

namespace py = pybind11;
using namespace k3walls;

namespace pybind11::detail {

template <>
struct type_caster<Integer> {
  PYBIND11_TYPE_CASTER(Integer, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    return value.set_str(py::str(src).cast<std::string>(), 10) == 0;
  }
  static handle cast(const Integer& x, return_value_policy, handle) {
    return PyLong_FromString(x.get_str().c_str(), nullptr, 10);
  }
};

template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!py::hasattr(src, "numerator") || !py::hasattr(src, "denominator")) return false;
    if (PyFloat_Check(src.ptr())) return false;
    Integer num, den;
    if (num.set_str(py::str(src.attr("numerator")).cast<std::string>(), 10) != 0) return false;
    if (den.set_str(py::str(src.attr("denominator")).cast<std::string>(), 10) != 0) return false;
    value = make_rational(num, den);
    return true;
  }
  static handle cast(const Rational& x, return_value_policy, handle) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    py::object num = py::reinterpret_steal<py::object>(PyLong_FromString(x.get_num().get_str().c_str(), nullptr, 10));
    py::object den = py::reinterpret_steal<py::object>(PyLong_FromString(x.get_den().get_str().c_str(), nullptr, 10));
    return fraction(num, den).release();
  }
};

// Mukai vectors cross the boundary as (r, c, s) tuples.
template <>
struct type_caster<MukaiVector> {
  PYBIND11_TYPE_CASTER(MukaiVector, const_name("tuple[int, int, int]"));

  bool load(handle src, bool convert) {
    if (!py::isinstance<py::sequence>(src) || py::isinstance<py::str>(src)) return false;
    auto seq = py::reinterpret_borrow<py::sequence>(src);
    if (seq.size() != 3) return false;
    make_caster<Integer> parts[3];
    for (int i = 0; i < 3; ++i)
      if (!parts[i].load(seq[i], convert)) return false;
    value = MukaiVector(cast_op<Integer>(parts[0]), cast_op<Integer>(parts[1]), cast_op<Integer>(parts[2]));
    return true;
  }
  static handle cast(const MukaiVector& u, return_value_policy policy, handle parent) {
    return py::make_tuple(py::reinterpret_steal<py::object>(make_caster<Integer>::cast(u.r, policy, parent)),
                          py::reinterpret_steal<py::object>(make_caster<Integer>::cast(u.c, policy, parent)),
                          py::reinterpret_steal<py::object>(make_caster<Integer>::cast(u.s, policy, parent)))
        .release();
  }
};

}  // namespace pybind11::detail

namespace {

py::dict wall_dict(const Wall& w) {
  py::dict d;
  d["witness"] = w.witness;
  if (w.is_vertical()) {
    d["shape"] = "vertical";
    d["beta"] = std::get<VerticalWall>(w.shape).beta;
  } else {
    d["shape"] = "semicircle";
    d["center"] = w.circle().center;
    d["radius2"] = w.circle().radius2;
  }
  return d;
}

py::tuple ray_tuple(const NSRay& r) { return py::make_tuple(r.ambient, py::make_tuple(r.a, r.b)); }

Side parse_side(const std::string& s) {
  if (s == "left") return Side::LeftOfVertical;
  if (s == "right") return Side::RightOfVertical;
  throw DomainError("side must be 'left' or 'right', got '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact wall-crossing computations for moduli of sheaves on K3 surfaces of Picard rank one.";

  py::register_exception<InconsistencyError>(m, "InconsistencyError", PyExc_RuntimeError);

  m.def("mukai_pairing", [](const Integer& h2, const MukaiVector& u, const MukaiVector& w) {
    return mukai_pairing(K3Config(h2), u, w);
  }, py::arg("h2"), py::arg("u"), py::arg("w"));

  m.def("euler_chi", [](const Integer& h2, const MukaiVector& u, const MukaiVector& w) {
    return euler_chi(K3Config(h2), u, w);
  }, py::arg("h2"), py::arg("u"), py::arg("w"));

  m.def("chern_to_mukai", [](const Integer& h2, const Integer& rank, const Integer& c1, const Integer& c2) {
    return chern_to_mukai(K3Config(h2), {rank, c1, c2});
  }, py::arg("h2"), py::arg("rank"), py::arg("c1"), py::arg("c2"));

  m.def("is_valid_point", [](const Integer& h2, const Rational& beta, const Rational& alpha2) {
    return is_valid_point(K3Config(h2), StabilityPoint(beta, alpha2));
  }, py::arg("h2"), py::arg("beta"), py::arg("alpha2"));

  m.def("find_holes_on_ray", [](const Integer& h2, const Rational& beta, unsigned limit) {
    py::list out;
    for (const auto& h : find_holes_on_ray(K3Config(h2), beta, limit)) out.append(py::make_tuple(h.delta, h.alpha2_threshold));
    return out;
  }, py::arg("h2"), py::arg("beta"), py::arg("limit") = kDefaultHoleSearchLimit);

  m.def("numerical_wall", [](const Integer& h2, const MukaiVector& v, const MukaiVector& w) -> py::object {
    auto wall = numerical_wall(K3Config(h2), v, w);
    if (!wall) return py::none();
    return wall_dict(*wall);
  }, py::arg("h2"), py::arg("v"), py::arg("w"));

  m.def("search_destabilizers", [](const Integer& h2, const MukaiVector& v, const Rational& beta0, const std::string& side,
                                   unsigned rank_bound) {
    const SearchResult r = search_destabilizers(K3Config(h2), v, SearchWindow{beta0, parse_side(side), rank_bound});
    py::list out;
    for (const auto& d : r.candidates) out.append(wall_dict(d.wall));
    return out;
  }, py::arg("h2"), py::arg("v"), py::arg("beta0"), py::arg("side"), py::arg("rank_bound") = 50);

  m.def("classify_wall", [](const Integer& h2, const MukaiVector& v, const MukaiVector& w) {
    const WallTypeRecord t = classify_wall(K3Config(h2), v, w);
    py::dict d;
    d["kind"] = to_string(t.kind);
    d["divisorial"] = to_string(t.divisorial);
    d["bouncing"] = t.bouncing;
    d["totally_semistable_flag"] = t.totally_semistable_flag;
    py::list witnesses;
    for (const auto& x : t.witnesses) witnesses.append(py::make_tuple(x.u, to_string(x.role), x.pairing));
    d["witnesses"] = witnesses;
    d["lattice_basis"] = py::make_tuple(t.lattice.basis[0], t.lattice.basis[1]);
    return d;
  }, py::arg("h2"), py::arg("v"), py::arg("w"));

  m.def("orthogonal_basis", [](const Integer& h2, const MukaiVector& v) {
    const NSBasis b = orthogonal_basis(K3Config(h2), v);
    return py::make_tuple(b.e1, b.e2, py::make_tuple(b.e1_sq, b.e2_sq));
  }, py::arg("h2"), py::arg("v"));

  m.def("wall_image", [](const Integer& h2, const MukaiVector& v, const MukaiVector& w) {
    return ray_tuple(wall_image(K3Config(h2), v, w));
  }, py::arg("h2"), py::arg("v"), py::arg("w"));

  m.def("compute_l", [](const Integer& h2, const MukaiVector& v, const Rational& beta, const Rational& alpha2) {
    return ray_tuple(compute_l(K3Config(h2), StabilityPoint(beta, alpha2), v));
  }, py::arg("h2"), py::arg("v"), py::arg("beta"), py::arg("alpha2"));

  m.def("reflect", [](const Integer& h2, const MukaiVector& d, const MukaiVector& u) {
    const Reflection r = reflect(K3Config(h2), d, u);
    return py::make_tuple(py::make_tuple(r.value[0], r.value[1], r.value[2]), r.integral);
  }, py::arg("h2"), py::arg("d"), py::arg("u"));

  m.def("parse_config", [](const std::string& text) { return serialize(parse_config(text)); }, py::arg("text"),
        "Validate a key=value configuration and return its canonical form.");

  m.def("run_report", [](const std::string& config_text, const std::string& annotations_text) {
    return render_report(run_pipeline(parse_config(config_text), parse_annotations(annotations_text)));
  }, py::arg("config_text"), py::arg("annotations_text") = "");

  m.def("render_figures", [](const std::string& config_text, const std::string& annotations_text) {
    const RunReport r = run_pipeline(parse_config(config_text), parse_annotations(annotations_text));
    return py::make_tuple(render_halfplane_svg(r), render_ns_cone_svg(r));
  }, py::arg("config_text"), py::arg("annotations_text") = "");
}
