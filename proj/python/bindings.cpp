#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ribbon/bounds.hpp"
#include "ribbon/catalog.hpp"
#include "ribbon/error.hpp"
#include "ribbon/io.hpp"
#include "ribbon/optimize.hpp"
#include "ribbon/render.hpp"
#include "ribbon/verify.hpp"

namespace py = pybind11;
using namespace ribbon;

namespace {

py::dict violation_dict(const Violation& v) {
  py::dict out;
  out["kind"] = to_string(v.kind);
  out["location"] = py::make_tuple(v.location.x, v.location.y);
  out["measurement"] = v.measurement;
  out["detail"] = v.detail;
  return out;
}

py::dict entry_dict(const CatalogEntry& e) {
  py::dict out;
  out["name"] = e.name;
  out["diagram"] = serialize_diagram(e.diagram);
  if (e.expected_length)
    out["expected_length"] = py::make_tuple(e.expected_length->a, e.expected_length->b);
  else
    out["expected_length"] = py::none();
  out["status"] = to_string(e.status);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Disk diagrams of knots: length, optimisation and checks";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&]() { return py::object(py::exception<Error>(m, "RibbonError", PyExc_ValueError)); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& type = error_type.get_stored();
      py::object exc = type(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  m.def("catalog_names", &catalog_names);
  m.def("catalog_entry", [](const std::string& name) { return entry_dict(catalog_get(name)); });

  m.def("normalize", [](const std::string& text) { return serialize_diagram(parse_diagram(text)); });

  m.def("length", [](const std::string& text) { return total_length(parse_diagram(text)); });
  m.def("ribbonlength", [](const std::string& text) { return ribbonlength(parse_diagram(text)); });
  m.def("closed_form", [](double v) -> std::optional<std::string> {
    if (auto e = detect_closed_form(v)) return format_closed_form(*e);
    return std::nullopt;
  });

  m.def("gradient", [](const std::string& text) {
    const Diagram d = parse_diagram(text);
    const auto g = length_gradient(d);
    py::dict out;
    for (std::size_t i = 0; i < g.size(); ++i) out[py::str(d.config[i].id)] = py::make_tuple(g[i].x, g[i].y);
    return out;
  });

  m.def(
      "minimize",
      [](const std::string& text, double tol, long max_iters, double step, std::vector<std::string> fixed) {
        Diagram d = parse_diagram(text);
        OptimizeSettings s;
        s.grad_tolerance = tol;
        s.max_iterations = max_iters;
        s.step_size = step;
        s.fixed_disks = {fixed.begin(), fixed.end()};
        OptimizeResult r;
        {
          py::gil_scoped_release release;
          r = minimize(d, s);
        }
        d.config = r.final_config;
        py::dict out;
        out["diagram"] = serialize_diagram(d);
        out["length"] = r.final_length;
        out["iterations"] = r.iterations;
        out["converged"] = r.converged;
        out["kkt_residual"] = r.kkt_residual;
        out["history"] = r.length_history;
        out["active_contacts"] = r.active_contacts;
        return out;
      },
      py::arg("diagram"), py::arg("tol") = 1e-9, py::arg("max_iters") = 100000L, py::arg("step") = 0.05,
      py::arg("fixed") = std::vector<std::string>{});

  m.def(
      "certify",
      [](const std::string& text, double tol) {
        const auto r = certify_equilibrium(parse_diagram(text), tol);
        py::dict out;
        out["critical"] = r.is_critical;
        out["residual"] = r.residual;
        py::list mult;
        for (const auto& c : r.multipliers) mult.append(py::make_tuple(c.disk_a, c.disk_b, c.value));
        out["multipliers"] = mult;
        return out;
      },
      py::arg("diagram"), py::arg("tol") = 1e-6);

  m.def(
      "check",
      [](const std::string& text, double sample_step, double grid_step) {
        CheckSettings s;
        s.sample_step = sample_step;
        s.grid_step = grid_step;
        const auto r = full_report(parse_diagram(text), s);
        py::dict out;
        out["status"] = to_string(r.status);
        out["crossings"] = r.crossing_count;
        out["separating_crossings"] = r.separating_count;
        out["regions"] = r.bounded_region_estimate;
        out["predicted_regions"] = r.predicted_regions;
        out["domains"] = r.domain_count;
        out["merged_touches"] = r.merged_touches;
        py::list v;
        for (const auto& x : r.violations) v.append(violation_dict(x));
        out["violations"] = v;
        return out;
      },
      py::arg("diagram"), py::arg("sample_step") = 0.0, py::arg("grid_step") = 0.05);

  m.def("crossing_bound", [](double length) {
    const auto b = crossing_bound(length);
    py::dict out;
    out["length_used"] = b.length_used;
    out["raw_bound"] = b.raw_bound;
    out["crossing_bound"] = b.crossing_bound;
    return out;
  });

  m.def(
      "render_svg",
      [](const std::string& text, double scale, bool ribbon, bool disks, bool violations) {
        const Diagram d = parse_diagram(text);
        RenderOptions o;
        o.scale = scale;
        o.draw_ribbon = ribbon;
        o.draw_disks = disks;
        o.highlight_violations = violations;
        if (!violations) return render_svg(d, o);
        const auto report = full_report(d);
        return render_svg(d, o, &report);
      },
      py::arg("diagram"), py::arg("scale") = 40.0, py::arg("ribbon") = false, py::arg("disks") = false,
      py::arg("violations") = false);
}
