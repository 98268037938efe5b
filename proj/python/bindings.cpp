#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "altdec/bitcodec.hpp"
#include "altdec/errors.hpp"
#include "altdec/experiment.hpp"
#include "altdec/frames.hpp"
#include "altdec/reconstruction.hpp"
#include "altdec/sigma_delta.hpp"
#include "altdec/verify.hpp"

namespace py = pybind11;
using namespace altdec;

namespace {

std::vector<std::vector<Complex>> to_rows(const ComplexMatrix& a) {
  std::vector<std::vector<Complex>> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = a.row(i);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sigma-delta quantization with alternative decimation";

  static py::exception<Error> error(m, "AltdecError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("harmonic_frame", [](int mm, std::vector<long long> freqs) {
    return to_rows(harmonic_frame({mm, static_cast<int>(freqs.size()), std::move(freqs)}).E);
  }, py::arg("m"), py::arg("freqs"), "Analysis operator rows of a harmonic frame.");

  m.def("sigma_delta", [](const ComplexVector& y, int r, int L, double delta, bool complex_mode) {
    const auto run = sigma_delta(y, r, Alphabet{L, delta, complex_mode});
    py::dict d;
    d["q"] = run.q;
    d["u"] = run.u;
    d["u_inf"] = run.u_inf;
    d["overloaded"] = run.overloaded;
    return d;
  }, py::arg("y"), py::arg("r") = 1, py::arg("L") = 100, py::arg("delta") = 0.5, py::arg("complex_mode") = true);

  m.def("decimate", [](const ComplexVector& q, int rho, int r, bool canonical) {
    return decimate(q, make_plan(static_cast<int>(q.size()), rho, r, canonical ? Variant::canonical : Variant::alternative));
  }, py::arg("q"), py::arg("rho"), py::arg("r") = 1, py::arg("canonical") = false);

  m.def("scaling_entry", &scaling_entry, py::arg("lam"), py::arg("m"), py::arg("rho"));

  m.def("encode", [](const ComplexVector& v, int mm, int rho, int r, int L, double delta, bool complex_mode) {
    const auto bytes = encode(v, make_plan(mm, rho, r), Alphabet{L, delta, complex_mode});
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  }, py::arg("values"), py::arg("m"), py::arg("rho"), py::arg("r") = 1, py::arg("L") = 100, py::arg("delta") = 0.5,
        py::arg("complex_mode") = true);

  m.def("decode", [](const py::bytes& data) {
    const std::string raw = data;
    const auto block = decode(std::vector<std::uint8_t>(raw.begin(), raw.end()));
    py::dict d;
    d["m"] = block.plan.m;
    d["rho"] = block.plan.rho;
    d["r"] = block.plan.r;
    d["L"] = block.alphabet.L;
    d["delta"] = block.alphabet.delta;
    d["complex_mode"] = block.alphabet.complex_mode;
    d["values"] = block.values;
    return d;
  }, py::arg("data"));

  m.def("run_experiment", [](const std::string& config_json, int jobs, bool deterministic) {
    const auto cfg = config_json.empty() ? preset("desk") : parse_config(config_json);
    std::ostringstream os;
    {
      py::gil_scoped_release release;
      write_records_csv(os, run_experiment(cfg, {jobs, deterministic}));
    }
    return os.str();
  }, py::arg("config_json") = "", py::arg("jobs") = 1, py::arg("deterministic") = true,
        "Runs the experiment and returns the records as CSV text.");

  m.def("preset", [](const std::string& name) { return config_to_json(preset(name)); }, py::arg("name"));

  m.def("fit_slopes", [](const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    write_slopes_csv(out, fit_slopes(read_records_csv(in)));
    return out.str();
  }, py::arg("csv"));

  m.def("verify_all", [](int max_m) { return verify_all(max_m).to_json(); }, py::arg("max_m") = 24,
        "Identity report as JSON text.");
}
