#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tracefn/cli.hpp"
#include "tracefn/satotate.hpp"
#include "tracefn/sums.hpp"
#include "tracefn/transforms.hpp"

namespace py = pybind11;
using namespace tracefn;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

TraceFunction from_array(const CArray& a) {
  if (a.ndim() != 1) throw InvalidArgument("expected a one-dimensional array");
  const auto n = static_cast<u64>(a.shape(0));
  std::vector<cplx> v(a.data(), a.data() + n);
  return TraceFunction(make_prime_modulus(n), std::move(v), TraceMeta{});
}

CArray to_array(std::span<const cplx> v) {
  CArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

CArray to_array(const TraceFunction& k) { return to_array(k.values()); }

SpectralMeasure measure_by_name(const std::string& name) {
  if (name == "sato_tate") return SpectralMeasure::sato_tate();
  if (name == "uniform_interval") return SpectralMeasure::uniform_interval();
  if (name == "uniform_circle") return SpectralMeasure::uniform_circle();
  throw InvalidArgument("unknown measure '" + name + "'");
}

AngleDomain domain_by_name(const std::string& name) {
  if (name == "nonzero") return AngleDomain::nonzero();
  if (name == "all") return AngleDomain::all();
  if (name == "squares") return AngleDomain::squares();
  throw InvalidArgument("unknown domain '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Trace functions over prime fields";

  static py::exception<Error> base(m, "TracefnError");
  static py::exception<CapacityError> cap(m, "CapacityError", base.ptr());
  static py::exception<InvalidModulus> inv_mod(m, "InvalidModulus", base.ptr());
  static py::exception<InvalidArgument> inv_arg(m, "InvalidArgument", base.ptr());
  static py::exception<DomainViolation> dom(m, "DomainViolation", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CapacityError& e) {
      py::set_error(cap, e.what());
    } catch (const InvalidModulus& e) {
      py::set_error(inv_mod, e.what());
    } catch (const InvalidArgument& e) {
      py::set_error(inv_arg, e.what());
    } catch (const DomainViolation& e) {
      py::set_error(dom, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def("kloosterman", [](u64 q, int k) { return to_array(hyper_kloosterman_all(make_prime_modulus(q), k)); },
        py::arg("q"), py::arg("k") = 2, "Kl_k(a; q) for a = 0..q-1 (0 at a = 0)");
  m.def("salie", [](u64 q, bool real) {
        const PrimeModulus p = make_prime_modulus(q);
        return to_array(real ? salie_real_family(p) : salie_family(p));
      },
      py::arg("q"), py::arg("real") = false);
  m.def("legendre", [](u64 q) { return to_array(legendre_character(make_prime_modulus(q))); }, py::arg("q"));
  m.def("birch", [](u64 q, i64 a, i64 b) { return birch_value(make_prime_modulus(q), a, b); }, py::arg("q"),
        py::arg("a"), py::arg("b"));

  m.def("fourier", [](const CArray& v, int sign) { return to_array(fourier(from_array(v), sign)); }, py::arg("values"),
        py::arg("sign") = -1);
  m.def("mult_convolution", [](const CArray& a, const CArray& b) {
        return to_array(mult_convolution(from_array(a), from_array(b)));
      });
  m.def("mellin", [](const CArray& v) { return to_array(mellin(from_array(v)).values); }, py::arg("values"));
  m.def("voronoi", [](const CArray& v) { return to_array(voronoi_transform(from_array(v))); }, py::arg("values"));
  m.def("gauss_sums", [](u64 q, i64 a) { return to_array(gauss_sums_at(make_prime_modulus(q), a)); }, py::arg("q"),
        py::arg("a") = 1);

  m.def("interval_max", [](const CArray& v) {
        const auto r = pv_extremal_scan(from_array(v));
        return py::make_tuple(r.max_abs, r.a, r.b);
      },
      py::arg("values"), "(max |sum_{a<=n<=b} K(n)|, a, b) over all intervals");
  m.def("moment", [](const CArray& v, int l) { return moment(from_array(v), l); }, py::arg("values"), py::arg("l"));
  m.def("kloosterman_fourth_moment", [](u64 q) {
        return py::make_tuple(kloosterman_fourth_moment_exact(q), kloosterman_fourth_moment_closed_form(q));
      },
      py::arg("q"));

  m.def("angles", [](const CArray& v, const std::string& domain) {
        return extract_angles(from_array(v), domain_by_name(domain)).angles;
      },
      py::arg("values"), py::arg("domain") = "nonzero");
  m.def("ks_distance", [](std::vector<double> angles, const std::string& measure) {
        AngleSample s;
        s.angles = std::move(angles);
        return ks_distance(s, measure_by_name(measure));
      },
      py::arg("angles"), py::arg("measure") = "sato_tate");

  m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line tool in-process; returns (exit_code, stdout, stderr)");
}
