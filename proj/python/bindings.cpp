#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bochner/error.hpp"
#include "bochner/features.hpp"
#include "bochner/gram.hpp"
#include "bochner/io.hpp"
#include "bochner/product.hpp"
#include "bochner/profiles.hpp"
#include "bochner/spectral.hpp"

namespace py = pybind11;
using namespace bochner;

namespace {

template <class T>
std::string dump(const T& value) {
  return Json(value).dump();
}

template <class T>
T load(const std::string& text) {
  try {
    return Json::parse(text).get<T>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

struct PyErrors {
  py::object error, validation, config, evaluation, numeric, rejection, npd, unbounded, hilbertian;
};

py::object make_error(py::module_& m, const char* name, py::handle base) {
  py::object cls = py::reinterpret_steal<py::object>(
      PyErr_NewException((std::string("bochner._core.") + name).c_str(), base.ptr(), nullptr));
  m.attr(name) = cls;
  return cls;
}

void raise(const py::object& cls, const std::exception& e, const py::dict& attrs = {}) {
  py::object instance = cls(e.what());
  for (auto item : attrs) instance.attr(item.first) = item.second;
  PyErr_SetObject(cls.ptr(), instance.ptr());
}

void register_errors(py::module_& m) {
  static PyErrors errs;
  errs.error = make_error(m, "Error", PyExc_RuntimeError);
  errs.validation = make_error(m, "ValidationError", errs.error);
  errs.config = make_error(m, "ConfigError", errs.validation);
  errs.evaluation = make_error(m, "EvaluationError", errs.validation);
  errs.numeric = make_error(m, "NumericError", errs.error);
  errs.rejection = make_error(m, "Rejection", errs.error);
  errs.npd = make_error(m, "NotPositiveDefinite", errs.rejection);
  errs.unbounded = make_error(m, "UnboundedMetric", errs.rejection);
  errs.hilbertian = make_error(m, "NotHilbertian", errs.rejection);

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NotPositiveDefinite& e) {
      const auto& d = e.details();
      raise(errs.npd, e,
            py::dict(py::arg("atom_zero") = d.atom_zero, py::arg("min_density") = d.min_density,
                     py::arg("at_frequency") = d.at_frequency, py::arg("threshold") = d.threshold));
    } catch (const UnboundedMetric& e) {
      raise(errs.unbounded, e, py::dict(py::arg("integral") = e.integral(), py::arg("bound") = e.bound()));
    } catch (const NotHilbertian& e) {
      raise(errs.hilbertian, e,
            py::dict(py::arg("kernel_eigenvalue") = e.kernel_eigenvalue(),
                     py::arg("witness_eigenvalue") = e.nd_eigenvalue(),
                     py::arg("witness_vector") = Eigen::VectorXd(e.nd_witness())));
    } catch (const Rejection& e) {
      raise(errs.rejection, e);
    } catch (const ConfigError& e) {
      raise(errs.config, e);
    } catch (const EvaluationError& e) {
      raise(errs.evaluation, e, py::dict(py::arg("t") = e.t()));
    } catch (const ValidationError& e) {
      raise(errs.validation, e);
    } catch (const NumericError& e) {
      raise(errs.numeric, e);
    } catch (const Error& e) {
      raise(errs.error, e);
    }
  });
}

template <class P>
void bind_profile(py::module_& m, const char* name) {
  py::class_<P>(m, name)
      .def(py::init<typename P::Fn, Descriptor>(), py::arg("function"),
           py::arg("descriptor") = Descriptor{"python", {}})
      .def("__call__", &P::operator(), py::arg("t"))
      .def("at_zero", &P::at_zero)
      .def_property_readonly("descriptor", &P::descriptor);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kernels, Hilbertian metrics and spectral measures on the real line";
  register_errors(m);

  // Profiles.
  py::class_<Descriptor>(m, "Descriptor")
      .def(py::init<std::string, std::map<std::string, double>>(), py::arg("name"),
           py::arg("params") = std::map<std::string, double>{})
      .def_readwrite("name", &Descriptor::name)
      .def_readwrite("params", &Descriptor::params)
      .def("__eq__", [](const Descriptor& a, const Descriptor& b) { return a == b; })
      .def("to_json", &dump<Descriptor>)
      .def_static("from_json", &load<Descriptor>);
  bind_profile<KernelProfile>(m, "KernelProfile");
  bind_profile<MetricProfile>(m, "MetricProfile");
  py::class_<BivariateKernel>(m, "BivariateKernel")
      .def(py::init<BivariateKernel::Fn>())
      .def("__call__", &BivariateKernel::operator(), py::arg("x"), py::arg("y"));
  py::class_<Probe>(m, "Probe")
      .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("shift"))
      .def_readwrite("x", &Probe::x)
      .def_readwrite("y", &Probe::y)
      .def_readwrite("shift", &Probe::shift);
  py::class_<InvarianceReport>(m, "InvarianceReport")
      .def_readonly("invariant", &InvarianceReport::invariant)
      .def_readonly("worst_violation", &InvarianceReport::worst_violation)
      .def_readonly("worst_probe", &InvarianceReport::worst_probe);

  m.def("zoo_names", &zoo_names);
  m.def("zoo_defaults", &zoo_defaults, py::arg("name"));
  m.def("zoo", py::overload_cast<const std::string&, const std::map<std::string, double>&>(&zoo),
        py::arg("name"), py::arg("params") = std::map<std::string, double>{});
  m.def("sampled_kernel", &sampled_kernel, py::arg("t"), py::arg("values"));
  m.def("metric_from_kernel", &metric_from_kernel, py::arg("k"));
  m.def("kernel_from_metric", &kernel_from_metric, py::arg("d2"), py::arg("base") = 0.0);
  m.def("lift", py::overload_cast<const KernelProfile&>(&lift), py::arg("k"));
  m.def("lift", py::overload_cast<const MetricProfile&>(&lift), py::arg("d2"));
  m.def("probe_grid", &probe_grid, py::arg("lo") = -10.0, py::arg("hi") = 10.0, py::arg("n") = 201);
  m.def("default_probes", py::overload_cast<>(&default_probes));
  m.def(
      "check_translation_invariance",
      [](const BivariateKernel& k, const std::vector<Probe>& probes, double tol) {
        return check_translation_invariance(k, probes, tol);
      },
      py::arg("kernel"), py::arg("probes"), py::arg("tol") = 1e-9);

  // Gram matrices.
  py::class_<DefinitenessVerdict>(m, "DefinitenessVerdict")
      .def_readonly("holds", &DefinitenessVerdict::holds)
      .def_readonly("witness_eigenvalue", &DefinitenessVerdict::witness_eigenvalue)
      .def_readonly("witness_vector", &DefinitenessVerdict::witness_vector)
      .def_readonly("threshold", &DefinitenessVerdict::threshold)
      .def("__bool__", [](const DefinitenessVerdict& v) { return v.holds; });
  py::class_<EmbeddingResult>(m, "EmbeddingResult")
      .def_readonly("coordinates", &EmbeddingResult::coordinates)
      .def_readonly("rank", &EmbeddingResult::rank)
      .def_readonly("residual", &EmbeddingResult::residual);

  m.def(
      "build_gram",
      [](const KernelProfile& k, const std::vector<double>& points) {
        return build_gram(k, points).entries();
      },
      py::arg("k"), py::arg("points"));
  m.def(
      "is_positive_definite",
      [](const Eigen::MatrixXd& g, double tol) { return is_positive_definite(GramMatrix(g), tol); },
      py::arg("gram"), py::arg("tol") = kDefaultTolerance);
  m.def(
      "is_negative_definite",
      [](const Eigen::MatrixXd& n, double tol) {
        return is_negative_definite(SymmetricKernelMatrix(n), tol);
      },
      py::arg("matrix"), py::arg("tol") = kDefaultTolerance);
  m.def(
      "nd_to_psd",
      [](const Eigen::MatrixXd& n, Eigen::Index base) {
        return nd_to_psd(SymmetricKernelMatrix(n), base).entries();
      },
      py::arg("matrix"), py::arg("base_index"));
  m.def(
      "euclidean_embedding",
      [](const Eigen::MatrixXd& d2, double tol) {
        return euclidean_embedding(SymmetricKernelMatrix(d2), tol);
      },
      py::arg("d2"), py::arg("tol") = kDefaultTolerance);

  // Spectral measures.
  py::class_<Atom>(m, "Atom")
      .def(py::init<double, double>(), py::arg("loc"), py::arg("mass"))
      .def_readwrite("loc", &Atom::loc)
      .def_readwrite("mass", &Atom::mass)
      .def("__eq__", [](const Atom& a, const Atom& b) { return a == b; })
      .def("__repr__", [](const Atom& a) {
        return "Atom(loc=" + format_number(a.loc) + ", mass=" + format_number(a.mass) + ")";
      });
  py::class_<BinnedDensity>(m, "BinnedDensity")
      .def(py::init<std::vector<double>, std::vector<double>>(),
           py::arg("edges") = std::vector<double>{}, py::arg("values") = std::vector<double>{})
      .def_readwrite("edges", &BinnedDensity::edges)
      .def_readwrite("values", &BinnedDensity::values);
  py::class_<SpectralMeasure>(m, "SpectralMeasure")
      .def(py::init<std::vector<Atom>, BinnedDensity>(), py::arg("atoms") = std::vector<Atom>{},
           py::arg("density") = BinnedDensity{})
      .def_readwrite("atoms", &SpectralMeasure::atoms)
      .def_readwrite("density", &SpectralMeasure::density)
      .def("validate", &SpectralMeasure::validate)
      .def("atom_at_origin", &SpectralMeasure::atom_at_origin)
      .def("total_mass", &SpectralMeasure::total_mass)
      .def("density_at", &SpectralMeasure::density_at, py::arg("tau"))
      .def("to_json", &dump<SpectralMeasure>)
      .def_static("from_json", &load<SpectralMeasure>);
  py::enum_<GammaBasis>(m, "GammaBasis")
      .value("flat", GammaBasis::flat)
      .value("quadratic", GammaBasis::quadratic);
  py::class_<GammaMeasure>(m, "GammaMeasure")
      .def(py::init<std::vector<Atom>, BinnedDensity, GammaBasis>(),
           py::arg("atoms") = std::vector<Atom>{}, py::arg("density") = BinnedDensity{},
           py::arg("basis") = GammaBasis::flat)
      .def_readwrite("atoms", &GammaMeasure::atoms)
      .def_readwrite("density", &GammaMeasure::density)
      .def_readwrite("basis", &GammaMeasure::basis)
      .def("validate", &GammaMeasure::validate)
      .def("to_json", &dump<GammaMeasure>)
      .def_static("from_json", &load<GammaMeasure>);
  py::class_<GammaConversion>(m, "GammaConversion")
      .def_readonly("gamma", &GammaConversion::gamma)
      .def_readonly("atom_zero", &GammaConversion::atom_zero);
  py::class_<InversionConfig>(m, "InversionConfig")
      .def(py::init([](double t_max, std::size_t n_samples, std::size_t bins, double freq_max,
                       double clamp_tol) {
             return InversionConfig{t_max, n_samples, bins, freq_max, clamp_tol};
           }),
           py::arg("t_max") = InversionConfig{}.t_max, py::arg("n_samples") = InversionConfig{}.n_samples,
           py::arg("bins") = InversionConfig{}.bins, py::arg("freq_max") = InversionConfig{}.freq_max,
           py::arg("clamp_tol") = InversionConfig{}.clamp_tol)
      .def_readwrite("t_max", &InversionConfig::t_max)
      .def_readwrite("n_samples", &InversionConfig::n_samples)
      .def_readwrite("bins", &InversionConfig::bins)
      .def_readwrite("freq_max", &InversionConfig::freq_max)
      .def_readwrite("clamp_tol", &InversionConfig::clamp_tol);
  py::class_<InversionResult>(m, "InversionResult")
      .def_readonly("measure", &InversionResult::measure)
      .def_readonly("atom_zero", &InversionResult::atom_zero)
      .def_readonly("density_at_origin", &InversionResult::density_at_origin)
      .def_readonly("max_clamped", &InversionResult::max_clamped)
      .def_readonly("clamped_mass", &InversionResult::clamped_mass)
      .def_readonly("residual", &InversionResult::residual);

  m.def("bochner_synthesis", &bochner_synthesis, py::arg("mu"), py::arg("t"));
  m.def("screw_synthesis", &screw_synthesis, py::arg("gamma"), py::arg("t"));
  m.def("gamma_from_spectral", &gamma_from_spectral, py::arg("mu"));
  m.def("spectral_from_gamma", &spectral_from_gamma, py::arg("gamma"), py::arg("k0"));
  m.def("int_bound_integral", &int_bound_integral, py::arg("gamma"));
  m.def("accumulate", &accumulate, py::arg("mu"), py::arg("x"));
  m.def("discretize_density", &discretize_density, py::arg("density"), py::arg("freq_max"),
        py::arg("bins"));
  m.def("atom_at_zero", &atom_at_zero, py::arg("k"), py::arg("window") = 200.0, py::arg("step") = 0.01);
  m.def("bochner_inversion", &bochner_inversion, py::arg("k"), py::arg("config") = InversionConfig{});

  // Separable kernels.
  py::class_<ProductSpectralMeasure>(m, "ProductSpectralMeasure")
      .def(py::init<std::vector<SpectralMeasure>>(), py::arg("factors"))
      .def_readwrite("factors", &ProductSpectralMeasure::factors)
      .def("total_mass", &ProductSpectralMeasure::total_mass)
      .def("to_json", &dump<ProductSpectralMeasure>)
      .def_static("from_json", &load<ProductSpectralMeasure>);
  m.def(
      "product_synthesis",
      [](const ProductSpectralMeasure& mu, const std::vector<double>& t) { return product_synthesis(mu, t); },
      py::arg("measure"), py::arg("t"));
  m.def(
      "separable_eval",
      [](const std::vector<KernelProfile>& factors, const std::vector<double>& x, const std::vector<double>& y) {
        return separable_eval(SeparableKernel{factors}, x, y);
      },
      py::arg("factors"), py::arg("x"), py::arg("y"));
  m.def(
      "invert_separable",
      [](const std::vector<KernelProfile>& factors, const InversionConfig& config) {
        return invert_separable(SeparableKernel{factors}, config);
      },
      py::arg("factors"), py::arg("config") = InversionConfig{});

  // Random features.
  py::class_<FrequencySample>(m, "FrequencySample")
      .def_readonly("frequencies", &FrequencySample::frequencies)
      .def_readonly("phases", &FrequencySample::phases)
      .def_readonly("total_mass", &FrequencySample::total_mass)
      .def_readonly("seed", &FrequencySample::seed)
      .def("__len__", &FrequencySample::size)
      .def("__eq__", [](const FrequencySample& a, const FrequencySample& b) { return a == b; })
      .def("to_json", &dump<FrequencySample>)
      .def_static("from_json", &load<FrequencySample>);
  m.def("sample_frequencies", &sample_frequencies, py::arg("mu"), py::arg("m"), py::arg("seed"));
  m.def("feature_map", &feature_map, py::arg("sample"), py::arg("x"));
  m.def("approximate_kernel", &approximate_kernel, py::arg("sample"), py::arg("x"), py::arg("y"));
}
