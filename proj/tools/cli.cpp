#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bochner/error.hpp"
#include "bochner/features.hpp"
#include "bochner/gram.hpp"
#include "bochner/io.hpp"
#include "bochner/product.hpp"
#include "bochner/profiles.hpp"
#include "bochner/spectral.hpp"

namespace bochner::cli {

namespace {

struct ProfileArgs {
  std::string kernel;
  std::vector<std::string> params;
  std::string profile;
  std::string samples;
};

struct GridArgs {
  double lo = -10.0;
  double hi = 10.0;
  std::size_t n = 201;

  std::vector<double> grid() const { return probe_grid(lo, hi, n); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

template <class T>
T read_json_as(const std::string& path) {
  try {
    return read_json(path).get<T>();
  } catch (const Json::exception& e) {
    throw ValidationError("'" + path + "' has the wrong shape: " + e.what());
  }
}

Eigen::MatrixXd read_matrix(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_matrix_csv(in);
}

// Writes `text` to `path`, or to `out` when path is empty.
void emit(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw ValidationError("cannot write '" + path + "'");
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void add_profile_options(CLI::App* sub, ProfileArgs& a) {
  sub->add_option("--kernel", a.kernel, "Zoo kernel name (gaussian, laplacian, cauchy, cosine, constant)");
  sub->add_option("--param", a.params, "Kernel parameter as key=value (repeatable)");
  sub->add_option("--profile", a.profile, "Profile descriptor JSON file");
  sub->add_option("--samples", a.samples, "Sampled profile CSV with columns t,value");
}

void add_grid_options(CLI::App* sub, GridArgs& g) {
  sub->add_option("--grid-min", g.lo, "Grid start")->capture_default_str();
  sub->add_option("--grid-max", g.hi, "Grid end")->capture_default_str();
  sub->add_option("--grid-n", g.n, "Grid points")->capture_default_str()->check(CLI::PositiveNumber);
}

KernelProfile load_profile(const ProfileArgs& a) {
  const int sources = !a.kernel.empty() + !a.profile.empty() + !a.samples.empty();
  if (sources != 1) {
    throw ValidationError("give exactly one of --kernel, --profile or --samples");
  }
  if (!a.samples.empty()) {
    std::istringstream in(read_file(a.samples));
    auto [t, v] = read_profile_csv(in);
    return sampled_kernel(std::move(t), std::move(v));
  }
  if (!a.profile.empty()) return zoo(read_json_as<Descriptor>(a.profile));

  std::map<std::string, double> params;
  for (const auto& p : a.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw ConfigError("--param expects key=value, got '" + p + "'");
    try {
      params[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("--param value is not a number: '" + p + "'");
    }
  }
  return zoo(a.kernel, params);
}

template <class P>
std::string profile_csv(const P& f, const GridArgs& g) {
  const auto grid = g.grid();
  std::ostringstream ss;
  write_profile_csv(ss, grid, sample(f, grid));
  return ss.str();
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::ostringstream ss;
  write_matrix_csv(ss, m);
  return ss.str();
}

// Subcommand state. Options bind into these members; handlers read them.
struct State {
  std::string output;
  ProfileArgs profile;
  GridArgs grid;
  std::string matrix;
  std::string points;
  std::string input;
  std::string pairs;
  double tol = kDefaultTolerance;
  Eigen::Index base = 0;
  double k0 = 0.0;
  bool have_k0 = false;
  InversionConfig inversion;
  double window = 200.0;
  double step = 0.01;
  std::size_t features = 4096;
  std::uint64_t seed = 0;
};

int cmd_zoo_list(std::ostream& out) {
  Json list = Json::array();
  for (const auto& name : zoo_names()) list.push_back(Descriptor{name, zoo_defaults(name)});
  out << dump(list);
  return kOk;
}

int cmd_gram(const State& s, std::ostream& out) {
  const auto k = load_profile(s.profile);
  std::istringstream in(read_file(s.points));
  const auto points = read_values_csv(in);
  emit(s.output, out, matrix_csv(build_gram(k, points).entries()));
  return kOk;
}

int cmd_check(const State& s, std::ostream& out, bool psd) {
  const auto m = read_matrix(s.matrix);
  const auto verdict = psd ? is_positive_definite(GramMatrix(m), s.tol)
                           : is_negative_definite(SymmetricKernelMatrix(m), s.tol);
  Json j = verdict_json(verdict, psd ? "psd" : "nd");
  if (!verdict.holds) j["error"] = psd ? "NotPositiveDefinite" : "NotNegativeDefinite";
  out << dump(j);
  return verdict.holds ? kOk : kRejected;
}

int cmd_nd_to_psd(const State& s, std::ostream& out) {
  const auto k = nd_to_psd(SymmetricKernelMatrix(read_matrix(s.matrix)), s.base);
  emit(s.output, out, matrix_csv(k.entries()));
  return kOk;
}

int cmd_embed(const State& s, std::ostream& out) {
  const auto result = euclidean_embedding(SymmetricKernelMatrix(read_matrix(s.matrix)), s.tol);
  if (s.output.empty()) {
    out << matrix_csv(result.coordinates);
  } else {
    emit(s.output, out, matrix_csv(result.coordinates));
    out << dump(Json{{"rank", result.rank}, {"residual", result.residual}});
  }
  return kOk;
}

int cmd_invert(State s, std::ostream& out, const CLI::App* sub) {
  if (!s.profile.samples.empty() && sub->count("--t-max") == 0) {
    std::istringstream in(read_file(s.profile.samples));
    const auto t = read_profile_csv(in).first;
    double reach = 0.0;
    for (double x : t) reach = std::max(reach, std::abs(x));
    s.inversion.t_max = std::min(s.inversion.t_max, reach);
  }
  const auto k = load_profile(s.profile);
  const auto result = bochner_inversion(k, s.inversion);
  const Json report{{"k0", k.at_zero()},
                    {"atom_zero", result.atom_zero},
                    {"density_at_origin", result.density_at_origin},
                    {"total_mass", result.measure.total_mass()},
                    {"max_clamped", result.max_clamped},
                    {"clamped_mass", result.clamped_mass},
                    {"residual", result.residual}};
  if (s.output.empty()) {
    out << dump(Json{{"measure", result.measure}, {"report", report}});
  } else {
    emit(s.output, out, dump(Json(result.measure)));
    out << dump(report);
  }
  return kOk;
}

int cmd_synth(const State& s, std::ostream& out) {
  const auto mu = read_json_as<SpectralMeasure>(s.input);
  mu.validate();
  const auto grid = s.grid.grid();
  std::vector<double> values;
  for (double t : grid) values.push_back(bochner_synthesis(mu, t));
  std::ostringstream ss;
  write_profile_csv(ss, grid, values);
  emit(s.output, out, ss.str());
  return kOk;
}

int cmd_screw(const State& s, std::ostream& out) {
  const auto gamma = read_json_as<GammaMeasure>(s.input);
  gamma.validate();
  const auto grid = s.grid.grid();
  std::vector<double> values;
  for (double t : grid) values.push_back(screw_synthesis(gamma, t));
  std::ostringstream ss;
  write_profile_csv(ss, grid, values);
  emit(s.output, out, ss.str());
  return kOk;
}

int cmd_gamma(const State& s, std::ostream& out) {
  if (s.have_k0) {
    const auto mu = spectral_from_gamma(read_json_as<GammaMeasure>(s.input), s.k0);
    emit(s.output, out, dump(Json(mu)));
    return kOk;
  }
  const auto conv = gamma_from_spectral(read_json_as<SpectralMeasure>(s.input));
  Json j = conv.gamma;
  j["atom_zero"] = conv.atom_zero;
  emit(s.output, out, dump(j));
  return kOk;
}

int cmd_bound_check(const State& s, std::ostream& out) {
  const auto gamma = read_json_as<GammaMeasure>(s.input);
  gamma.validate();
  if (!std::isfinite(s.k0) || s.k0 < 0.0) throw ValidationError("--k0 must be finite and >= 0");
  const double integral = int_bound_integral(gamma);
  const double bound = 4.0 * s.k0;
  const bool ok = integral <= bound * (1.0 + 1e-12);
  const bool tight = std::abs(integral - bound) <= 1e-10 * std::max(bound, 1e-300);
  Json j{{"integral", integral}, {"bound", bound}, {"ok", ok}, {"tight", tight}};
  if (!std::isfinite(integral)) j["integral"] = "inf";
  if (!ok) j["error"] = "UnboundedMetric";
  out << j.dump() << "\n";
  return ok ? kOk : kRejected;
}

int cmd_atom0(const State& s, std::ostream& out) {
  const auto k = load_profile(s.profile);
  const double atom = atom_at_zero(k, s.window, s.step);
  out << dump(Json{{"atom_zero", atom}, {"window", s.window}, {"step", s.step}});
  return kOk;
}

int cmd_rff(const State& s, std::ostream& out) {
  const auto mu = read_json_as<SpectralMeasure>(s.input);
  const auto sample = sample_frequencies(mu, s.features, s.seed);
  if (s.pairs.empty()) {
    emit(s.output, out, dump(Json(sample)));
    return kOk;
  }
  std::istringstream in(read_file(s.pairs));
  const auto values = read_values_csv(in);
  if (values.size() % 2 != 0) throw ValidationError("--pairs needs x,y rows");
  if (!s.output.empty()) emit(s.output, out, dump(Json(sample)));
  out << "x,y,approx,exact,abs_error\n";
  for (std::size_t i = 0; i < values.size(); i += 2) {
    const double x = values[i];
    const double y = values[i + 1];
    const double approx = approximate_kernel(sample, x, y);
    const double exact = bochner_synthesis(mu, x - y);
    out << format_number(x) << ',' << format_number(y) << ',' << format_number(approx) << ','
        << format_number(exact) << ',' << format_number(std::abs(approx - exact)) << '\n';
  }
  return kOk;
}

int cmd_product_synth(const State& s, std::ostream& out) {
  const auto mu = read_json_as<ProductSpectralMeasure>(s.input);
  mu.validate();
  const auto pairs = read_json(s.pairs);
  if (!pairs.is_array()) throw ValidationError("--pairs must be a JSON array of [x, y] pairs");
  Json values = Json::array();
  for (const auto& p : pairs) {
    std::vector<double> x, y;
    try {
      x = p.at(0).get<std::vector<double>>();
      y = p.at(1).get<std::vector<double>>();
    } catch (const Json::exception&) {
      throw ValidationError("each pair must be [[x...], [y...]]");
    }
    if (x.size() != y.size()) throw ValidationError("pair vectors differ in length");
    std::vector<double> t(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) t[i] = x[i] - y[i];
    values.push_back(product_synthesis(mu, t));
  }
  emit(s.output, out, values.dump() + "\n");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kernels, Hilbertian metrics and spectral measures on the real line", "bochner"};
  app.require_subcommand(1);
  State s;
  std::function<int()> action;

  auto with_output = [&s](CLI::App* sub) {
    sub->add_option("-o,--output", s.output, "Output file (default: stdout)");
  };
  auto matrix_input = [&s](CLI::App* sub) {
    sub->add_option("--matrix", s.matrix, "Matrix CSV (row-major, no header)")->required();
  };

  auto* zoo_cmd = app.add_subcommand("zoo", "List or sample zoo kernels");
  zoo_cmd->require_subcommand(1);
  zoo_cmd->add_subcommand("list", "List kernels with default parameters")
      ->callback([&] { action = [&] { return cmd_zoo_list(out); }; });
  auto* zoo_sample = zoo_cmd->add_subcommand("sample", "Sample a kernel profile as CSV");
  add_profile_options(zoo_sample, s.profile);
  add_grid_options(zoo_sample, s.grid);
  with_output(zoo_sample);
  zoo_sample->callback([&] {
    action = [&] {
      emit(s.output, out, profile_csv(load_profile(s.profile), s.grid));
      return int{kOk};
    };
  });

  auto* gram = app.add_subcommand("gram", "Gram matrix of a kernel on sample points");
  add_profile_options(gram, s.profile);
  gram->add_option("--points", s.points, "Points CSV")->required();
  with_output(gram);
  gram->callback([&] { action = [&] { return cmd_gram(s, out); }; });

  auto* check_psd = app.add_subcommand("check-psd", "Positive definiteness verdict with witness");
  matrix_input(check_psd);
  check_psd->add_option("--tol", s.tol, "Relative eigenvalue tolerance")->capture_default_str();
  check_psd->callback([&] { action = [&] { return cmd_check(s, out, true); }; });

  auto* check_nd = app.add_subcommand("check-nd", "Negative definiteness verdict with witness");
  matrix_input(check_nd);
  check_nd->add_option("--tol", s.tol, "Relative eigenvalue tolerance")->capture_default_str();
  check_nd->callback([&] { action = [&] { return cmd_check(s, out, false); }; });

  auto* nd2psd = app.add_subcommand("nd-to-psd", "Base-point transform of a negative definite matrix");
  matrix_input(nd2psd);
  nd2psd->add_option("--base", s.base, "Base row index")->capture_default_str();
  with_output(nd2psd);
  nd2psd->callback([&] { action = [&] { return cmd_nd_to_psd(s, out); }; });

  auto* embed = app.add_subcommand("embed", "Euclidean coordinates from squared distances");
  matrix_input(embed);
  embed->add_option("--tol", s.tol, "Relative eigenvalue tolerance")->capture_default_str();
  with_output(embed);
  embed->callback([&] { action = [&] { return cmd_embed(s, out); }; });

  auto* to_metric = app.add_subcommand("to-metric", "Squared metric 2k(0) - 2k(t) as CSV");
  add_profile_options(to_metric, s.profile);
  add_grid_options(to_metric, s.grid);
  with_output(to_metric);
  to_metric->callback([&] {
    action = [&] {
      emit(s.output, out, profile_csv(metric_from_kernel(load_profile(s.profile)), s.grid));
      return int{kOk};
    };
  });

  auto* invert = app.add_subcommand("invert", "Spectral measure of a kernel profile");
  add_profile_options(invert, s.profile);
  invert->add_option("--t-max", s.inversion.t_max, "Truncation of the cosine transform")
      ->capture_default_str();
  invert->add_option("--n-samples", s.inversion.n_samples, "Samples on [0, t_max] (4k + 1)")
      ->capture_default_str();
  invert->add_option("--bins", s.inversion.bins, "Frequency bins")->capture_default_str();
  invert->add_option("--freq-max", s.inversion.freq_max, "Upper frequency")->capture_default_str();
  invert->add_option("--clamp-tol", s.inversion.clamp_tol, "Negative density tolerance / k(0)")
      ->capture_default_str();
  with_output(invert);
  invert->callback([&] { action = [&] { return cmd_invert(s, out, invert); }; });

  auto* synth = app.add_subcommand("synth", "Kernel profile of a spectral measure as CSV");
  synth->add_option("--measure", s.input, "Spectral measure JSON")->required();
  add_grid_options(synth, s.grid);
  with_output(synth);
  synth->callback([&] { action = [&] { return cmd_synth(s, out); }; });

  auto* screw = app.add_subcommand("screw", "Squared metric of a gamma measure as CSV");
  screw->add_option("--gamma", s.input, "Gamma measure JSON")->required();
  add_grid_options(screw, s.grid);
  with_output(screw);
  screw->callback([&] { action = [&] { return cmd_screw(s, out); }; });

  auto* gamma = app.add_subcommand(
      "gamma", "Spectral measure to gamma measure, or back with --k0");
  gamma->add_option("-i,--input", s.input, "Spectral measure JSON (gamma JSON with --k0)")
      ->required();
  auto* gamma_k0 = gamma->add_option("--k0", s.k0, "Kernel value at 0; selects gamma -> measure");
  with_output(gamma);
  gamma->callback([&] {
    s.have_k0 = gamma_k0->count() > 0;
    action = [&] { return cmd_gamma(s, out); };
  });

  auto* bound = app.add_subcommand("bound-check", "Compare int s^-2 dgamma(s) with 4 k0");
  bound->add_option("--gamma", s.input, "Gamma measure JSON")->required();
  bound->add_option("--k0", s.k0, "Kernel value at 0")->required();
  bound->callback([&] { action = [&] { return cmd_bound_check(s, out); }; });

  auto* atom0 = app.add_subcommand("atom0", "Window mean estimate of the atom at frequency 0");
  add_profile_options(atom0, s.profile);
  atom0->add_option("--window", s.window, "Half-width T of the averaging window")
      ->capture_default_str()->check(CLI::PositiveNumber);
  atom0->add_option("--step", s.step, "Trapezoid step")->capture_default_str()->check(CLI::PositiveNumber);
  atom0->callback([&] { action = [&] { return cmd_atom0(s, out); }; });

  auto* rff = app.add_subcommand("rff", "Random Fourier feature frequencies from a measure");
  rff->add_option("--measure", s.input, "Spectral measure JSON")->required();
  rff->add_option("--m", s.features, "Number of features")->capture_default_str()->check(CLI::PositiveNumber);
  rff->add_option("--seed", s.seed, "Generator seed")->capture_default_str();
  rff->add_option("--pairs", s.pairs, "CSV of x,y rows; emits approximation errors");
  with_output(rff);
  rff->callback([&] { action = [&] { return cmd_rff(s, out); }; });

  auto* product = app.add_subcommand("product-synth", "Separable kernel values from a factored measure");
  product->add_option("--measure", s.input, "Factored measure JSON {\"factors\": [...]}")->required();
  product->add_option("--pairs", s.pairs, "JSON array of [[x...], [y...]] pairs")->required();
  with_output(product);
  product->callback([&] { action = [&] { return cmd_product_synth(s, out); }; });

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    return action ? action() : kValidation;
  } catch (const Rejection& e) {
    out << dump(rejection_json(e));
    return kRejected;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace bochner::cli
