#include "bochner/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace bochner {

namespace {

std::vector<Atom> atoms_from(const Json& j) {
  std::vector<Atom> atoms;
  if (!j.contains("atoms")) return atoms;
  for (const auto& a : j.at("atoms")) atoms.push_back({a.at("loc").get<double>(), a.at("mass").get<double>()});
  return atoms;
}

Json atoms_to(const std::vector<Atom>& atoms) {
  Json out = Json::array();
  for (const Atom& a : atoms) out.push_back({{"loc", a.loc}, {"mass", a.mass}});
  return out;
}

BinnedDensity density_from(const Json& j) {
  BinnedDensity d;
  if (!j.contains("density") || j.at("density").is_null()) return d;
  const auto& dj = j.at("density");
  d.edges = dj.value("edges", std::vector<double>{});
  d.values = dj.value("values", std::vector<double>{});
  return d;
}

Json density_to(const BinnedDensity& d) {
  return {{"edges", d.edges}, {"values", d.values}};
}

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto begin = cell.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = cell.find_last_not_of(" \t\r");
    const std::string trimmed = cell.substr(begin, end - begin + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(trimmed, &used);
    } catch (const std::exception&) {
      throw ValidationError("CSV cell is not a number: '" + trimmed + "'");
    }
    if (used != trimmed.size()) throw ValidationError("CSV cell is not a number: '" + trimmed + "'");
    row.push_back(v);
  }
  return row;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

void to_json(Json& j, const Descriptor& d) { j = Json{{"name", d.name}, {"params", d.params}}; }

void from_json(const Json& j, Descriptor& d) {
  d.name = j.at("name").get<std::string>();
  d.params = j.value("params", std::map<std::string, double>{});
}

void to_json(Json& j, const SpectralMeasure& mu) {
  j = Json{{"atoms", atoms_to(mu.atoms)}, {"density", density_to(mu.density)}};
}

void from_json(const Json& j, SpectralMeasure& mu) {
  mu.atoms = atoms_from(j);
  mu.density = density_from(j);
}

void to_json(Json& j, const GammaMeasure& gamma) {
  Json density = density_to(gamma.density);
  density["basis"] = gamma.basis == GammaBasis::quadratic ? "s2" : "flat";
  j = Json{{"atoms", atoms_to(gamma.atoms)}, {"density", density}};
}

void from_json(const Json& j, GammaMeasure& gamma) {
  gamma.atoms = atoms_from(j);
  gamma.density = density_from(j);
  gamma.basis = GammaBasis::flat;
  if (j.contains("density") && j.at("density").is_object()) {
    const auto basis = j.at("density").value("basis", std::string("flat"));
    if (basis == "s2") {
      gamma.basis = GammaBasis::quadratic;
    } else if (basis != "flat") {
      throw ValidationError("gamma density basis must be 'flat' or 's2'");
    }
  }
}

void to_json(Json& j, const ProductSpectralMeasure& mu) {
  j = Json{{"factors", mu.factors}};
}

void from_json(const Json& j, ProductSpectralMeasure& mu) {
  mu.factors = j.at("factors").get<std::vector<SpectralMeasure>>();
}

void to_json(Json& j, const FrequencySample& s) {
  j = Json{{"seed", s.seed}, {"total_mass", s.total_mass}, {"freqs", s.frequencies},
           {"phases", s.phases}};
}

void from_json(const Json& j, FrequencySample& s) {
  s.seed = j.at("seed").get<std::uint64_t>();
  s.total_mass = j.at("total_mass").get<double>();
  s.frequencies = j.at("freqs").get<std::vector<double>>();
  s.phases = j.at("phases").get<std::vector<double>>();
}

Json verdict_json(const DefinitenessVerdict& v, const char* key) {
  std::vector<double> witness(v.witness_vector.data(),
                              v.witness_vector.data() + v.witness_vector.size());
  return Json{{key, v.holds},
              {"witness_eigenvalue", v.witness_eigenvalue},
              {"witness_vector", witness},
              {"threshold", v.threshold}};
}

Json rejection_json(const Rejection& r) {
  Json j{{"error", r.kind()}, {"message", r.what()}};
  if (const auto* e = dynamic_cast<const NotPositiveDefinite*>(&r)) {
    const auto& d = e->details();
    j["atom_zero"] = d.atom_zero;
    j["min_density"] = d.min_density;
    j["at_frequency"] = d.at_frequency;
    j["threshold"] = d.threshold;
  } else if (const auto* e = dynamic_cast<const UnboundedMetric*>(&r)) {
    j["integral"] = e->integral();
    j["bound"] = e->bound();
  } else if (const auto* e = dynamic_cast<const NotHilbertian*>(&r)) {
    const auto& w = e->nd_witness();
    j["kernel_eigenvalue"] = e->kernel_eigenvalue();
    j["witness_eigenvalue"] = e->nd_eigenvalue();
    j["witness_vector"] = std::vector<double>(w.data(), w.data() + w.size());
  }
  return j;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    rows.push_back(parse_row(line));
  }
  if (rows.empty()) throw ValidationError("matrix CSV is empty");
  const auto cols = rows.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ValidationError("matrix CSV rows have different lengths");
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_number(m(i, j));
    }
    out << '\n';
  }
}

std::vector<double> read_values_csv(std::istream& in) {
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    for (double v : parse_row(line)) values.push_back(v);
  }
  return values;
}

std::pair<std::vector<double>, std::vector<double>> read_profile_csv(std::istream& in) {
  std::vector<double> t, values;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    if (first && line.find_first_of("tT") != std::string::npos &&
        line.find("value") != std::string::npos) {
      first = false;
      continue;
    }
    first = false;
    const auto row = parse_row(line);
    if (row.size() != 2) throw ValidationError("profile CSV rows need exactly two columns t,value");
    t.push_back(row[0]);
    values.push_back(row[1]);
  }
  if (t.empty()) throw ValidationError("profile CSV is empty");
  return {std::move(t), std::move(values)};
}

void write_profile_csv(std::ostream& out, const std::vector<double>& t,
                       const std::vector<double>& values) {
  out << "t,value\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << format_number(t[i]) << ',' << format_number(values[i]) << '\n';
  }
}

}  // namespace bochner
