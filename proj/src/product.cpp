#include "bochner/product.hpp"

#include <sstream>

#include "bochner/error.hpp"

namespace bochner {

namespace {

void require_dims(std::size_t expected, std::size_t got, const char* what) {
  if (expected == 0) throw ValidationError(std::string(what) + " needs at least one factor");
  if (got != expected) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (expected " << expected << ", got " << got << ")";
    throw ValidationError(msg.str());
  }
}

}  // namespace

double ProductSpectralMeasure::total_mass() const {
  double m = 1.0;
  for (const auto& f : factors) m *= f.total_mass();
  return m;
}

void ProductSpectralMeasure::validate() const {
  if (factors.empty()) throw ValidationError("product measure needs at least one factor");
  for (const auto& f : factors) f.validate();
}

double separable_eval(const SeparableKernel& kernel, std::span<const double> x,
                      std::span<const double> y) {
  require_dims(kernel.dimension(), x.size(), "separable_eval");
  require_dims(kernel.dimension(), y.size(), "separable_eval");
  double k = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) k *= kernel.factors[i](x[i] - y[i]);
  return k;
}

double product_synthesis(const ProductSpectralMeasure& measure, std::span<const double> t) {
  require_dims(measure.dimension(), t.size(), "product_synthesis");
  double k = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) k *= bochner_synthesis(measure.factors[i], t[i]);
  return k;
}

ProductSpectralMeasure invert_separable(const SeparableKernel& kernel,
                                        const InversionConfig& config) {
  if (kernel.dimension() == 0) throw ValidationError("separable kernel needs at least one factor");
  ProductSpectralMeasure out;
  for (const auto& f : kernel.factors) out.factors.push_back(bochner_inversion(f, config).measure);
  return out;
}

}  // namespace bochner
