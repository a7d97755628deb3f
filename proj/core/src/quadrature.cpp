#include "recsel/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "recsel/errors.hpp"

namespace recsel {

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  QuadratureResult result;
  if (a == b) return result;
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw NumericError("integrate: limits must be finite");
  }
  // Request well below the acceptance threshold; the check below is what
  // decides success.
  const double target = std::min(options.rel_tolerance, 1e-13);
  try {
    result.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, options.max_depth, target, &result.error_estimate, &result.l1_norm);
  } catch (const std::exception& e) {
    throw NumericError(std::string("integrate: ") + e.what());
  }
  const double allowed =
      std::max(options.abs_tolerance, options.rel_tolerance * result.l1_norm);
  if (!std::isfinite(result.value) || !(result.error_estimate <= allowed)) {
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b
        << "]: error estimate " << result.error_estimate << " exceeds " << allowed
        << " after depth " << options.max_depth;
    throw NumericError(msg.str());
  }
  return result;
}

}  // namespace recsel
