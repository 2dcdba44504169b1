#pragma once

#include <complex>
#include <string>

namespace evofam {

/// %.17g: enough digits for an exact round trip.
std::string format_real(double x);
std::string format_complex(std::complex<double> z);

} // namespace evofam
