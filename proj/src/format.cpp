#include "evofam/format.hpp"

#include <cmath>
#include <cstdio>

namespace evofam {

std::string format_real(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex(std::complex<double> z)
{
    std::string out = format_real(z.real());
    out += z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+";
    out += format_real(std::abs(z.imag()));
    out += "i";
    return out;
}

} // namespace evofam
