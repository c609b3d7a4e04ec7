#pragma once

#include "riemannphi/contfrac.hpp"

#include <string>

namespace rphi {

// Input grammar shared by the CLI and the python bindings:
//   rat:p/q                     exact rational
//   dec:<decimal literal>       precision taken from the digits given
//   quad:a0,a1,...,(c1,c2,...)  periodic continued fraction
CertifiedReal parse_xspec(const std::string& spec);

} // namespace rphi
