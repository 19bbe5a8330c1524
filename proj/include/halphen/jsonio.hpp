#ifndef HALPHEN_JSONIO_HPP
#define HALPHEN_JSONIO_HPP

#include <complex>
#include <string>

#include "json.hpp"

namespace halphen::jsonio {

using Json = nlohmann::ordered_json;

Json complex_json(std::complex<double> z);
std::complex<double> complex_from_json(const Json& j);

// Serialization with a fixed number format: every floating-point value is
// printed with 17 significant digits, so identical values produce identical
// bytes regardless of how the default dumper would shorten them.
std::string dump(const Json& j, int indent = -1);

}  // namespace halphen::jsonio

#endif
