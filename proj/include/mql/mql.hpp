#ifndef MQL_MQL_HPP
#define MQL_MQL_HPP

#include "mql/coords.hpp"
#include "mql/curve_complex.hpp"
#include "mql/error.hpp"
#include "mql/fibonacci.hpp"
#include "mql/integral.hpp"
#include "mql/io.hpp"
#include "mql/klein.hpp"
#include "mql/mcshane.hpp"
#include "mql/quad.hpp"
#include "mql/representation.hpp"
#include "mql/spectra.hpp"
#include "mql/spiral.hpp"

namespace mql {
inline constexpr const char* kVersion = "0.1.0";
}

#endif  // MQL_MQL_HPP
