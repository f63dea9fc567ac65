#pragma once

namespace gammarad {

// Library version, recorded in run manifests so result files can be traced
// back to the code that produced them.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace gammarad
