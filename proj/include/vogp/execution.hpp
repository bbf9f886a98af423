#pragma once

namespace vogp {

/// Selects the OpenMP kernel or its serial reference. Both produce
/// identical results.
enum class Execution { serial, parallel };

}  // namespace vogp
