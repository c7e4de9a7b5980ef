#pragma once

namespace underlay {

/// Complete gamma function for real x, Lanczos approximation (g = 7, n = 9)
/// with the reflection formula below 1/2. Relative error is around 1e-15 on
/// the positive axis. Poles (x = 0, -1, -2, ...) return NaN.
double gamma_fn(double x);

}  // namespace underlay
