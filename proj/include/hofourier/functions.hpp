#pragma once

// Built-in test functions for the experiments, addressed by identifier:
//   expcos          e^{cos x}
//   abssin          |sin x|
//   basis:<m>       E_m^k(ix)
//   counterexample  (1 - cos x)^{-(k+1)/2}

#include <complex>
#include <functional>
#include <string>

#include "hofourier/exppoly.hpp"
#include "hofourier/real.hpp"

namespace hofourier {

struct TestFunction {
    std::string id;
    bool real_valued = true;
    /// |f(x)| ~ c |x|^{-origin_singularity} as x -> 0 (0 for bounded f).
    double origin_singularity = 0.0;
    /// f is exactly (1 - cos x)^{-origin_singularity/2}, so integrals against it
    /// can absorb f into a singular Gauss-Jacobi weight.
    bool cosine_power = false;
    std::function<std::complex<double>(double)> eval;
    /// Optional binary128 evaluation; empty when unavailable.
    std::function<std::complex<Quad>(const Quad&)> eval_quad;

    /// f in L^p(dm_k)?
    bool in_lp(double p, Multiplicity k) const;
};

/// Throws ParameterError for an unknown identifier.
TestFunction parse_function(const std::string& id, Multiplicity k);

}  // namespace hofourier
