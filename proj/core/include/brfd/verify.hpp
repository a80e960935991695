#pragma once

#include <functional>
#include <string>
#include <vector>

#include "brfd/grid.hpp"

namespace brfd {

struct VerifyItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Test-only seams. A nonempty laplacian override replaces the discrete
/// Laplacian inside the summation-by-parts item (mutation sanity checks).
struct VerifyHooks {
    std::function<InteriorGridFunction(const InteriorGridFunction&, const Mesh&)> laplacian;
};

/// The built-in invariant battery: summation-by-parts and energy identities,
/// Sobolev/Poincare sampling, mollifier construction checks, Thomas against a
/// dense eliminator, and the elliptic projection bound.
std::vector<VerifyItem> run_verify_battery(const VerifyHooks* hooks = nullptr);

}  // namespace brfd
