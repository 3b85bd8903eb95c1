#pragma once

#include <map>
#include <mutex>
#include <utility>

#include "jetlaw/conservation.hpp"

namespace jetlaw {

/// Change of variables xi = x + t, eta = x - t, u(t, x) = w(xi, eta) on
/// solutions. Jet images are generated from w <-> u by the solution
/// restricted derivative recursions
///   w[k+1,0] = 1/2 (D_x + D_t) w[k,0],   w[0,l+1] = 1/2 (D_x - D_t) w[0,l],
///   u[0,j+1] = (D_xi + D_eta) u[0,j],    u[1,j]   = (D_xi - D_eta) u[0,j],
/// giving w[k,0] = 1/2 (u[0,k] + u[1,k-1]) and w[0,k] = 1/2 (u[0,k] - u[1,k-1]).
/// Images are memoized per jet; the table is safe for concurrent use.
class CheckVariableMap {
public:
    static CheckVariableMap& instance();

    /// Image of a non-mixed light-cone jet w[k,l] in reduced space-time jets.
    Expr spacetime_image(int k, int l);
    /// Image of a reduced space-time jet u[i,j], i <= 1, in light-cone jets.
    Expr lightcone_image(int i, int j);

    /// Whole-expression pullbacks; inputs are first reduced to solutions.
    Expr to_spacetime(const Expr& e);
    Expr to_lightcone(const Expr& e);

private:
    CheckVariableMap() = default;

    std::mutex mutex_;
    std::map<std::pair<int, int>, Expr> spacetime_images_;
    std::map<std::pair<int, int>, Expr> lightcone_images_;
};

/// (F, G) -> (F - G, F + G) expressed in u. The divergences satisfy
/// D_xi F + D_eta G = 1/2 [D_t(F - G) + D_x(F + G)]; the 1/2 is dropped.
Current current_to_spacetime(const Current& c);

/// (T, X) -> (1/2 (T + X), 1/2 (X - T)) expressed in w.
Current current_to_lightcone(const Current& c);

/// mu = -1/2 lambda, from lambda * w[1,1] = -1/4 lambda (u[2,0] - u[0,2])
/// and the dropped divergence factor.
Characteristic characteristic_to_spacetime(const Characteristic& lambda);

/// lambda = -2 mu.
Characteristic characteristic_to_lightcone(const Characteristic& mu);

}  // namespace jetlaw
