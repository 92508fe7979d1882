// A few points of the oscillatory contour for mu = ln 10 and the residual of Im phase along it.
#include <cmath>
#include <cstdio>

#include "bessel_sd/bessel_sd.hpp"

int main() {
    using namespace bessel_sd;
    const double mu = std::log(10.0);
    const auto regime = RegimeSpec::oscillatory(1.0, mu);
    std::printf("mu_minus = %.16f\n", contour::mu_minus(mu));
    for (auto b : {contour::Branch::arc_lower, contour::Branch::arc_upper, contour::Branch::tail}) {
        for (const auto& p : contour::sample_case2(mu, b, 5, 4.0)) {
            std::printf("%-9s u = %+.6f  w = %.6f  slope = %s  residual = %.1e\n",
                        std::string(contour::to_string(b)).c_str(), p.u, p.w,
                        p.dw_du ? std::to_string(*p.dw_du).c_str() : "vertical",
                        contour::im_phase_residual(regime, p));
        }
    }
}
