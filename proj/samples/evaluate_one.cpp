// K_{0.3+5i}(2) by every method that applies at t > y.
#include <cstdio>

#include "bessel_sd/bessel_sd.hpp"

int main() {
    using namespace bessel_sd;
    const OrderSpec nu{0.3, 5.0};
    const double y = 2.0;
    for (Method m : {Method::thm13, Method::prop33, Method::series, Method::direct}) {
        const auto o = evaluate(nu, y, m);
        const auto z = o.value.to_complex();
        std::printf("%-8s %.16e %+.16ei  rel.err %.1e  evals %d\n", std::string(to_string(m)).c_str(), z.real(),
                    z.imag(), o.relative_error(), o.evaluations);
    }
}
