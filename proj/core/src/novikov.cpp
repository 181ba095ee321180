#include <mmpfloer/novikov.hpp>

namespace mmpfloer::novikov {

namespace {
double g_zero_tol = 1e-9;
}

double zero_tolerance() { return g_zero_tol; }

void set_zero_tolerance(double tol) {
    if (!(tol > 0.0) || tol >= 1e-3)
        throw std::invalid_argument("zero tolerance must lie in (0, 1e-3)");
    g_zero_tol = tol;
}

}  // namespace mmpfloer::novikov
