#include "cqexp/config.hpp"

#include <cstdlib>
#include <string>

namespace cqexp {
namespace {

double env_double(const char* name, double fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    return std::stod(v);
}

std::size_t env_size(const char* name, std::size_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    return static_cast<std::size_t>(std::stoull(v));
}

Config load() {
    Config c;
    c.eigen_floor = env_double("CQEXP_EIGEN_FLOOR", c.eigen_floor);
    c.gap_tolerance = env_double("CQEXP_GAP_TOL", c.gap_tolerance);
    c.fd_step = env_double("CQEXP_FD_STEP", c.fd_step);
    c.jacobi_rotation_factor = env_size("CQEXP_JACOBI_CAP", c.jacobi_rotation_factor);
    c.dim_cap = env_size("CQEXP_DIM_CAP", c.dim_cap);
    return c;
}

}  // namespace

const Config& Config::get() {
    static const Config instance = load();
    return instance;
}

}  // namespace cqexp
