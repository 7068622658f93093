#include "atc/geo.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "atc/angles.hpp"

namespace atc {
namespace {

// WGS-84 ellipsoid
constexpr double kSemiMajorM = 6378137.0;
constexpr double kFlattening = 1.0 / 298.257223563;
constexpr double kEccSq = kFlattening * (2.0 - kFlattening);

std::array<double, 3> geodetic_to_ecef(double lat_deg, double lon_deg, double alt_m) {
    const double lat = deg_to_rad(lat_deg);
    const double lon = deg_to_rad(lon_deg);
    const double sin_lat = std::sin(lat);
    const double cos_lat = std::cos(lat);
    const double n = kSemiMajorM / std::sqrt(1.0 - kEccSq * sin_lat * sin_lat);
    return {
        (n + alt_m) * cos_lat * std::cos(lon),
        (n + alt_m) * cos_lat * std::sin(lon),
        (n * (1.0 - kEccSq) + alt_m) * sin_lat,
    };
}

void check_geodetic(double lat_deg, double lon_deg, double alt_m, double t) {
    if (!std::isfinite(lat_deg) || !std::isfinite(lon_deg) || !std::isfinite(alt_m) ||
        !std::isfinite(t)) {
        throw std::invalid_argument("geodetic input is not finite");
    }
    if (lat_deg < -90.0 || lat_deg > 90.0) {
        throw std::invalid_argument("latitude out of [-90, 90]");
    }
    if (lon_deg < -180.0 || lon_deg > 180.0) {
        throw std::invalid_argument("longitude out of [-180, 180]");
    }
}

}  // namespace

EnuPoint wgs84_to_enu(const GeodeticFix& fix, const EnuOrigin& origin) {
    check_geodetic(fix.lat_deg, fix.lon_deg, fix.alt_m, fix.t);
    check_geodetic(origin.lat_deg, origin.lon_deg, origin.alt_m, 0.0);

    const auto p = geodetic_to_ecef(fix.lat_deg, fix.lon_deg, fix.alt_m);
    const auto o = geodetic_to_ecef(origin.lat_deg, origin.lon_deg, origin.alt_m);
    const double dx = p[0] - o[0];
    const double dy = p[1] - o[1];
    const double dz = p[2] - o[2];

    const double lat0 = deg_to_rad(origin.lat_deg);
    const double lon0 = deg_to_rad(origin.lon_deg);
    const double sl = std::sin(lat0);
    const double cl = std::cos(lat0);
    const double so = std::sin(lon0);
    const double co = std::cos(lon0);

    return EnuPoint{
        -so * dx + co * dy,
        -sl * co * dx - sl * so * dy + cl * dz,
        cl * co * dx + cl * so * dy + sl * dz,
    };
}

double bearing_from_positions(double x0, double y0, double x1, double y1) {
    const double dx = x1 - x0;
    const double dy = y1 - y0;
    if (dx == 0.0 && dy == 0.0) {
        throw std::invalid_argument("bearing undefined for coincident points");
    }
    return wrap_pi(std::atan2(dy, dx));
}

}  // namespace atc
