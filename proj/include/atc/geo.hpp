#pragma once

#include "atc/state.hpp"

namespace atc {

/// Raw geodetic fix: epoch seconds plus WGS-84 latitude/longitude in degrees
/// and altitude in meters above the ellipsoid.
struct GeodeticFix {
    double t = 0.0;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double alt_m = 0.0;
};

/// Origin of the local east-north-up frame.
struct EnuOrigin {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double alt_m = 0.0;
};

struct EnuPoint {
    double x = 0.0;  // east, meters
    double y = 0.0;  // north, meters
    double z = 0.0;  // up, meters
};

/// Full ellipsoidal WGS-84 -> ECEF -> ENU chain. +z is perpendicular to the
/// local tangent plane at the origin.
///
/// Throws std::invalid_argument on non-finite or out-of-range inputs.
EnuPoint wgs84_to_enu(const GeodeticFix& fix, const EnuOrigin& origin);

/// Angle of the displacement (x0,y0) -> (x1,y1) from the +x axis, wrapped to
/// [-pi, pi). Throws std::invalid_argument for coincident points.
double bearing_from_positions(double x0, double y0, double x1, double y1);

}  // namespace atc
