#pragma once

#include <array>
#include <cmath>

#include "orislink/params.hpp"
#include "orislink/random.hpp"

namespace orislink {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
    friend double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    friend Vec3 cross(Vec3 a, Vec3 b) {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
    friend double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
    friend Vec3 normalized(Vec3 v) { return (1.0 / norm(v)) * v; }
};

/// Row-major 3x3 rotation.
using Mat3 = std::array<std::array<double, 3>, 3>;
Vec3 apply(const Mat3& m, Vec3 v);
/// Rotation by `angle` about unit `axis` (Rodrigues).
Mat3 rotation(Vec3 axis, double angle);

/// Concrete relay / ORIS / receiver placement.
///
/// The unperturbed chief ray leaves the relay, travels l_ro to the ORIS
/// center, reflects about the nominal normal and travels l_ou to the
/// receiver center. The receiver plane faces the reflected chief ray.
struct SceneGeometry {
    Vec3 relay_position;
    Vec3 oris_center;
    Vec3 oris_nominal_normal;
    Vec3 receiver_center;
    Vec3 receiver_plane_normal;
};

/// Builds the scene for an incidence angle in [0, pi/2). Normal incidence
/// (0) is accepted; grazing incidence is rejected with ParameterError.
SceneGeometry build_scene(const SystemParams& params, double incidence_angle);

/// Applies a rigid rotation about the origin to every point and direction.
SceneGeometry rotate_scene(const SceneGeometry& scene, const Mat3& r);

/// Two unit vectors completing `v` to a right-handed orthonormal frame.
std::array<Vec3, 2> perpendicular_basis(Vec3 v);

/// Rotates unit vector `v` by the small-angle tilt (ax, ay) taken along
/// `basis`: the result is cos|t| v + sin|t| t/|t| with t = ax e1 + ay e2.
Vec3 tilt(Vec3 v, const std::array<Vec3, 2>& basis, double ax, double ay);

/// Specular reflection of direction d about unit normal n.
inline Vec3 reflect(Vec3 d, Vec3 n) { return d - (2.0 * dot(d, n)) * n; }

struct RayTrace {
    bool hit = false;          // false: ray missed the ORIS or receiver plane
    double displacement = 0.0; // |spot - receiver center| [m], +inf on a miss
    Vec3 reflected;            // unit direction after the ORIS
};

/// Traces one ray for the given jitter draws: transmitter tilt
/// (theta_x, theta_y) and ORIS normal tilt (beta_x, beta_y), radians.
RayTrace trace_ray(const SceneGeometry& scene, double theta_x, double theta_y, double beta_x, double beta_y);

struct GeometrySample {
    double displacement_r = 0.0;
    double hp = 0.0;
};

/// Draws independent Gaussian jitter on the beam direction (sigma_theta per
/// axis) and on the ORIS normal (sigma_beta per axis), traces the ray and
/// returns the spot offset and the collected fraction. A ray that misses is
/// a deep fade: hp = 0.
GeometrySample sample_fso_geometry(const SceneGeometry& scene, const SystemParams& params,
                                   const DerivedGeometry& derived, RandomStream& rng);

}  // namespace orislink
