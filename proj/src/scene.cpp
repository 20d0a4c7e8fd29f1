#include "orislink/scene.hpp"

#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "orislink/errors.hpp"
#include "orislink/fso_channel.hpp"

namespace orislink {

namespace {
constexpr double kGrazingMargin = 1e-3;
}

Vec3 apply(const Mat3& m, Vec3 v) {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z, m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Mat3 rotation(Vec3 axis, double angle) {
    const Vec3 k = normalized(axis);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double t = 1.0 - c;
    return {{{c + t * k.x * k.x, t * k.x * k.y - s * k.z, t * k.x * k.z + s * k.y},
             {t * k.y * k.x + s * k.z, c + t * k.y * k.y, t * k.y * k.z - s * k.x},
             {t * k.z * k.x - s * k.y, t * k.z * k.y + s * k.x, c + t * k.z * k.z}}};
}

SceneGeometry build_scene(const SystemParams& params, double incidence_angle) {
    if (!(incidence_angle >= 0.0) || !(incidence_angle < std::numbers::pi / 2 - kGrazingMargin)) {
        throw ParameterError(fmt::format("build_scene: incidence angle {} rad is outside [0, pi/2) or grazing",
                                         incidence_angle));
    }
    if (!(params.l_ro > 0.0 && params.l_ou > 0.0)) throw ParameterError("build_scene: distances must be > 0");

    // ORIS at the origin facing +z; plane of incidence is x-z.
    const Vec3 normal{0.0, 0.0, 1.0};
    const Vec3 incoming{std::sin(incidence_angle), 0.0, -std::cos(incidence_angle)};
    const Vec3 outgoing = reflect(incoming, normal);

    SceneGeometry scene;
    scene.oris_center = {0.0, 0.0, 0.0};
    scene.oris_nominal_normal = normal;
    scene.relay_position = scene.oris_center - params.l_ro * incoming;
    scene.receiver_center = scene.oris_center + params.l_ou * outgoing;
    scene.receiver_plane_normal = outgoing;
    return scene;
}

SceneGeometry rotate_scene(const SceneGeometry& scene, const Mat3& r) {
    return {apply(r, scene.relay_position), apply(r, scene.oris_center), apply(r, scene.oris_nominal_normal),
            apply(r, scene.receiver_center), apply(r, scene.receiver_plane_normal)};
}

std::array<Vec3, 2> perpendicular_basis(Vec3 v) {
    const Vec3 u = normalized(v);
    // Seed with the coordinate axis least aligned with u.
    const double ax = std::abs(u.x);
    const double ay = std::abs(u.y);
    const double az = std::abs(u.z);
    Vec3 seed{0.0, 0.0, 1.0};
    if (ax <= ay && ax <= az) {
        seed = {1.0, 0.0, 0.0};
    } else if (ay <= az) {
        seed = {0.0, 1.0, 0.0};
    }
    const Vec3 e1 = normalized(cross(u, seed));
    const Vec3 e2 = cross(u, e1);
    return {e1, e2};
}

Vec3 tilt(Vec3 v, const std::array<Vec3, 2>& basis, double ax, double ay) {
    const double angle = std::hypot(ax, ay);
    if (angle == 0.0) return v;
    const Vec3 dir = (1.0 / angle) * (ax * basis[0] + ay * basis[1]);
    return std::cos(angle) * v + std::sin(angle) * dir;
}

RayTrace trace_ray(const SceneGeometry& scene, double theta_x, double theta_y, double beta_x, double beta_y) {
    RayTrace out;
    out.displacement = std::numeric_limits<double>::infinity();

    const Vec3 chief = normalized(scene.oris_center - scene.relay_position);
    const Vec3 beam = tilt(chief, perpendicular_basis(chief), theta_x, theta_y);
    const Vec3 normal = tilt(scene.oris_nominal_normal, perpendicular_basis(scene.oris_nominal_normal), beta_x, beta_y);

    // The beam must approach the reflective face.
    const double approach = dot(beam, normal);
    if (!(approach < 0.0)) return out;
    const double s_oris = dot(scene.oris_center - scene.relay_position, normal) / approach;
    if (!(s_oris > 0.0)) return out;
    const Vec3 spot_on_oris = scene.relay_position + s_oris * beam;

    out.reflected = reflect(beam, normal);
    const double toward = dot(out.reflected, scene.receiver_plane_normal);
    if (!(toward > 0.0)) return out;
    const double s_rx = dot(scene.receiver_center - spot_on_oris, scene.receiver_plane_normal) / toward;
    if (!(s_rx > 0.0)) return out;
    const Vec3 spot = spot_on_oris + s_rx * out.reflected;

    out.hit = true;
    out.displacement = norm(spot - scene.receiver_center);
    return out;
}

GeometrySample sample_fso_geometry(const SceneGeometry& scene, const SystemParams& params,
                                   const DerivedGeometry& derived, RandomStream& rng) {
    const double tx = params.sigma_theta * rng.normal();
    const double ty = params.sigma_theta * rng.normal();
    const double bx = params.sigma_beta * rng.normal();
    const double by = params.sigma_beta * rng.normal();
    const RayTrace ray = trace_ray(scene, tx, ty, bx, by);
    if (!ray.hit) return {ray.displacement, 0.0};
    return {ray.displacement, pointing_loss(derived, ray.displacement)};
}

}  // namespace orislink
