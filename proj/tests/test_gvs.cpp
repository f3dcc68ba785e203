#include <doctest.h>

#include <cmath>

#include "grs/gvs.hpp"
#include "grs/rng.hpp"
#include "support.hpp"

using namespace grs;

namespace {

DynamicsSnapshot quad_snapshot() {
    DynamicsSnapshot snap;
    snap.f0 = Vec::Zero(2);
    snap.f0 << -8.73, 13.09;
    snap.g0 = Mat::Zero(2, 2);
    snap.g0(0, 0) = 111.11;
    snap.g0(1, 1) = 111.11;
    snap.lf = 1.0;
    snap.lg = 1.0;
    return snap;
}

DynamicsSnapshot fig_snapshot() {
    DynamicsSnapshot snap;
    snap.f0 = Vec::Zero(2);
    snap.g0 = Mat(2, 2);
    snap.g0 << 10.0, 3.0, 2.0, 7.0;
    snap.lf = 1.0;
    snap.lg = 1.0;
    return snap;
}

}  // namespace

TEST_CASE("geometry of the quadrocopter snapshot") {
    const DynamicsSnapshot snap = quad_snapshot();
    const GvsGeometry geom = geometry(snap);
    CHECK(geom.sigma_r == doctest::Approx(111.11));
    CHECK(geom.validity_radius == doctest::Approx(55.555));
    CHECK(geom.image_radius == doctest::Approx(111.11));
    CHECK(geom.mu == 1.0);
    CHECK(geom.rank == 2);
    CHECK(geom.validity_radius < geom.image_radius);
}

TEST_CASE("geometry of identity and of a rank-deficient matrix") {
    DynamicsSnapshot snap;
    snap.f0 = Vec::Zero(2);
    snap.g0 = Mat::Identity(2, 2);
    snap.lf = 1.0;
    snap.lg = 1.0;
    const GvsGeometry geom = geometry(snap);
    CHECK(geom.validity_radius == doctest::Approx(0.5));
    CHECK(geom.mu == 1.0);

    snap.g0(1, 1) = 0.0;
    const GvsGeometry low = geometry(snap);
    CHECK(low.rank == 1);
    CHECK(low.sigma_r == doctest::Approx(1.0));
    CHECK(low.mu == (1.0 + std::sqrt(5.0)) / 2.0);

    snap.g0.setZero();
    CHECK_THROWS_AS(geometry(snap), std::invalid_argument);
}

TEST_CASE("ball radius shrinks linearly and hits zero at the validity radius") {
    const DynamicsSnapshot snap = quad_snapshot();
    const GvsGeometry geom = geometry(snap);
    CHECK(ball_radius(geom, snap, 0.0) == doctest::Approx(111.11));
    CHECK(ball_radius(geom, snap, 10.0) == doctest::Approx(91.11));
    CHECK(ball_radius(geom, snap, geom.validity_radius) == 0.0);
    CHECK(ball_radius(geom, snap, geom.validity_radius * 2.0) == 0.0);
    CHECK_THROWS_AS(ball_radius(geom, snap, -1.0), std::invalid_argument);
}

TEST_CASE("direction gain at the origin is the reciprocal pseudoinverse gain") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const DynamicsSnapshot snap = test::random_snapshot(rng);
        const GvsGeometry geom = geometry(snap);
        const Vec d = test::random_image_direction(geom, rng);
        // Oracle: minimum-norm solve through Eigen's own least-squares path.
        const Vec sol = snap.g0.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(d);
        CHECK(direction_gain(geom, snap, 0.0, d) ==
              doctest::Approx(1.0 / sol.norm()).epsilon(1e-9));
    }
}

TEST_CASE("direction gain along the top singular vector recovers sigma_1") {
    const DynamicsSnapshot snap = fig_snapshot();
    const GvsGeometry geom = geometry(snap);
    const Vec eta1 = geom.svd.u.col(0);
    CHECK(direction_gain(geom, snap, 0.0, eta1) == doctest::Approx(11.43).epsilon(1e-3));
}

TEST_CASE("direction gain beats the ball radius for an invertible input matrix") {
    const DynamicsSnapshot snap = fig_snapshot();
    const GvsGeometry geom = geometry(snap);
    const Vec eta1 = geom.svd.u.col(0);
    const double gain = direction_gain(geom, snap, 1.0, eta1);
    const double radius = ball_radius(geom, snap, 1.0);
    CHECK(radius == doctest::Approx(geom.sigma_r - 2.0));
    CHECK(gain > radius);
}

TEST_CASE("direction gain validates its direction argument") {
    const DynamicsSnapshot snap = fig_snapshot();
    const GvsGeometry geom = geometry(snap);
    Vec d(2);
    d << 1.0, 1.0;  // not unit
    CHECK_THROWS_AS(direction_gain(geom, snap, 0.0, d), std::invalid_argument);

    DynamicsSnapshot low = snap;
    low.g0 = Mat::Zero(2, 2);
    low.g0(0, 0) = 1.0;
    const GvsGeometry low_geom = geometry(low);
    Vec outside(2);
    outside << 0.0, 1.0;  // orthogonal to the image
    CHECK_THROWS_AS(direction_gain(low_geom, low, 0.0, outside), std::invalid_argument);
}

TEST_CASE("axis gains at zero state norm are the singular values") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const DynamicsSnapshot snap = test::random_snapshot(rng);
        const GvsGeometry geom = geometry(snap);
        const Vec gains = axis_gains(geom, snap, 0.0);
        for (Index i = 0; i < geom.rank; ++i) {
            CHECK(gains(i) == doctest::Approx(geom.svd.sigma(i)).epsilon(1e-12));
        }
        for (Index i = geom.rank; i < snap.n(); ++i) CHECK(gains(i) == 0.0);
    }
}

TEST_CASE("axis gains of the quadrocopter snapshot stay isotropic") {
    const DynamicsSnapshot snap = quad_snapshot();
    const GvsGeometry geom = geometry(snap);
    for (const double s : {0.0, 5.0, 20.0, 55.0}) {
        const Vec gains = axis_gains(geom, snap, s);
        CHECK(gains(0) == doctest::Approx(111.11 - 2.0 * s));
        CHECK(gains(1) == doctest::Approx(111.11 - 2.0 * s));
    }
}

TEST_CASE("axis gains vanish at the validity radius") {
    DynamicsSnapshot snap;
    snap.f0 = Vec::Zero(3);
    snap.g0 = Mat::Zero(3, 3);
    snap.g0 << 10.0, 3.0, 0.0, 2.0, 7.0, 0.0, 0.0, 0.0, 2.5;
    snap.lf = 1.0;
    snap.lg = 1.0;
    const GvsGeometry geom = geometry(snap);
    const Vec gains = axis_gains(geom, snap, geom.validity_radius);
    CHECK(gains.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("boundary polylines for the identity are coincident unit circles") {
    DynamicsSnapshot snap;
    snap.f0 = Vec::Zero(2);
    snap.f0 << 0.5, -0.25;
    snap.g0 = Mat::Identity(2, 2);
    snap.lf = 1.0;
    snap.lg = 1.0;
    const GvsGeometry geom = geometry(snap);
    const Vec e1 = Vec::Unit(2, 0);
    const Vec e2 = Vec::Unit(2, 1);
    const BoundaryPolylines lines = boundary_polyline(geom, snap, 0.0, e1, e2, 64);
    const Eigen::Vector2d center(0.5, -0.25);
    for (std::size_t i = 0; i < lines.theta.size(); ++i) {
        CHECK((lines.ball[i] - center).norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((lines.advanced[i] - lines.ball[i]).norm() <= 1e-9);
    }
}

TEST_CASE("advanced boundary encloses the ball boundary pointwise") {
    const DynamicsSnapshot snap = fig_snapshot();
    const GvsGeometry geom = geometry(snap);
    const BoundaryPolylines lines =
        boundary_polyline(geom, snap, 1.0, geom.svd.u.col(0), geom.svd.u.col(1), 128);
    const Eigen::Vector2d center(snap.f0.dot(geom.svd.u.col(0)),
                                 snap.f0.dot(geom.svd.u.col(1)));
    for (std::size_t i = 0; i < lines.theta.size(); ++i) {
        CHECK((lines.advanced[i] - center).norm() >=
              (lines.ball[i] - center).norm() - 1e-9);
    }
}

TEST_CASE("boundary polyline cardinality and degenerate regime") {
    const DynamicsSnapshot snap = fig_snapshot();
    const GvsGeometry geom = geometry(snap);
    const BoundaryPolylines lines =
        boundary_polyline(geom, snap, 0.0, geom.svd.u.col(0), geom.svd.u.col(1), 8);
    CHECK(lines.theta.size() == 8);
    CHECK(lines.ball.size() == 8);
    CHECK(lines.advanced.size() == 8);

    const BoundaryPolylines beyond = boundary_polyline(
        geom, snap, geom.validity_radius * 1.01, geom.svd.u.col(0), geom.svd.u.col(1), 8);
    CHECK(beyond.theta.empty());
    CHECK(beyond.ball.empty());
    CHECK(beyond.advanced.empty());

    CHECK_THROWS_AS(
        boundary_polyline(geom, snap, 0.0, geom.svd.u.col(0), geom.svd.u.col(1), 4),
        std::invalid_argument);
}

TEST_CASE("consistent samples honor their construction bounds") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const DynamicsSnapshot snap = test::random_snapshot(rng);
        const GvsGeometry geom = geometry(snap);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const Vec x = (0.999 * geom.image_radius * unif(rng)) *
                      sample_unit_sphere(snap.n(), rng);
        const ConsistentSample sample = sample_consistent(snap, geom, x, rng);
        const double x_norm = x.norm();
        CHECK((sample.f_hat - snap.f0).norm() <= snap.lf * x_norm + 1e-12);
        CHECK(spectral_norm(sample.g_hat - snap.g0) <= snap.lg * x_norm + 1e-12);

        // Columns stay in the image, and the rank is preserved.
        const Mat basis = geom.image_basis();
        const Mat residual = sample.g_hat - basis * (basis.transpose() * sample.g_hat);
        CHECK(residual.cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(svd(sample.g_hat).rank == geom.rank);
    }
}

TEST_CASE("consistent sample at the origin is the snapshot itself") {
    std::mt19937_64 rng(43);
    const DynamicsSnapshot snap = test::random_snapshot(rng);
    const GvsGeometry geom = geometry(snap);
    const ConsistentSample sample = sample_consistent(snap, geom, Vec::Zero(snap.n()), rng);
    CHECK(sample.f_hat == snap.f0);
    CHECK(sample.g_hat == snap.g0);
}

TEST_CASE("admits_velocity accepts constructed velocities and rejects overdriven ones") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 100; ++trial) {
        const DynamicsSnapshot snap = test::random_snapshot(rng);
        const GvsGeometry geom = geometry(snap);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const Vec x = (0.9 * geom.image_radius * unif(rng)) *
                      sample_unit_sphere(snap.n(), rng);
        const ConsistentSample sample = sample_consistent(snap, geom, x, rng);

        CHECK(admits_velocity(sample, sample.f_hat));

        // Forward construction: any unit input from the row space is realizable.
        const Svd dec = svd(sample.g_hat);
        const Vec u = dec.vt.transpose().leftCols(dec.rank) *
                      sample_unit_sphere(dec.rank, rng);
        CHECK(admits_velocity(sample, Vec(sample.f_hat + sample.g_hat * u)));

        // Exceeding the top gain in the top direction is not realizable.
        const Vec overdriven =
            sample.f_hat + 1.01 * dec.sigma(0) * dec.u.col(0);
        CHECK_FALSE(admits_velocity(sample, overdriven));
    }
}

TEST_CASE("ball and advanced set points are admitted by every consistent sample") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const DynamicsSnapshot snap = test::random_snapshot(rng);
        const GvsGeometry geom = geometry(snap);
        const double x_norm = geom.validity_radius * unif(rng);
        const Vec x = x_norm * sample_unit_sphere(snap.n(), rng);
        const Vec d = test::random_image_direction(geom, rng);
        const ConsistentSample sample = sample_consistent(snap, geom, x, rng);

        const double boundary_or_inside = unif(rng) < 0.5 ? 1.0 : unif(rng);
        const double k_ball = boundary_or_inside * ball_radius(geom, snap, x_norm);
        const double k_adv = boundary_or_inside * direction_gain(geom, snap, x_norm, d);
        CHECK(admits_velocity(sample, Vec(snap.f0 + k_ball * d)));
        CHECK(admits_velocity(sample, Vec(snap.f0 + k_adv * d)));
        ++checked;
    }
    CHECK(checked == 500);
}

TEST_CASE("direction gain dominates the ball radius when the input matrix is invertible") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Index n = trial % 2 == 0 ? 2 : 3;
        DynamicsSnapshot snap;
        snap.g0 = sample_gaussian(n, n, rng);
        snap.f0 = Vec::Zero(n);
        snap.lf = 0.5 + unif(rng);
        snap.lg = 0.5 + unif(rng);
        const GvsGeometry geom = geometry(snap);
        if (geom.rank < n) continue;
        const double x_norm = geom.validity_radius * unif(rng);
        for (int k = 0; k < 20; ++k) {
            const Vec d = sample_unit_sphere(n, rng);
            CHECK(direction_gain(geom, snap, x_norm, d) >=
                  ball_radius(geom, snap, x_norm) - 1e-9);
        }
    }
}

TEST_CASE("the rewritten direction-gain denominator is never negative") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const DynamicsSnapshot snap = test::random_snapshot(rng);
        const GvsGeometry geom = geometry(snap);
        const double x_norm = geom.validity_radius * unif(rng);
        const Vec d = test::random_image_direction(geom, rng);
        const double pinv_d = (geom.pinv * d).norm();
        const double pinv_norm = 1.0 / geom.sigma_r;
        const double denominator = geom.sigma_r * pinv_d +
                                   (geom.mu * pinv_norm - pinv_d) * snap.lg * x_norm;
        CHECK(denominator >= -1e-12);
    }
}

TEST_CASE("ball radius and axis gains shrink monotonically to zero") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 50; ++trial) {
        const DynamicsSnapshot snap = test::random_snapshot(rng);
        const GvsGeometry geom = geometry(snap);
        double previous_radius = std::numeric_limits<double>::infinity();
        Vec previous_gains =
            Vec::Constant(snap.n(), std::numeric_limits<double>::infinity());
        const int steps = 32;
        for (int k = 0; k <= steps; ++k) {
            const double s =
                k == steps ? geom.validity_radius : geom.validity_radius * k / steps;
            const double radius = ball_radius(geom, snap, s);
            const Vec gains = axis_gains(geom, snap, s);
            CHECK(radius <= previous_radius + 1e-12);
            for (Index i = 0; i < snap.n(); ++i) CHECK(gains(i) <= previous_gains(i) + 1e-12);
            previous_radius = radius;
            previous_gains = gains;
        }
        CHECK(previous_radius == 0.0);
        CHECK(previous_gains.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("joint scaling of the input matrix and both bounds rescales the gains") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const DynamicsSnapshot snap = test::random_snapshot(rng);
        const GvsGeometry geom = geometry(snap);
        const double c = 0.25 + 4.0 * unif(rng);
        DynamicsSnapshot scaled = snap;
        scaled.g0 *= c;
        scaled.lf *= c;
        scaled.lg *= c;
        const GvsGeometry scaled_geom = geometry(scaled);

        CHECK(scaled_geom.validity_radius ==
              doctest::Approx(geom.validity_radius).epsilon(1e-9));

        const double x_norm = geom.validity_radius * unif(rng);
        const Vec d = test::random_image_direction(geom, rng);
        CHECK(ball_radius(scaled_geom, scaled, x_norm) ==
              doctest::Approx(c * ball_radius(geom, snap, x_norm)).epsilon(1e-9));
        CHECK(direction_gain(scaled_geom, scaled, x_norm, d) ==
              doctest::Approx(c * direction_gain(geom, snap, x_norm, d)).epsilon(1e-9));
        const Vec gains = axis_gains(geom, snap, x_norm);
        const Vec scaled_gains = axis_gains(scaled_geom, scaled, x_norm);
        for (Index i = 0; i < snap.n(); ++i) {
            CHECK(scaled_gains(i) == doctest::Approx(c * gains(i)).epsilon(1e-9));
        }
    }
}
