#include <cmath>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "dcpose/errors.hpp"
#include "dcpose/geom/camera.hpp"
#include "dcpose/geom/mesh_io.hpp"
#include "dcpose/geom/pose.hpp"
#include "dcpose/geom/primitives.hpp"

using namespace dcpose;

TEST_CASE("pose construction validates rotations") {
  CHECK_NOTHROW(Pose(Mat3::Identity(), Vec3::Zero()));
  Mat3 scaled = Mat3::Identity() * 1.001;
  CHECK_THROWS_AS(Pose(scaled, Vec3::Zero()), NotARotation);
  Mat3 reflect = Mat3::Identity();
  reflect(2, 2) = -1.0;  // orthonormal but det -1
  CHECK_THROWS_AS(Pose(reflect, Vec3::Zero()), NotARotation);
}

TEST_CASE("quaternion scalar part is non-negative") {
  UnitQuaternion q(-1.0, 0.0, 0.0, 0.0);
  CHECK(q.w == doctest::Approx(1.0));
  UnitQuaternion r(-0.5, 0.5, 0.5, 0.5);
  CHECK(r.w >= 0.0);
  CHECK(r.x == doctest::Approx(-0.5));
  CHECK_THROWS_AS(UnitQuaternion(0.0, 0.0, 0.0, 0.0), NotARotation);
}

TEST_CASE("rotation <-> quaternion round-trip over 1e5 random rotations") {
  std::mt19937_64 rng(20240901);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    Eigen::Quaterniond q(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    q.normalize();
    const Mat3 R = q.toRotationMatrix();
    const Mat3 back = rotation_of(quat_of(R));
    worst = std::max(worst, (back - R).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("quat_of rejects non-rotations") {
  Mat3 bad = Mat3::Identity();
  bad(0, 1) = 0.01;
  CHECK_THROWS_AS(quat_of(bad), NotARotation);
}

TEST_CASE("projection rejects non-positive depth") {
  CameraIntrinsics K{500.0, 500.0, 320.0, 240.0, 640, 480};
  CHECK_THROWS_AS(project(K, Vec3(0.0, 0.0, 0.0)), NonPositiveDepth);
  CHECK_THROWS_AS(project(K, Vec3(0.1, 0.1, -1.0)), NonPositiveDepth);
  const Vec2 uv = project(K, Vec3(0.1, -0.2, 2.0));
  CHECK(uv.x() == doctest::Approx(320.0 + 500.0 * 0.05));
  CHECK(uv.y() == doctest::Approx(240.0 - 500.0 * 0.1));
}

TEST_CASE("projection is invariant to scaling the camera-frame point") {
  CameraIntrinsics K{450.0, 460.0, 315.0, 245.0, 640, 480};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 x(unif(rng), unif(rng), 1.0 + std::abs(unif(rng)));
    const double s = scale(rng);
    const Vec2 a = project(K, x);
    const Vec2 b = project(K, Vec3(s * x));
    CHECK((a - b).norm() < 1e-9);
  }
}

TEST_CASE("projection jacobian matches central differences") {
  CameraIntrinsics K{500.0, 480.0, 320.0, 240.0, 640, 480};
  const Vec3 x(0.12, -0.07, 1.7);
  const auto J = project_jacobian(K, x);
  const double h = 1e-6;
  for (int c = 0; c < 3; ++c) {
    Vec3 hi = x, lo = x;
    hi[c] += h;
    lo[c] -= h;
    const Vec2 fd = (project(K, hi) - project(K, lo)) / (2.0 * h);
    CHECK((fd - J.col(c)).norm() < 1e-5);
  }
}

TEST_CASE("backproject inverts project up to depth") {
  CameraIntrinsics K{500.0, 480.0, 320.0, 240.0, 640, 480};
  const Vec3 x(0.3, -0.1, 2.5);
  const Vec3 ray = backproject(K, project(K, x));
  CHECK((ray * x.z() - x).norm() < 1e-12);
}

TEST_CASE("perturbation with a zero delta is the identity") {
  const Mat3 R = random_rotation(99);
  const Pose P(R, Vec3(0.1, -0.2, 1.5));
  const Pose Q = perturb(P, Vec6::Zero());
  CHECK((Q.R - P.R).norm() < 1e-15);
  CHECK((Q.t - P.t).norm() == 0.0);
}

TEST_CASE("perturbation is first-order in the body frame") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Pose P(random_rotation(1000 + i), Vec3(unif(rng), unif(rng), unif(rng)));
    Vec6 d;
    for (int k = 0; k < 6; ++k) d[k] = 1e-3 * unif(rng);
    const Pose Q = perturb(P, d);
    const Mat3 first_order = P.R * (Mat3::Identity() + skew(d.head<3>()));
    CHECK((Q.R - first_order).cwiseAbs().maxCoeff() < 1e-5);
    CHECK((Q.t - (P.t + d.tail<3>())).norm() < 1e-15);
  }
}

TEST_CASE("perturbation composes rotations in the body frame") {
  const Pose P(random_rotation(5), Vec3(0.0, 0.0, 1.0));
  Vec6 d = Vec6::Zero();
  d.head<3>() = Vec3(0.0, 0.0, 0.4);
  const Pose Q = perturb(P, d);
  const Mat3 expect = P.R * exp_so3(Vec3(0.0, 0.0, 0.4));
  CHECK((Q.R - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pose composition and inverse") {
  const Pose a(random_rotation(11), Vec3(0.1, 0.2, 0.3));
  const Pose b(random_rotation(12), Vec3(-0.3, 0.0, 0.5));
  const Vec3 x(0.4, -0.2, 0.9);
  CHECK((((a * b).apply(x)) - a.apply(b.apply(x))).norm() < 1e-12);
  const Pose id = a * a.inverse();
  CHECK((id.R - Mat3::Identity()).norm() < 1e-12);
  CHECK(id.t.norm() < 1e-12);
}

TEST_CASE("box bbox and diameter") {
  const TriMesh box = make_box(Vec3(0.2, 0.3, 0.4));
  const BBox3 bb = box.bbox();
  CHECK((bb.min() + Vec3(0.1, 0.15, 0.2)).norm() < 1e-15);
  CHECK((bb.max() - Vec3(0.1, 0.15, 0.2)).norm() < 1e-15);
  CHECK(box.diameter() == doctest::Approx(Vec3(0.2, 0.3, 0.4).norm()));
  CHECK(box.triangles.size() == 12);
}

TEST_CASE("icosphere vertex counts and radius") {
  CHECK(make_icosphere(1.0, 0).vertices.size() == 12);
  CHECK(make_icosphere(1.0, 1).vertices.size() == 42);
  CHECK(make_icosphere(1.0, 2).vertices.size() == 162);
  CHECK(make_icosphere(1.0, 3).vertices.size() == 642);
  const TriMesh s = make_icosphere(0.07, 2);
  for (const auto& v : s.vertices) {
    CHECK(v.norm() == doctest::Approx(0.07).epsilon(1e-12));
  }
}

TEST_CASE("taper shrinks the +z end only") {
  const TriMesh box = make_box(Vec3(0.2, 0.2, 0.2));
  const TriMesh t = taper(box, 0.1);
  for (std::size_t i = 0; i < box.vertices.size(); ++i) {
    const Vec3& v0 = box.vertices[i];
    const Vec3& v1 = t.vertices[i];
    CHECK(v1.z() == v0.z());
    if (v0.z() < 0.0) {
      CHECK(v1.x() == v0.x());
    } else {
      CHECK(v1.x() == doctest::Approx(v0.x() * 0.9));
      CHECK(v1.y() == doctest::Approx(v0.y() * 0.9));
    }
  }
}

TEST_CASE("mean nearest-neighbor distance between mesh and its taper") {
  const TriMesh sphere = make_icosphere(0.1, 2);
  CHECK(mean_nn_distance(sphere, sphere) == 0.0);
  const TriMesh t = taper(sphere, 0.1);
  const double d = mean_nn_distance(sphere, t);
  CHECK(d > 0.0);
  CHECK(d < 0.01);
}

TEST_CASE("mesh io round-trips through ply and obj") {
  const TriMesh mesh = make_icosphere(0.05, 1);
  for (const char* name : {"roundtrip_test.ply", "roundtrip_test.obj"}) {
    const std::string path = std::string("./") + name;
    save_mesh(path, mesh);
    const TriMesh back = load_mesh(path);
    REQUIRE(back.vertices.size() == mesh.vertices.size());
    REQUIRE(back.triangles.size() == mesh.triangles.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
      worst = std::max(worst, (mesh.vertices[i] - back.vertices[i]).norm());
    }
    CHECK(worst < 1e-12);
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
      CHECK(mesh.triangles[i] == back.triangles[i]);
    }
    std::remove(path.c_str());
  }
}

TEST_CASE("obj parser handles slash-delimited face references") {
  const std::string path = "./slash_faces.obj";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1 2/2/2 3//3\n", f);
    std::fclose(f);
  }
  const TriMesh m = load_mesh(path);
  CHECK(m.vertices.size() == 3);
  REQUIRE(m.triangles.size() == 1);
  CHECK(m.triangles[0] == std::array<std::uint32_t, 3>{0, 1, 2});
  std::remove(path.c_str());
}

TEST_CASE("crop intrinsics reproject consistently") {
  CameraIntrinsics K{500.0, 510.0, 320.0, 240.0, 640, 480};
  const Vec2 center(300.0, 260.0);
  const double side = 200.0;
  const int out = 128;
  const CameraIntrinsics Kc = crop_intrinsics(K, center, side, out);
  const Vec3 x(0.05, -0.03, 1.2);
  const Vec2 full = project(K, x);
  const Vec2 crop = project(Kc, x);
  const double scale = static_cast<double>(out) / side;
  CHECK(crop.x() == doctest::Approx((full.x() - (center.x() - side / 2)) * scale));
  CHECK(crop.y() == doctest::Approx((full.y() - (center.y() - side / 2)) * scale));
}
