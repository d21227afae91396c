#include <doctest.h>

#include <random>

#include "lamhd/spatial_ops.hpp"
#include "test_helpers.hpp"

using namespace lamhd;

TEST_CASE("face derivative: constants vanish, affine fields are exact") {
    const auto grid = LagrangianGrid::make(0.0, 1.0, 10);

    FaceField constant(grid.n_faces(), 3.5);
    for (double v : d_center_of_faces(grid, constant)) CHECK(v == 0.0);

    FaceField linear(grid.n_faces());
    for (std::size_t i = 0; i < grid.n_faces(); ++i) linear[i] = grid.face(i);
    for (double v : d_center_of_faces(grid, linear)) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("face derivative of y^2 equals 2y at cell centers") {
    // dy = 0.1: first cell spans [0, 0.1], centered at 0.05; the centered
    // difference (0.01 - 0)/0.1 = 0.1 = 2 * 0.05 exactly.
    const auto grid = LagrangianGrid::make(0.0, 1.0, 10);
    FaceField f(grid.n_faces());
    for (std::size_t i = 0; i < grid.n_faces(); ++i) f[i] = grid.face(i) * grid.face(i);
    const CenterField d = d_center_of_faces(grid, f);
    CHECK(d[0] == doctest::Approx(0.1).epsilon(1e-13));
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        CHECK(d[i] == doctest::Approx(2.0 * grid.center(i)).epsilon(1e-12));
    }
}

TEST_CASE("center derivative: ghost rules at the boundary") {
    const auto grid = LagrangianGrid::make(-1.0, 1.0, 8);
    const double c = 2.25;
    CenterField g(grid.n_cells, c);

    SUBCASE("zero-gradient ghosts kill all faces for constants") {
        for (double v : d_face_of_centers(grid, g, GhostRule::zero_gradient)) CHECK(v == 0.0);
    }
    SUBCASE("zero-value ghosts leave +-c/dy spikes at the two boundary faces") {
        const FaceField d = d_face_of_centers(grid, g, GhostRule::zero_value);
        CHECK(d.front() == doctest::Approx(c / grid.dy));
        CHECK(d.back() == doctest::Approx(-c / grid.dy));
        for (std::size_t i = 1; i < grid.n_cells; ++i) CHECK(d[i] == 0.0);
    }
    SUBCASE("affine fields give 1 at interior faces") {
        for (std::size_t i = 0; i < grid.n_cells; ++i) g[i] = grid.center(i);
        const FaceField d = d_face_of_centers(grid, g, GhostRule::zero_gradient);
        for (std::size_t i = 1; i < grid.n_cells; ++i) {
            CHECK(d[i] == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("averages: constants, linear fields, alternating signs") {
    const auto grid = LagrangianGrid::make(0.0, 4.0, 4);

    CenterField alternating = {1.0, -1.0, 1.0, -1.0};
    const FaceField a = avg_center_to_face(grid, alternating);
    CHECK(a.front() == 1.0);  // boundary copies the adjacent center
    CHECK(a.back() == -1.0);
    for (std::size_t i = 1; i < grid.n_cells; ++i) CHECK(a[i] == 0.0);

    CenterField lin(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) lin[i] = 3.0 * grid.center(i) - 1.0;
    const FaceField af = avg_center_to_face(grid, lin);
    for (std::size_t i = 1; i < grid.n_cells; ++i) {
        CHECK(af[i] == doctest::Approx(3.0 * grid.face(i) - 1.0).epsilon(1e-14));
    }

    FaceField fconst(grid.n_faces(), -0.75);
    for (double v : avg_face_to_center(grid, fconst)) CHECK(v == -0.75);
}

TEST_CASE("length mismatches are rejected") {
    const auto grid = LagrangianGrid::make(0.0, 1.0, 8);
    FaceField wrong(grid.n_faces() + 1, 0.0);
    CHECK_THROWS_AS((void)d_center_of_faces(grid, wrong), std::invalid_argument);
    CenterField wrong_c(grid.n_cells - 1, 0.0);
    CHECK_THROWS_AS((void)d_face_of_centers(grid, wrong_c, GhostRule::zero_value),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)avg_center_to_face(grid, wrong_c), std::invalid_argument);
    CHECK_THROWS_AS((void)avg_face_to_center(grid, wrong), std::invalid_argument);
}

TEST_CASE("discrete summation by parts holds to round-off on random fields") {
    // sum_faces u * d_face(g, zero-value) * dy == -sum_cells g * d_center(u) * dy
    // whenever u vanishes at the boundary faces.
    const auto grid = LagrangianGrid::make(-2.0, 3.0, 64);
    std::mt19937 rng(20240517);
    for (int trial = 0; trial < 50; ++trial) {
        FaceField u = test::random_field(rng, grid.n_faces());
        u.front() = 0.0;
        u.back() = 0.0;
        const CenterField g = test::random_field(rng, grid.n_cells);

        const FaceField dg = d_face_of_centers(grid, g, GhostRule::zero_value);
        const CenterField du = d_center_of_faces(grid, u);
        double lhs = 0.0;
        for (std::size_t i = 0; i < grid.n_faces(); ++i) lhs += u[i] * dg[i] * grid.dy;
        double rhs = 0.0;
        for (std::size_t i = 0; i < grid.n_cells; ++i) rhs += g[i] * du[i] * grid.dy;
        CHECK(std::abs(lhs + rhs) <= 1e-13 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("derivative operators are linear") {
    const auto grid = LagrangianGrid::make(0.0, 1.0, 33);
    std::mt19937 rng(7);
    const double alpha = 1.375, beta = -0.625;
    for (int trial = 0; trial < 20; ++trial) {
        const FaceField a = test::random_field(rng, grid.n_faces());
        const FaceField b = test::random_field(rng, grid.n_faces());
        FaceField combo(grid.n_faces());
        for (std::size_t i = 0; i < grid.n_faces(); ++i) combo[i] = alpha * a[i] + beta * b[i];

        const CenterField da = d_center_of_faces(grid, a);
        const CenterField db = d_center_of_faces(grid, b);
        const CenterField dc = d_center_of_faces(grid, combo);
        for (std::size_t i = 0; i < grid.n_cells; ++i) {
            CHECK(dc[i] == doctest::Approx(alpha * da[i] + beta * db[i]).epsilon(1e-12));
        }
    }
}
