#include <doctest.h>

#include <cmath>

#include "tqsim/pulse.hpp"
#include "oracles.hpp"

using namespace tqsim;

TEST_CASE("lifted Gaussian endpoints and peak") {
    const Envelope env = Envelope::gaussian(0.003, 142.2, 0.25);
    CHECK(envelope_value(env, 0.0) == 0.0);
    CHECK(envelope_value(env, 142.2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(envelope_value(env, 71.1) == doctest::Approx(0.003).epsilon(1e-12));
}

TEST_CASE("lifted Gaussian quarter-span value") {
    const Envelope env = Envelope::gaussian(1.0, 142.2, 0.25);
    const double expected =
        (std::exp(-0.5) - std::exp(-2.0)) / (1.0 - std::exp(-2.0));
    CHECK(envelope_value(env, 142.2 / 4.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.5449).epsilon(1e-4));
}

TEST_CASE("square envelope value and derivative") {
    const Envelope env = Envelope::square(0.19, 5.0);
    CHECK(envelope_value(env, 2.5) == doctest::Approx(0.19));
    CHECK(envelope_derivative(env, 2.5) == 0.0);
}

TEST_CASE("times outside the pulse are rejected") {
    const Envelope env = Envelope::gaussian(1.0, 10.0);
    CHECK_THROWS_AS(envelope_value(env, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(envelope_value(env, 10.1), std::invalid_argument);
    CHECK_THROWS_AS(envelope_derivative(env, 10.1), std::invalid_argument);
}

TEST_CASE("Gaussian derivative symmetry and finite-difference agreement") {
    const Envelope env = Envelope::gaussian(0.007, 142.2);
    CHECK(envelope_derivative(env, 71.1) == doctest::Approx(0.0).epsilon(1e-15));
    for (double t : {10.0, 35.0, 60.0, 100.0, 130.0}) {
        CHECK(envelope_derivative(env, t) ==
              doctest::Approx(-envelope_derivative(env, 142.2 - t)).epsilon(1e-10));
        const double fd = oracles::central_diff(
            [&](double x) { return envelope_value(env, x); }, t, 1e-4);
        CHECK(envelope_derivative(env, t) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("drive signal is linear in its components") {
    const DriveComponent a{Envelope::gaussian(0.004, 20.0), 5.0, 0.3};
    const DriveComponent b{Envelope::square(0.002, 20.0), 4.7, 0.0};
    for (double t : {0.0, 3.7, 10.0, 19.2}) {
        CHECK(drive_signal({a, b}, t) ==
              doctest::Approx(drive_signal({a}, t) + drive_signal({b}, t)).epsilon(1e-12));
    }
    const DriveComponent ga{Envelope::gaussian(0.004, 20.0), 5.0, 0.0};
    CHECK(drive_signal({ga}, 0.0) == 0.0);
}

TEST_CASE("DRAG quadrature vanishes at the envelope peak") {
    const DriveComponent d{Envelope::drag_gaussian(0.02, 20.0, 1.5), 5.0, 0.0};
    const double t = 10.0;
    const double expected = envelope_value(d.envelope, t) * std::cos(kTwoPi * 5.0 * t);
    CHECK(drive_signal({d}, t) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("zero-beta DRAG is pointwise the plain Gaussian") {
    const DriveComponent drag{Envelope::drag_gaussian(0.02, 20.0, 0.0), 5.0, 0.1};
    const DriveComponent gauss{Envelope::gaussian(0.02, 20.0), 5.0, 0.1};
    for (double t = 0.0; t <= 20.0; t += 0.37)
        CHECK(drive_signal({drag}, t) == doctest::Approx(drive_signal({gauss}, t)).epsilon(1e-14));
}

TEST_CASE("invalid envelopes are rejected") {
    Envelope env = Envelope::gaussian(1.0, 0.0);
    CHECK_THROWS_AS(envelope_value(env, 0.0), std::invalid_argument);
    env = Envelope::gaussian(1.0, 10.0, -0.2);
    CHECK_THROWS_AS(envelope_value(env, 1.0), std::invalid_argument);
}
