#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "tqsim/spectra.hpp"
#include "oracles.hpp"

using namespace tqsim;

namespace {

const EnergyParams kRef{0.348, 10.158, 0.02, 6.99, 0.0};

}  // namespace

TEST_CASE("eigensystem basics") {
    Eigen::MatrixXcd sz(2, 2);
    sz << 1.0, 0.0, 0.0, -1.0;
    const Eigensystem eig = eigensystem(HermitianOperator(sz));
    CHECK(eig.values(0) == doctest::Approx(-1.0));
    CHECK(eig.values(1) == doctest::Approx(1.0));

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
    d.diagonal() << 3.0, -1.0, 2.0, 0.5;
    const Eigensystem ed = eigensystem(HermitianOperator(d));
    CHECK(ed.values(0) == doctest::Approx(-1.0));
    CHECK(ed.values(3) == doctest::Approx(3.0));
}

TEST_CASE("eigensystem matches the cubic-root reference on random 3x3 matrices") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        Eigen::Matrix3cd m;
        for (int i = 0; i < 3; ++i) {
            m(i, i) = u(rng);
            for (int j = i + 1; j < 3; ++j) {
                m(i, j) = std::complex<double>(u(rng), u(rng));
                m(j, i) = std::conj(m(i, j));
            }
        }
        const Eigensystem eig = eigensystem(HermitianOperator(m));
        const auto roots = oracles::hermitian3_eigenvalues(m);
        for (int i = 0; i < 3; ++i) CHECK(eig.values(i) == doctest::Approx(roots[i]).epsilon(1e-9));
        // Orthonormality.
        const Eigen::MatrixXcd gram =
            eig.vectors.adjoint() * eig.vectors - Eigen::MatrixXcd::Identity(3, 3);
        CHECK(gram.cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("non-Hermitian input is rejected") {
    Eigen::MatrixXcd m(2, 2);
    m << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(HermitianOperator{m}, std::invalid_argument);
}

TEST_CASE("labelling is the identity at zero coupling") {
    EnergyParams p = kRef;
    p.g = 0.0;
    const DriveSystem sys = assemble_system(default_sim_spec(ModelVariant::Gr, 3), p);
    const Eigensystem eig = eigensystem(sys.h0);
    const DressedLabelMap map = dressed_labels(eig.vectors, 6, 3);
    for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 3; ++k)
            CHECK(map.overlap(j, k) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("labelling is unambiguous in the dispersive regime") {
    const DriveSystem sys = assemble_system(default_sim_spec(ModelVariant::Gr, 3), kRef);
    const Eigensystem eig = eigensystem(sys.h0);
    const DressedLabelMap map = dressed_labels(eig.vectors, 6, 3, 2, 2);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) CHECK(map.overlap(j, k) > 0.99);
}

TEST_CASE("labelling raises near qubit-resonator resonance") {
    // Tune the qubit frequency onto the resonator; the hybridized manifolds
    // leave no bare state with a majority overlap.
    EnergyParams p = kRef;
    p.ec = p.omega_r / (std::sqrt(8.0 * kReferenceEjEcRatio) - 1.0);
    p.ej = kReferenceEjEcRatio * p.ec;
    const DriveSystem sys = assemble_system(default_sim_spec(ModelVariant::Gr, 3), p);
    const Eigensystem eig = eigensystem(sys.h0);
    CHECK_THROWS_AS(dressed_labels(eig.vectors, 6, 3), AmbiguousLabel);
}

TEST_CASE("labelling ignores the eigenvector global phase") {
    const DriveSystem sys = assemble_system(default_sim_spec(ModelVariant::Gr, 3), kRef);
    Eigensystem eig = eigensystem(sys.h0);
    const DressedLabelMap a = dressed_labels(eig.vectors, 6, 3);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (Eigen::Index c = 0; c < eig.vectors.cols(); ++c)
        eig.vectors.col(c) *= std::polar(1.0, u(rng));
    const DressedLabelMap b = dressed_labels(eig.vectors, 6, 3);
    for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 3; ++k) {
            CHECK(a.eig_index(j, k) == b.eig_index(j, k));
            CHECK(a.overlap(j, k) == doctest::Approx(b.overlap(j, k)).epsilon(1e-12));
        }
}

TEST_CASE("uncoupled GR features are the closed forms") {
    EnergyParams p = kRef;
    p.g = 0.0;
    const SpectralFeatures f = spectral_features(default_sim_spec(ModelVariant::Gr, 3), p);
    CHECK(f.omega01 == doctest::Approx(std::sqrt(8.0 * p.ec * p.ej) - p.ec).epsilon(1e-12));
    REQUIRE(f.anharmonicity.has_value());
    CHECK(*f.anharmonicity == doctest::Approx(-p.ec).epsilon(1e-12));
}

TEST_CASE("CPB and GR disagree spectrally at the reference ratio") {
    const SpectralFeatures cpb = spectral_features(default_sim_spec(ModelVariant::Cpb, 3), kRef);
    const SpectralFeatures gr = spectral_features(default_sim_spec(ModelVariant::Gr, 3), kRef);
    CHECK(std::abs(cpb.omega01 - gr.omega01) > 0.015);
    CHECK(std::abs(*cpb.anharmonicity - *gr.anharmonicity) > 0.050);
}

TEST_CASE("R features omit the anharmonicity") {
    const SpectralFeatures f = spectral_features(default_sim_spec(ModelVariant::R, 3), kRef);
    CHECK(!f.anharmonicity.has_value());
    CHECK(f.omega01 == doctest::Approx(4.9699).epsilon(2e-4));
}

TEST_CASE("transition table for the diagonal model") {
    EnergyParams p = kRef;
    p.g = 0.0;
    const auto rows = transition_frequencies(default_sim_spec(ModelVariant::Gr, 2), p, 3);
    double w01 = 0.0, w12 = 0.0, tp02 = 0.0;
    for (const Transition& t : rows) {
        if (t.from == 0 && t.to == 1 && !t.two_photon) w01 = t.freq;
        if (t.from == 1 && t.to == 2 && !t.two_photon) w12 = t.freq;
        if (t.from == 0 && t.to == 2 && t.two_photon) tp02 = t.freq;
    }
    CHECK(w12 - w01 == doctest::Approx(-p.ec).epsilon(1e-10));
    CHECK(tp02 == doctest::Approx(w01 - p.ec / 2.0).epsilon(1e-10));
}

TEST_CASE("two-photon frequencies agree between charge-basis and sextic models") {
    const auto get_2ph = [](const std::vector<Transition>& rows) {
        for (const Transition& t : rows)
            if (t.from == 0 && t.to == 2 && t.two_photon) return t.freq;
        return 0.0;
    };
    const double a = get_2ph(transition_frequencies(default_sim_spec(ModelVariant::Cpb, 3),
                                                    kRef, 2));
    const double b = get_2ph(transition_frequencies(default_sim_spec(ModelVariant::Do3, 3),
                                                    kRef, 2));
    const double c = get_2ph(transition_frequencies(default_sim_spec(ModelVariant::Gr, 3),
                                                    kRef, 2));
    // The truncated sextic expansion leaves a ~10 MHz residual here; the
    // diagonal model is off by several times more.
    CHECK(std::abs(a - b) < 0.015);
    CHECK(std::abs(a - b) < 0.25 * std::abs(a - c));
}

TEST_CASE("transition table rejects levels beyond the basis") {
    CHECK_THROWS_AS(transition_frequencies(default_sim_spec(ModelVariant::Gr, 2), kRef, 6),
                    std::invalid_argument);
}

TEST_CASE("constant-frequency sweep holds the GR qubit frequency") {
    const std::vector<double> grid{1, 2, 4};
    const auto rows = ejc_sweep(SweepMode::ConstantFreq, grid, kRef, {ModelVariant::Gr}, 3);
    EnergyParams p = kRef;
    p.g = 0.0;
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::abs((std::sqrt(8.0 * rows[i].ec * rows[i].ej) - rows[i].ec) -
                       (std::sqrt(8.0 * rows[0].ec * rows[0].ej) - rows[0].ec)) < 1e-9);
}

TEST_CASE("constant-anharmonicity sweep holds E_C") {
    EnergyParams base = kRef;
    base.g = 0.0;  // uncoupled so the diagonal anharmonicity is exact
    const std::vector<double> grid{1, 4, 16};
    const auto rows = ejc_sweep(SweepMode::ConstantAnharm, grid, base, {ModelVariant::Gr}, 3);
    for (const EjcSweepRow& r : rows) {
        CHECK(r.ec == doctest::Approx(base.ec));
        CHECK(*r.anharmonicity == doctest::Approx(-base.ec).epsilon(1e-9));
    }
}

TEST_CASE("model spectra converge with growing ratio") {
    const std::vector<double> grid{1, 4};
    const auto rows =
        ejc_sweep(SweepMode::ConstantFreq, grid, kRef, {ModelVariant::Cpb, ModelVariant::Gr}, 3);
    const double gap1 = std::abs(rows[0].omega01 - rows[1].omega01);
    const double gap4 = std::abs(rows[2].omega01 - rows[3].omega01);
    CHECK(gap4 < gap1);
}

TEST_CASE("anharmonicity approaches -E_C at large ratio") {
    const auto rows =
        ejc_sweep(SweepMode::ConstantAnharm, {64.0}, kRef, {ModelVariant::Cpb}, 3);
    CHECK(std::abs(*rows[0].anharmonicity + kRef.ec) / kRef.ec < 0.02);
}

TEST_CASE("sweep rejects a degenerate ratio") {
    CHECK_THROWS_AS(ejc_sweep_point(SweepMode::ConstantFreq, 0.004, kRef),
                    std::invalid_argument);
}

TEST_CASE("closed-form inversion round-trips GR measurements") {
    const SpectralFeatures f = spectral_features(default_sim_spec(ModelVariant::Gr, 3), kRef);
    // Generate synthetic measurements from the defining relations themselves.
    const double w01 = std::sqrt(8.0 * kRef.ec * kRef.ej) - kRef.ec;
    const double w12 = w01 - kRef.ec;
    const double chi = oracles::dispersive_chi(kRef.g, kRef.ec, w01, kRef.omega_r);
    const EnergyParams rec =
        invert_parameters(w01, w12, chi, kRef.omega_r, default_sim_spec(ModelVariant::Gr, 3));
    CHECK(rec.ec == doctest::Approx(kRef.ec).epsilon(1e-10));
    CHECK(rec.ej == doctest::Approx(kRef.ej).epsilon(1e-10));
    CHECK(rec.g == doctest::Approx(kRef.g).epsilon(1e-10));
    (void)f;
}

TEST_CASE("numerical inversion round-trips CPB measurements within 0.1%") {
    const ModelSpec spec = default_sim_spec(ModelVariant::Cpb, 3);
    const SpectralFeatures f = spectral_features(spec, kRef);
    REQUIRE(f.anharmonicity.has_value());
    REQUIRE(f.chi.has_value());
    const EnergyParams rec = invert_parameters(f.omega01, f.omega01 + *f.anharmonicity,
                                               *f.chi, kRef.omega_r, spec);
    CHECK(std::abs(rec.ec - kRef.ec) / kRef.ec < 1e-3);
    CHECK(std::abs(rec.ej - kRef.ej) / kRef.ej < 1e-3);
    CHECK(std::abs(rec.g - kRef.g) / kRef.g < 1e-3);
}

TEST_CASE("inversion flags an inconsistent dispersive-shift sign") {
    const double w01 = 4.97, w12 = w01 - 0.348;
    CHECK_THROWS_AS(
        invert_parameters(w01, w12, +2.9e-5, 6.99, default_sim_spec(ModelVariant::Gr, 3)),
        NegativeDiscriminant);
}
