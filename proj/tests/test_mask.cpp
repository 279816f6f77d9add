#include "effdiff/mask.hpp"

#include "effdiff/bvp.hpp"
#include "effdiff/layered.hpp"
#include "effdiff/pgm.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <string>

using namespace effdiff;

namespace {

std::string temp_path(const char* name) {
    return std::string("effdiff_test_") + name;
}

}  // namespace

TEST_CASE("perfect stripes realize the requested fraction") {
    SynthLayerSpec spec;
    spec.lipid_fraction = 0.1878;
    spec.layer_count = 6;
    spec.width = 256;
    spec.height = 64;
    const PhaseMask mask = synth_layered_mask(spec);
    CHECK(std::abs(mask.lipid_fraction() - spec.lipid_fraction) <= 1.0 / spec.height);
}

TEST_CASE("fraction holds with wobble and gaps; masks are reproducible") {
    SynthLayerSpec spec;
    spec.lipid_fraction = 0.25;
    spec.layer_count = 5;
    spec.wobble = 0.2;
    spec.gap_density = 1.5;
    spec.width = 200;
    spec.height = 80;
    spec.seed = 12;
    const PhaseMask a = synth_layered_mask(spec);
    const PhaseMask b = synth_layered_mask(spec);
    CHECK(a.labels == b.labels);
    CHECK(std::abs(a.lipid_fraction() - spec.lipid_fraction) <= 1.0 / spec.height);

    spec.seed = 13;
    const PhaseMask c = synth_layered_mask(spec);
    CHECK(a.labels != c.labels);
}

TEST_CASE("degenerate fractions are rejected") {
    SynthLayerSpec spec;
    spec.lipid_fraction = 1e-4;  // under one pixel per stripe
    spec.layer_count = 8;
    spec.width = 128;
    spec.height = 32;
    CHECK_THROWS_AS(synth_layered_mask(spec), std::invalid_argument);

    spec.lipid_fraction = 0.9;  // stripes wider than the pitch once wobble is added
    spec.wobble = 0.3;
    CHECK_THROWS_AS(synth_layered_mask(spec), std::invalid_argument);
}

TEST_CASE("mask ingestion maps phases to transformed tensors") {
    PhaseMask mask;
    mask.width = 2;
    mask.height = 2;
    mask.labels = {0, 0, 0, 0};

    SUBCASE("all phase 1") {
        const TensorField f = ingest_mask(mask, SymTensor::isotropic(2, 1e-14),
                                          SymTensor::diag2(1e-12, 1e-10), 1.26e-2);
        for (const SymTensor& t : f.tensors) CHECK(t(0, 0) == 1e-14);
        for (double s : f.sigma) CHECK(s == 1.0);
    }

    SUBCASE("all phase 2 gets d2 / K_p and sigma 1 / K_p") {
        mask.labels = {1, 1, 1, 1};
        const TensorField f = ingest_mask(mask, SymTensor::isotropic(2, 1e-14),
                                          SymTensor::diag2(1e-12, 1e-10), 1.26e-2);
        for (const SymTensor& t : f.tensors) {
            CHECK(t(0, 0) == doctest::Approx(7.9365e-11).epsilon(1e-4));
            CHECK(t(1, 1) == doctest::Approx(7.9365e-9).epsilon(1e-4));
        }
        for (double s : f.sigma) CHECK(s == doctest::Approx(79.365).epsilon(1e-4));
    }
}

TEST_CASE("perfect-stripe ingestion reproduces the harmonic mean estimate") {
    SynthLayerSpec spec;
    spec.lipid_fraction = 0.1878;
    spec.layer_count = 4;
    spec.width = 128;
    spec.height = 8;
    const PhaseMask mask = synth_layered_mask(spec);

    const double p2 = mask.lipid_fraction();  // realized fraction, pixel-exact
    const TensorField field =
        ingest_mask(mask, SymTensor::isotropic(2, 1e-14), SymTensor::diag2(1e-12, 1e-10), 1.0);

    const std::vector<std::pair<double, double>> profile{{1.0 - p2, 1e-14}, {p2, 1e-12}};
    const double reference = harmonic_mean_profile(profile);

    const double length = field.grid.extent[0];
    const EstimationBC bc{1.0, 0.0, 2.0 * reference / length};
    const double estimate = estimate_effective_diffusivity(field, bc);
    CHECK(estimate == doctest::Approx(reference).epsilon(0.02));
    CHECK(reference == doctest::Approx(1.2284e-14).epsilon(0.02));
}

TEST_CASE("PGM round trip is exact in both encodings") {
    SynthLayerSpec spec;
    spec.lipid_fraction = 0.3;
    spec.layer_count = 3;
    spec.width = 64;
    spec.height = 16;
    spec.wobble = 0.1;
    spec.seed = 3;
    const PhaseMask mask = synth_layered_mask(spec);

    for (bool binary : {true, false}) {
        const std::string path = temp_path(binary ? "roundtrip.p5.pgm" : "roundtrip.p2.pgm");
        write_pgm_mask(mask, path, binary);
        const MaskReadResult back = read_pgm_mask(path);
        CHECK(back.binary_source == binary);
        CHECK(back.mask.width == mask.width);
        CHECK(back.mask.height == mask.height);
        CHECK(back.mask.labels == mask.labels);
        CHECK(back.warning.empty());
        std::remove(path.c_str());
    }
}

TEST_CASE("all-white and all-black rasters") {
    const std::string path = temp_path("flat.pgm");

    PhaseMask white;
    white.width = 2;
    white.height = 2;
    white.labels = {0, 0, 0, 0};
    write_pgm_mask(white, path, false);
    CHECK(read_pgm_mask(path).mask.lipid_fraction() == 0.0);

    PhaseMask black = white;
    black.labels = {1, 1, 1, 1};
    write_pgm_mask(black, path, true);
    CHECK(read_pgm_mask(path).mask.lipid_fraction() == 1.0);
    std::remove(path.c_str());
}

TEST_CASE("grayscale content without an explicit threshold records a warning") {
    const std::string path = temp_path("gray.pgm");
    {
        FILE* f = std::fopen(path.c_str(), "wb");
        std::fputs("P2\n# synthetic\n3 1\n255\n0 128 255\n", f);
        std::fclose(f);
    }
    const MaskReadResult implicit = read_pgm_mask(path);
    CHECK_FALSE(implicit.warning.empty());
    CHECK(implicit.mask.at(0, 0) == 1);  // dark -> lipid
    CHECK(implicit.mask.at(2, 0) == 0);

    const MaskReadResult explicit_cut = read_pgm_mask(path, 200);
    CHECK(explicit_cut.warning.empty());
    CHECK(explicit_cut.mask.at(1, 0) == 1);
    std::remove(path.c_str());
}

TEST_CASE("malformed PGM files fail with a byte offset") {
    const std::string path = temp_path("bad.pgm");
    {
        FILE* f = std::fopen(path.c_str(), "wb");
        std::fputs("P5\n4 4\n255\nxx", f);  // truncated raster
        std::fclose(f);
    }
    CHECK_THROWS_AS(read_pgm_mask(path), PgmParseError);

    {
        FILE* f = std::fopen(path.c_str(), "wb");
        std::fputs("Q5\n4 4\n255\n", f);
        std::fclose(f);
    }
    try {
        read_pgm_mask(path);
        FAIL("expected PgmParseError");
    } catch (const PgmParseError& err) {
        CHECK(err.byte_offset == 0);
        CHECK(std::string(err.what()).find("byte") != std::string::npos);
    }
    std::remove(path.c_str());
}
