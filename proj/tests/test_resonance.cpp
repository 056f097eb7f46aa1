#include "doctest.h"

#include "mbt/amplitudes.hpp"
#include "mbt/multibarrier.hpp"
#include "mbt/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace mbt;

namespace {

constexpr double pi = 3.14159265358979323846;

// alpha lives on a circle of circumference pi
double alpha_dist(double a, double b) {
    const double d = std::fabs(a - b);
    return std::min(d, pi - d);
}

const Extremum& nearest(const std::vector<Extremum>& list, double alpha) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < list.size(); ++i)
        if (alpha_dist(list[i].alpha, alpha) < alpha_dist(list[best].alpha, alpha))
            best = i;
    return list[best];
}

} // namespace

TEST_SUITE("resonance") {

TEST_CASE("closed-form extrema at the symmetric tunnelling point") {
    const auto amps = single_barrier(0.5, 1.0);
    const double tt = amps.mod_T_sq;

    SUBCASE("two barriers") {
        const auto ex = extrema_closed_form(2, amps);
        REQUIRE(ex.size() == 2);
        CHECK(ex[0].kind == ExtremumKind::Minimum);
        CHECK(std::fabs(ex[0].alpha) < 1e-15);
        CHECK(std::fabs(ex[0].value - 0.21077109396613054) < 1e-12);
        CHECK(ex[1].kind == ExtremumKind::Maximum);
        CHECK(std::fabs(ex[1].alpha - 0.5 * pi) < 1e-15);
        CHECK(ex[1].value == 1.0);
    }

    SUBCASE("three barriers") {
        const auto ex = extrema_closed_form(3, amps);
        REQUIRE(ex.size() == 4);
        CHECK(std::fabs(ex[0].value - 0.055861437216915119) < 1e-12);
        CHECK(ex[0].kind == ExtremumKind::Minimum);
        CHECK(std::fabs(ex[1].cos_alpha - 0.39663909087319346) < 1e-12);
        CHECK(ex[1].value == 1.0);
        CHECK(std::fabs(ex[2].alpha - 0.5 * pi) < 1e-15);
        CHECK(std::fabs(ex[2].value - tt) < 1e-15);
        CHECK(ex[2].kind == ExtremumKind::Minimum);
        CHECK(std::fabs(ex[3].cos_alpha + 0.39663909087319346) < 1e-12);
        CHECK(ex[3].value == 1.0);
    }

    SUBCASE("four barriers") {
        const auto ex = extrema_closed_form(4, amps);
        REQUIRE(ex.size() == 6);
        CHECK(std::fabs(ex[0].value - 0.013876830629264461) < 1e-12);
        CHECK(std::fabs(ex[1].cos_alpha - 0.56093238168020469) < 1e-12);
        CHECK(ex[1].value == 1.0);
        CHECK(std::fabs(ex[2].cos_alpha - 0.32385446156024408) < 1e-12);
        CHECK(std::fabs(ex[2].value - 0.58886473913298823) < 1e-12);
        CHECK(ex[2].kind == ExtremumKind::Minimum);
        CHECK(std::fabs(ex[3].alpha - 0.5 * pi) < 1e-15);
        CHECK(ex[3].value == 1.0);
        CHECK(std::fabs(ex[4].cos_alpha + 0.32385446156024408) < 1e-12);
        CHECK(std::fabs(ex[5].cos_alpha + 0.56093238168020469) < 1e-12);

        // the band-edge value can also be written 1/(1 + 8|R|^2/|T|^4)^2
        const double b = amps.mod_R_sq;
        const double alt = 1.0 / std::pow(1.0 + 8.0 * b / (tt * tt), 2);
        CHECK(std::fabs(ex[0].value - alt) < 1e-14);
    }
}

TEST_CASE("numeric scan reproduces the closed-form catalogue") {
    for (double epsilon : {0.3, 0.5, 0.7, 1.5}) {
        for (double lambda : {0.5, 1.0, 2.0}) {
            const auto amps = single_barrier(epsilon, lambda);
            for (int n = 2; n <= 4; ++n) {
                CAPTURE(epsilon);
                CAPTURE(lambda);
                CAPTURE(n);
                const auto closed = extrema_closed_form(n, amps);
                const auto scanned = extrema_numeric_scan(n, amps);
                REQUIRE(scanned.size() == closed.size());
                for (const auto& e : closed) {
                    const auto& s = nearest(scanned, e.alpha);
                    CHECK(alpha_dist(s.alpha, e.alpha) < 1e-8);
                    CHECK(std::fabs(s.value - e.value) < 1e-10);
                    CHECK(s.kind == e.kind);
                }
            }
        }
    }
}

TEST_CASE("twin transmission and reflection close to unity") {
    for (double epsilon : {0.5, 1.5}) {
        const auto amps = single_barrier(epsilon, 1.3);
        for (int i = 0; i <= 200; ++i) {
            const double alpha = pi * i / 200.0;
            const double p = wave_probability(2, amps, alpha);
            const double r = wave_reflection_probability(amps, alpha);
            CHECK(std::fabs(p + r - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("rational twin probability equals the squared closed amplitude") {
    const auto amps = single_barrier(0.37, 2.5);
    for (int i = 0; i <= 100; ++i) {
        const double alpha = pi * i / 100.0;
        const double p = wave_probability(2, amps, alpha);
        const double a = std::abs(closed_form_transmission(2, amps, alpha));
        CHECK(std::fabs(p - a * a) < 1e-12);
    }
}

TEST_CASE("above-barrier chains are transparent at the unity maxima") {
    const auto amps = single_barrier(1.5, 1.0);
    for (int n = 2; n <= 4; ++n) {
        for (const auto& e : extrema_closed_form(n, amps)) {
            if (e.kind != ExtremumKind::Maximum) continue;
            CHECK(e.value == 1.0);
            CHECK(std::fabs(wave_probability(n, amps, e.alpha) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("transparent separations at the symmetric point") {
    const std::vector<double> twin = resonance_distances(2, 0.5, 1.0, 3);
    const std::vector<double> want2 = {2.2214414690791831, 6.6643244072375494,
                                       11.107207345395916};
    REQUIRE(twin.size() == want2.size());
    for (std::size_t i = 0; i < twin.size(); ++i)
        CHECK(std::fabs(twin[i] - want2[i]) < 1e-12);

    const std::vector<double> triple = resonance_distances(3, 0.5, 1.0, 2);
    const std::vector<double> want3 = {1.6446506278882088, 2.7982323102701575,
                                       6.0875335660465750, 7.2411152484285237};
    REQUIRE(triple.size() == want3.size());
    for (std::size_t i = 0; i < triple.size(); ++i)
        CHECK(std::fabs(triple[i] - want3[i]) < 1e-12);

    const std::vector<double> quad = resonance_distances(4, 0.5, 1.0, 1);
    const std::vector<double> want4 = {1.3792608540187184, 2.2214414690791831,
                                       3.0636220841396479};
    REQUIRE(quad.size() == want4.size());
    for (std::size_t i = 0; i < quad.size(); ++i)
        CHECK(std::fabs(quad[i] - want4[i]) < 1e-12);

    const auto amps = single_barrier(0.5, 1.0);
    const double k = std::sqrt(0.5);
    for (int n = 2; n <= 4; ++n) {
        for (double d : resonance_distances(n, 0.5, 1.0, 2)) {
            const double p = wave_probability(n, amps, amps.phi + k * d);
            CHECK(std::fabs(p - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("transparent separations away from the symmetric point") {
    const double epsilon = 0.3;
    const double lambda = 1.0;
    const auto amps = single_barrier(epsilon, lambda);
    const double k = std::sqrt(epsilon);
    const auto dist = resonance_distances(3, epsilon, lambda, 2);
    REQUIRE(dist.size() == 4);
    CHECK(std::is_sorted(dist.begin(), dist.end()));
    for (double d : dist) {
        CHECK(d > 0.0);
        CHECK(std::fabs(wave_probability(3, amps, amps.phi + k * d) - 1.0) < 1e-10);
    }
}

TEST_CASE("domain guards") {
    const auto amps = single_barrier(0.5, 1.0);
    CHECK_THROWS_AS((void)wave_probability(5, amps, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)extrema_closed_form(1, amps), std::domain_error);
    CHECK_THROWS_AS((void)extrema_numeric_scan(2, amps, 4), std::domain_error);
    CHECK_THROWS_AS((void)resonance_distances(5, 0.5, 1.0, 1), std::domain_error);
    CHECK_THROWS_AS((void)resonance_distances(3, 1.2, 1.0, 1), std::domain_error);
    CHECK_THROWS_AS((void)resonance_distances(3, 0.5, 1.0, 0), std::domain_error);
}

} // TEST_SUITE
