#include <doctest.h>

#include <bit>
#include <cstdint>
#include <sstream>

#include "borsuk/oracles.hpp"

using namespace borsuk;

namespace {

// Maximum independent set by plain subset enumeration; only for |V| <= 20.
std::int64_t brute_force_family(int n, int k, int t) {
    const auto v = enumerate_V(n, k);
    const std::size_t size = v.size();
    REQUIRE(size <= 20);
    std::vector<std::uint32_t> conflicts(size, 0);
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            if (i != j && intersection_size(v[i], v[j]) == t) {
                conflicts[i] |= 1u << j;
            }
        }
    }
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << size); ++mask) {
        const int bits = std::popcount(mask);
        if (bits <= best) {
            continue;
        }
        bool independent = true;
        for (std::size_t i = 0; i < size && independent; ++i) {
            if ((mask >> i & 1u) && (conflicts[i] & mask)) {
                independent = false;
            }
        }
        if (independent) {
            best = bits;
        }
    }
    return best;
}

std::int64_t choose(int n, int k) {
    return static_cast<std::int64_t>(binomial_exact(n, k));
}

}  // namespace

TEST_CASE("distance law examples") {
    CHECK(verify_distance_law({5, 2, 2.0, Rational(-1, 2)}).passed());
    CHECK(verify_distance_law({9, 4, 1.0, Rational(-1, 3)}).passed());
    CHECK(verify_distance_law({8, 3, 7.0, Rational(0)}).passed());
    const auto report = verify_distance_law({9, 4, 1.0, Rational(-1, 3)});
    CHECK(report.max_error <= 1e-9);
    CHECK(report.oracle_name == "distance_law");
}

TEST_CASE("distance law fails on a corrupted form") {
    const Parameters params{7, 3, 2.0, Rational(-1, 3)};
    QuadraticForm corrupted = quadratic_coefficients(params);
    corrupted.b = -corrupted.b;
    const auto report = verify_distance_law(params, kDefaultEnumerationCap, corrupted);
    CHECK(report.status == OracleStatus::failed);
    CHECK(report.max_error > 1e-3);

    QuadraticForm shifted = quadratic_coefficients(params);
    shifted.c += 1e-6;
    CHECK_FALSE(verify_distance_law(params, kDefaultEnumerationCap, shifted).passed());
}

TEST_CASE("distance law respects the enumeration cap") {
    CHECK_THROWS_AS(verify_distance_law({29, 9, 3.0, Rational(-1, 3)}), EnumerationCapExceeded);
    CHECK_THROWS_AS(verify_distance_law({9, 4, 3.0, Rational(-1, 3)}, 100), EnumerationCapExceeded);
}

TEST_CASE("diameter realization after adjustment") {
    const double lambda7 = adjust_lambda(7, 3, 2.0, -0.5, 1);
    const auto r7 = verify_diameter_realization({7, 3, 2.0, Rational::from_double(lambda7)}, 1);
    CHECK(r7.passed());
    CHECK_FALSE(r7.witnesses.empty());

    const double lambda9 = adjust_lambda(9, 4, 3.0, -0.5, 2);
    CHECK(verify_diameter_realization({9, 4, 3.0, Rational::from_double(lambda9)}, 2).passed());
}

TEST_CASE("diameter realization fails away from the vertex") {
    // At lambda = -1/2 the (9,4) vertex is 7/4, far from t1 = 0 and t1 = 4.
    const auto report = verify_diameter_realization({9, 4, 3.0, Rational(-1, 2)}, 0);
    CHECK(report.status == OracleStatus::failed);
    CHECK_FALSE(verify_diameter_realization({9, 4, 3.0, Rational(-1, 2)}, 4).passed());
    // Vertex 1/2: t = 0 and t = 1 tie, t = 3 does not attain the diameter.
    CHECK_FALSE(verify_diameter_realization({9, 4, 2.0, Rational(0)}, 3).passed());
}

TEST_CASE("fw_max_family examples") {
    CHECK(fw_max_family(5, 2, 0) == 4);
    const auto f731 = fw_max_family(7, 3, 1);
    CHECK(f731 <= 7);
    CHECK(f731 >= 1);
    CHECK(fw_max_family(4, 2, 2) == 6);
    CHECK_THROWS_AS(fw_max_family(10, 5, 1), FamilySolverCapExceeded);
    CHECK_THROWS_AS(fw_max_family(5, 6, 1), std::domain_error);
}

TEST_CASE("fw_max_family agrees with subset enumeration") {
    for (auto [n, k] : {std::pair{4, 2}, std::pair{5, 2}, std::pair{6, 2}, std::pair{6, 3},
                        std::pair{5, 3}}) {
        for (int t = 0; t <= k; ++t) {
            INFO("n=" << n << " k=" << k << " t=" << t);
            CHECK(fw_max_family(n, k, t) == brute_force_family(n, k, t));
        }
    }
}

TEST_CASE("Frankl-Wilson bound holds on every in-cap instance") {
    int instances = 0;
    for (int n = 5; n <= 20; ++n) {
        for (int k = 2; 2 * k < n; ++k) {
            if (choose(n, k) > kFamilySolverCap) {
                continue;
            }
            for (int t = 0; 2 * t < k; ++t) {
                if (!is_prime_power(k - t)) {
                    continue;
                }
                INFO("n=" << n << " k=" << k << " t=" << t);
                CHECK(fw_max_family(n, k, t) <= choose(n, k - t - 1));
                ++instances;
            }
        }
    }
    CHECK(instances >= 20);
}

TEST_CASE("pigeonhole chain") {
    SUBCASE("(7,3,2) with t1 = 1") {
        const auto report = verify_pigeonhole_chain({7, 3, 2.0, Rational(-1, 2)});
        CHECK(report.passed());
        bool parts_witness = false;
        for (const auto& w : report.witnesses) {
            if (w.rfind("parts >= ", 0) == 0) {
                parts_witness = std::stoi(w.substr(9)) >= 5;
            }
        }
        CHECK(parts_witness);
    }
    SUBCASE("(5,2) is skipped") {
        const auto report = verify_pigeonhole_chain({5, 2, 2.0, Rational(-1, 2)});
        CHECK(report.status == OracleStatus::skipped);
        CHECK(report.detail.find("t1_existence") != std::string::npos);
    }
    SUBCASE("(9,4) at a certified lambda") {
        bool any = false;
        for (int j = 0; j <= 32 && !any; ++j) {
            const Parameters params{9, 4, 2.0, Rational(-j, 64)};
            if (std::holds_alternative<BoundCertificate>(theorem1_bound(params))) {
                CHECK(verify_pigeonhole_chain(params).passed());
                any = true;
            }
        }
        CHECK(any);
    }
    SUBCASE("a t1 without the hypotheses is refused") {
        const auto report = verify_pigeonhole_chain({7, 3, 2.0, Rational(-1, 2)}, 2);
        CHECK(report.status == OracleStatus::failed);
    }
}

TEST_CASE("census and counts") {
    SUBCASE("(9,4) all pairs") {
        const auto report = verify_census_and_counts({9, 4, 2.0, Rational(-1, 3)}, 0, 1, 200);
        CHECK(report.passed());
    }
    SUBCASE("lambda = -1/2 collisions do not disturb the counts") {
        CHECK(verify_census_and_counts({9, 4, 2.0, Rational(-1, 2)}, 0, 1, 200).passed());
        CHECK(verify_census_and_counts({8, 3, 2.0, Rational(0)}, 0, 1, 200).passed());
    }
    SUBCASE("sampled above the exhaustive limit") {
        CHECK(verify_census_and_counts({12, 5, 2.0, Rational(-1, 3)}, 300, 7).passed());
    }
    SUBCASE("every instance with C(n,k) <= 150") {
        for (int n = 2; n <= 150; ++n) {
            for (int k = 1; 2 * k <= n; ++k) {
                if (choose(n, k) > 150) {
                    break;
                }
                REQUIRE(verify_census_and_counts({n, k, 2.0, Rational(-1, 3)}, 0, 1, 150).passed());
            }
        }
    }
    SUBCASE("a corrupted table is caught") {
        const auto swapped = [](int n, int k, int t) {
            auto m = pair_type_counts(n, k, t);
            std::swap(m[0][1], m[1][0]);
            m[0][2] += 1;
            return m;
        };
        const auto report = verify_census_and_counts({7, 3, 2.0, Rational(-1, 3)}, 0, 1, 150,
                                                     kDefaultEnumerationCap, swapped);
        CHECK(report.status == OracleStatus::failed);
        CHECK_FALSE(report.witnesses.empty());
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(verify_census_and_counts({7, 4, 2.0, Rational(-1, 3)}, 10, 1),
                        std::domain_error);
    }
}

TEST_CASE("quick batch passes and contains its negative controls") {
    const auto reports = run_oracle_batch({});
    CHECK(batch_passed(reports));
    int negative = 0;
    int chains = 0;
    for (const auto& r : reports) {
        if (r.oracle_name.rfind("negative_control.", 0) == 0) {
            ++negative;
            CHECK(r.passed());
        }
        if (r.oracle_name == "pigeonhole_chain") {
            ++chains;
        }
        CHECK(r.status != OracleStatus::failed);
    }
    CHECK(negative >= 5);
    CHECK(chains == 3);

    std::ostringstream summary;
    write_oracle_summary(summary, reports);
    CHECK(summary.str().find("status = pass") != std::string::npos);
    std::ostringstream log;
    write_oracle_log(log, reports);
    std::istringstream lines(log.str());
    std::size_t report_lines = 0;
    for (std::string line; std::getline(lines, line);) {
        report_lines += line.rfind("    witness: ", 0) != 0;
    }
    CHECK(report_lines == reports.size());
}

TEST_CASE("batch fails when b has the wrong sign") {
    BatchOptions options;
    options.fault = Fault::flip_b_sign;
    const auto reports = run_oracle_batch(options);
    CHECK_FALSE(batch_passed(reports));
}

TEST_CASE("batch output does not depend on parallelism") {
    BatchOptions one;
    BatchOptions three;
    three.parallelism = 3;
    std::ostringstream a;
    std::ostringstream b;
    write_oracle_log(a, run_oracle_batch(one));
    write_oracle_log(b, run_oracle_batch(three));
    CHECK(a.str() == b.str());
}
