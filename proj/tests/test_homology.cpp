#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hofer/homology.hpp"

using namespace hofer;

TEST_CASE("word length closed form matches the BFS oracle on the full box k<=3") {
    for (int k = 1; k <= 3; ++k) {
        std::vector<long long> c(k, -3);
        for (;;) {
            auto alpha = make_genus0_class(c);
            CAPTURE(k);
            CHECK(word_length_genus0(alpha) == word_length_genus0_bfs(alpha));
            int i = 0;
            while (i < k && c[i] == 3) c[i++] = -3;
            if (i == k) break;
            ++c[i];
        }
    }
}

TEST_CASE("word length basics") {
    CHECK(word_length_genus0(make_genus0_class({0, 0, 0})) == 0);
    CHECK(word_length_genus0(make_genus0_class({1, 1})) == 1);
    CHECK(word_length_genus0(make_genus0_class({2, -3})) == 5);
}

TEST_CASE("word length is a homogeneous subadditive norm (randomized)") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> coeff(-6, 6);
    std::uniform_int_distribution<int> kd(1, 4);
    for (int trial = 0; trial < 500; ++trial) {
        int k = kd(rng);
        std::vector<long long> a(k), b(k);
        for (auto& x : a) x = coeff(rng);
        for (auto& x : b) x = coeff(rng);
        auto ca = make_genus0_class(a), cb = make_genus0_class(b);
        CHECK(word_length_genus0(add(ca, cb)) <=
              word_length_genus0(ca) + word_length_genus0(cb));
        long long n = coeff(rng);
        CHECK(word_length_genus0(scale(ca, n)) == std::abs(n) * word_length_genus0(ca));
    }
}

TEST_CASE("loop decomposition realizes the word length with signed indicators") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> coeff(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
        int k = 1 + static_cast<int>(rng() % 3);
        std::vector<long long> a(k);
        for (auto& x : a) x = coeff(rng);
        auto alpha = make_genus0_class(a);
        auto loops = simple_loop_decomposition_genus0(alpha);
        CHECK(static_cast<long long>(loops.size()) == word_length_genus0(alpha));
        std::vector<long long> sum(k, 0);
        for (const auto& [sign, subset] : loops) {
            CHECK(!subset.empty());
            for (int j : subset) sum[j] += sign;
        }
        CHECK(sum == a);
    }
}

TEST_CASE("torus decomposition") {
    auto [a, b] = decompose_torus(3, 5);
    CHECK(a.coeffs == std::vector<long long>{2, 1});
    CHECK(b.coeffs == std::vector<long long>{1, 4});

    auto [c, d] = decompose_torus(0, 0);
    CHECK(c.coeffs == std::vector<long long>{-1, 1});
    CHECK(d.coeffs == std::vector<long long>{1, -1});
    CHECK(add(c, d).is_zero());

    auto [e, f] = decompose_torus(1, 1);
    CHECK(e.coeffs == std::vector<long long>{0, 1});
    CHECK(f.coeffs == std::vector<long long>{1, 0});
}

TEST_CASE("torus decomposition components are primitive and sum back (randomized)") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> coeff(-20, 20);
    for (int trial = 0; trial < 1000; ++trial) {
        long long n = coeff(rng), m = coeff(rng);
        auto [a, b] = decompose_torus(n, m);
        CHECK(add(a, b).coeffs == std::vector<long long>{n, m});
        CHECK(std::gcd(std::abs(a.coeffs[0]), std::abs(a.coeffs[1])) <= 1);
        CHECK(std::gcd(std::abs(b.coeffs[0]), std::abs(b.coeffs[1])) <= 1);
    }
}

TEST_CASE("punctured torus decomposition") {
    // (m1, m2; n) = (2, 1; 3) over k = 2 meridians
    auto alpha = make_punctured_torus_class({2, 1}, 3);
    auto [a, b] = decompose_punctured_torus(alpha);
    CHECK(a.coeffs == std::vector<long long>{1, 1, 1});
    CHECK(b.coeffs == std::vector<long long>{1, 0, 2});

    auto zero = make_punctured_torus_class({0, 0, 0}, 0);
    auto [c, d] = decompose_punctured_torus(zero);
    CHECK(c.coeffs == std::vector<long long>{-1, 0, 0, 1});
    CHECK(d.coeffs == std::vector<long long>{1, 0, 0, -1});
}

TEST_CASE("punctured torus decomposition sums back (randomized)") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> coeff(-9, 9);
    for (int trial = 0; trial < 1000; ++trial) {
        int k = 1 + static_cast<int>(rng() % 4);
        std::vector<long long> m(k);
        for (auto& x : m) x = coeff(rng);
        auto alpha = make_punctured_torus_class(m, coeff(rng));
        auto [a, b] = decompose_punctured_torus(alpha);
        CHECK(add(a, b) == alpha);
    }
}

TEST_CASE("genus sum decomposition") {
    auto b1 = make_punctured_torus_class({2, 1}, 3);
    auto b2 = make_punctured_torus_class({-1}, 4);
    auto alpha = make_genus_sum_class({b1, b2});
    auto [a, b] = decompose_genus_sum(alpha);
    CHECK(add(a, b) == alpha);
    // single-block input reduces to the punctured-torus formula
    auto single = make_genus_sum_class({b1});
    auto [c, d] = decompose_genus_sum(single);
    auto [e, f] = decompose_punctured_torus(b1);
    CHECK(c.coeffs == e.coeffs);
    CHECK(d.coeffs == f.coeffs);
    // zero class
    auto zero = make_genus_sum_class(
        {make_punctured_torus_class({0, 0}, 0), make_punctured_torus_class({0}, 0)});
    auto [g, h] = decompose_genus_sum(zero);
    CHECK(add(g, h).is_zero());
}

TEST_CASE("l_A bounds: annulus refinement example") {
    auto rep = l_a_bounds(0, 1, 1.0, 0.75, make_genus0_class({4}));
    CHECK(rep.upper.value == doctest::Approx(3.0));
    CHECK(rep.lower.value == doctest::Approx(1.0));
}

TEST_CASE("l_A bounds: displaceable disk") {
    auto rep = l_a_bounds(0, 2, 1.0, 0.3, make_genus0_class({5, -7}));
    CHECK(rep.upper.value == doctest::Approx(0.6));
    CHECK(rep.lower.value == doctest::Approx(0.3));
}

TEST_CASE("l_A bounds: zero class") {
    auto rep = l_a_bounds(0, 2, 1.0, 0.4, make_genus0_class({0, 0}));
    CHECK(rep.lower.value == 0.0);
    CHECK(rep.upper.value == 0.0);
}

TEST_CASE("l_A bounds: simple loop and positive genus routes") {
    auto rep = l_a_bounds(0, 3, 1.0, 0.8, make_genus0_class({1, 1, 0}));
    CHECK(rep.upper.value == doctest::Approx(0.8));  // single simple loop
    auto rep2 = l_a_bounds(2, 0, 1.0, 0.9, make_torus_class(6, 4));
    CHECK(rep2.upper.value == doctest::Approx(1.8));  // positive genus
    auto rep3 = l_a_bounds(1, 0, 1.0, 0.9, make_torus_class(3, 5));
    CHECK(rep3.upper.value == doctest::Approx(0.9));  // primitive, simple loop
}

TEST_CASE("l_A bounds: area normalization carries a scale factor") {
    auto unit = l_a_bounds(0, 1, 1.0, 0.75, make_genus0_class({4}));
    auto scaled = l_a_bounds(0, 1, 2.0, 1.5, make_genus0_class({4}));
    CHECK(scaled.area_scale == doctest::Approx(2.0));
    CHECK(scaled.lower.value == doctest::Approx(unit.lower.value));
    CHECK(scaled.upper.value == doctest::Approx(unit.upper.value));
}

TEST_CASE("bound sandwich on random inputs") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> area_d(0.5, 3.0);
    std::uniform_int_distribution<long long> coeff(-5, 5);
    int nonzero_checked = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        double area = area_d(rng);
        double A = area * std::uniform_real_distribution<double>(0.05, 0.95)(rng);
        int kind = static_cast<int>(rng() % 3);
        BoundReport rep;
        bool zero = false;
        if (kind == 0) {
            int k = 1 + static_cast<int>(rng() % 4);
            std::vector<long long> c(k);
            for (auto& x : c) x = coeff(rng);
            auto alpha = make_genus0_class(c);
            zero = alpha.is_zero();
            rep = l_a_bounds(0, k, area, A, alpha);
        } else if (kind == 1) {
            auto alpha = make_torus_class(coeff(rng), coeff(rng));
            zero = alpha.is_zero();
            rep = l_a_bounds(1, 0, area, A, alpha);
        } else {
            auto alpha = make_punctured_torus_class({coeff(rng), coeff(rng)}, coeff(rng));
            zero = alpha.is_zero();
            rep = l_a_bounds(1, 2, area, A, alpha);
        }
        REQUIRE(rep.lower.value <= rep.upper.value + 1e-12);
        if (!zero) {
            REQUIRE(rep.lower.value >= A / area - 1e-12);
            ++nonzero_checked;
        }
    }
    CHECK(nonzero_checked > 5000);
}

TEST_CASE("bounds reject bad input") {
    CHECK_THROWS_AS(l_a_bounds(0, 1, 1.0, 1.5, make_genus0_class({1})), ConfigError);
    CHECK_THROWS_AS(l_a_bounds(0, 0, 1.0, 0.5, make_genus0_class({})), ConfigError);
    CHECK_THROWS_AS(word_length_genus0(make_torus_class(1, 0)), ConfigError);
}
