#include "advnids/digest.hpp"
#include "advnids/error.hpp"
#include "advnids/matrix.hpp"
#include "advnids/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

using namespace advnids;

TEST_CASE("matmul examples") {
    const auto a = Matrix::from_rows({{1, 2}, {3, 4}});
    CHECK(matmul(Matrix::identity(2), Matrix::from_rows({{3, 4}, {5, 6}})) ==
          Matrix::from_rows({{3, 4}, {5, 6}}));
    CHECK(matmul(a, Matrix(2, 2)) == Matrix(2, 2));
    CHECK(matmul(a, Matrix::from_rows({{5, 6}, {7, 8}})) == Matrix::from_rows({{19, 22}, {43, 50}}));
}

TEST_CASE("matmul shape mismatch") {
    CHECK_THROWS_AS(matmul(Matrix(2, 3), Matrix(2, 3)), ShapeError);
    CHECK_THROWS_AS(matmul_tn(Matrix(2, 3), Matrix(3, 3)), ShapeError);
    CHECK_THROWS_AS(matmul_nt(Matrix(2, 3), Matrix(3, 2)), ShapeError);
}

TEST_CASE("matmul variants agree with the naive product") {
    RngStream rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 1 + rng.bounded(9), k = 1 + rng.bounded(9), n = 1 + rng.bounded(9);
        Matrix a(m, k), b(k, n);
        for (double& v : a.data()) v = rng.uniform(-3, 3);
        for (double& v : b.data()) v = rng.uniform(-3, 3);
        const auto ref = oracle::naive_matmul(a, b);
        CHECK(matmul(a, b) == ref);
        CHECK(matmul_tn(transpose(a), b) == ref);
        CHECK(matmul_nt(a, transpose(b)) == ref);
    }
}

TEST_CASE("identity is exact") {
    RngStream rng(3);
    Matrix a(6, 4);
    for (double& v : a.data()) v = rng.normal() * 1e6;
    CHECK(matmul(Matrix::identity(6), a) == a);
}

TEST_CASE("elementwise examples") {
    CHECK(sign(Matrix::from_rows({{0.3, -0.2, 0.0}})) == Matrix::from_rows({{1, -1, 0}}));
    CHECK(clip(Matrix::from_rows({{-2, 0.5, 2}}), 0, 1) == Matrix::from_rows({{0, 0.5, 1}}));
    CHECK(add(Matrix::from_rows({{1, 1}}), Matrix::from_rows({{2, 3}})) == Matrix::from_rows({{3, 4}}));
    CHECK(sub(Matrix::from_rows({{1, 1}}), Matrix::from_rows({{2, 3}})) == Matrix::from_rows({{-1, -2}}));
    CHECK(mul(Matrix::from_rows({{2, 3}}), Matrix::from_rows({{4, 5}})) == Matrix::from_rows({{8, 15}}));
    CHECK_THROWS_AS(add(Matrix(1, 2), Matrix(2, 1)), ShapeError);
    CHECK_THROWS_AS(clip(Matrix(1, 2), 1, 0), ShapeError);
}

TEST_CASE("sign times magnitude reconstructs, clip bounded and idempotent") {
    RngStream rng(11);
    Matrix a(20, 20);
    for (double& v : a.data()) v = rng.normal() * std::pow(10.0, rng.uniform(-8, 8));
    a(0, 0) = 0.0;
    const auto s = sign(a);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(s.data()[i] * std::abs(a.data()[i]) == a.data()[i]);
    const auto c = clip(a, -0.5, 2.0);
    for (double v : c.data()) CHECK((v >= -0.5 && v <= 2.0));
    CHECK(clip(c, -0.5, 2.0) == c);
}

TEST_CASE("non-finite values are rejected") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Matrix(1, 2, std::vector<double>{1.0, inf}), NumericError);
    CHECK_THROWS_AS(Matrix(1, 2, std::vector<double>{1.0}), ShapeError);
    CHECK_THROWS_AS(scale(Matrix(1, 1, 1e300), 1e300), NumericError);
    CHECK_THROWS_AS(matmul(Matrix(1, 2, 1e300), Matrix(2, 1, 1e300)), NumericError);
}

TEST_CASE("row helpers") {
    const auto a = Matrix::from_rows({{1, 2}, {3, 4}, {5, 6}});
    const std::vector<std::size_t> idx{2, 0};
    CHECK(a.select_rows(idx) == Matrix::from_rows({{5, 6}, {1, 2}}));
    CHECK(a.slice_rows(1, 3) == Matrix::from_rows({{3, 4}, {5, 6}}));
    CHECK(column_sums(a) == Matrix::from_rows({{9, 12}}));
    CHECK(add_row(a, Matrix::from_rows({{10, 20}})) == Matrix::from_rows({{11, 22}, {13, 24}, {15, 26}}));
    CHECK(transpose(a) == Matrix::from_rows({{1, 3, 5}, {2, 4, 6}}));
}

TEST_CASE("shuffle_indices") {
    RngStream r0(42);
    CHECK(shuffle_indices(r0, 0).empty());
    CHECK(shuffle_indices(r0, 1) == std::vector<std::size_t>{0});

    RngStream a(42), b(42);
    const auto p = shuffle_indices(a, 5);
    CHECK(p == shuffle_indices(b, 5));
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("shuffle is close to uniform over permutations of 3") {
    RngStream rng(5);
    std::map<std::vector<std::size_t>, int> counts;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) ++counts[shuffle_indices(rng, 3)];
    CHECK(counts.size() == 6);
    for (const auto& [perm, count] : counts) CHECK(std::abs(count - draws / 6) < 400);
}

TEST_CASE("init_uniform") {
    RngStream r1(9), r2(9);
    const auto a = init_uniform(r1, 30, 30, 0.1);
    for (double v : a.data()) CHECK((v >= -0.1 && v <= 0.1));
    CHECK(a == init_uniform(r2, 30, 30, 0.1));

    RngStream r3(1234);
    const auto big = init_uniform(r3, 100, 100, 1.0);
    const double mean = std::accumulate(big.data().begin(), big.data().end(), 0.0) / 1e4;
    CHECK(std::abs(mean) < 0.02);

    CHECK_THROWS_AS(init_uniform(r3, 2, 2, 0.0), NumericError);
    CHECK_THROWS_AS(init_uniform(r3, 2, 2, -1.0), NumericError);
}

TEST_CASE("rng streams") {
    RngStream a(1), b(1);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream u(2);
    for (int i = 0; i < 10000; ++i) {
        const double v = u.uniform01();
        CHECK((v >= 0.0 && v < 1.0));
        CHECK(u.bounded(7) < 7);
    }

    RngStream n(3);
    double sum = 0, sq = 0;
    for (int i = 0; i < 20000; ++i) {
        const double z = n.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::abs(sum / 20000) < 0.03);
    CHECK(std::abs(sq / 20000 - 1.0) < 0.05);

    RngStream parent(4);
    auto child = parent.split();
    CHECK(child.next_u64() != parent.next_u64());
}

TEST_CASE("digest is stable and sensitive") {
    CHECK(Digest{}.text("abc").hex() == Digest{}.text("abc").hex());
    CHECK(Digest{}.text("abc").hex() != Digest{}.text("abd").hex());
    CHECK(Digest{}.f64(0.0).hex() != Digest{}.f64(-0.0).hex());
    // FNV-1a reference value for the single byte 'a'
    const std::uint8_t a[] = {'a'};
    CHECK(Digest{}.bytes(a).value() == 0xaf63dc4c8601ec8cULL);
}
