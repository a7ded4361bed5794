#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdt/container.hpp"
#include "pdt/elias_fano.hpp"
#include "test_util.hpp"

using namespace pdt;
using namespace pdt::testing;

namespace {

std::vector<uint64_t> random_sorted(uint64_t m, uint64_t n, Rng& rng)
{
    std::vector<uint64_t> v(m);
    for (auto& x : v) x = rng() % n;
    std::sort(v.begin(), v.end());
    return v;
}

// 2m + m * ceil(log2(n/m)) + 0.3m + 1024, with the log term floored at 0.
double space_bound(uint64_t m, uint64_t n)
{
    const double mm = double(std::max<uint64_t>(m, 1)), nn = double(std::max<uint64_t>(n, 1));
    const double lg = std::max(0.0, std::ceil(std::log2(nn / mm)));
    return 2 * double(m) + double(m) * lg + 0.3 * double(m) + 1024;
}

} // namespace

TEST_CASE("Elias-Fano examples")
{
    EliasFano empty(std::vector<uint64_t>{}, 10);
    CHECK(empty.size() == 0);
    CHECK_THROWS_AS(empty[0], std::out_of_range);

    const std::vector<uint64_t> v{1, 4, 7, 13};
    EliasFano ef(v, 16);
    CHECK(ef.low_width() == 2);
    CHECK(ef.low(0) == 0b01);
    CHECK(ef.low(1) == 0b00);
    CHECK(ef.low(2) == 0b11);
    CHECK(ef.low(3) == 0b01);
    CHECK(ef.high_part(0) == 0);
    CHECK(ef.high_part(1) == 1);
    CHECK(ef.high_part(2) == 1);
    CHECK(ef.high_part(3) == 3);
    CHECK(ef[3] == 13);

    EliasFano dup(std::vector<uint64_t>{5, 5, 5}, 6);
    CHECK(dup[1] == 5);
    EliasFano one(std::vector<uint64_t>{0}, 1);
    CHECK(one[0] == 0);
    std::vector<uint64_t> id(100);
    for (uint64_t i = 0; i < 100; ++i) id[i] = i;
    EliasFano ident(id, 100);
    for (uint64_t i = 0; i < 100; ++i) CHECK(ident[i] == i);
}

TEST_CASE("Elias-Fano rejects bad input")
{
    CHECK_THROWS_AS(EliasFano(std::vector<uint64_t>{3, 2}, 10), BuildError);
    CHECK_THROWS_AS(EliasFano(std::vector<uint64_t>{3, 10}, 10), BuildError);
}

TEST_CASE("Elias-Fano round trip and space across regimes")
{
    Rng rng(21);
    for (int t = 0; t < 10000; ++t) {
        uint64_t m, n;
        switch (t % 4) {
        case 0: m = rng() % 50; n = 1 + rng() % (uint64_t(1) << 40); break;       // m << n
        case 1: m = rng() % 500; n = std::max<uint64_t>(1, m + rng() % 10); break; // m ~ n
        case 2: m = rng() % 500; n = 1 + rng() % std::max<uint64_t>(1, m / 4 + 1); break; // m > n
        default: m = rng() % 3000; n = 1 + rng() % 100000; break;
        }
        auto v = random_sorted(m, n, rng);
        EliasFano ef(v, n);
        for (uint64_t i = 0; i < m; ++i)
            if (ef[i] != v[i]) FAIL("m=" << m << " n=" << n << " i=" << i);
        CHECK(double(ef.size_in_bits()) <= space_bound(m, n));
    }
}

TEST_CASE("Elias-Fano clustered values use the sampled fallback")
{
    std::vector<uint64_t> v;
    for (uint64_t i = 0; i < 5000; ++i) v.push_back(i < 2500 ? i : 1000000 + i);
    EliasFano ef(v, 2000000);
    CHECK_FALSE(ef.dense_high());
    for (uint64_t i = 0; i < v.size(); ++i) REQUIRE(ef[i] == v[i]);
    CHECK(double(ef.size_in_bits()) <= space_bound(v.size(), 2000000));
}

TEST_CASE("Elias-Fano container round trip")
{
    Rng rng(22);
    auto v = random_sorted(20000, 1 << 24, rng);
    EliasFano ef(v, 1 << 24);
    ContainerWriter w(StructureKind::string_dictionary);
    ef.save(w, "ef");
    auto bytes = w.serialize();
    auto r = ContainerReader::from_bytes(bytes);
    EliasFano ef2 = EliasFano::load(r, "ef");
    for (uint64_t i = 0; i < v.size(); ++i) REQUIRE(ef2[i] == v[i]);
    ContainerWriter w2(StructureKind::string_dictionary);
    ef2.save(w2, "ef");
    CHECK(w2.serialize() == bytes);
}
