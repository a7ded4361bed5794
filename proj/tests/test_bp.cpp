#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdt/bp_vector.hpp"
#include "pdt/container.hpp"
#include "pdt/errors.hpp"
#include "test_util.hpp"

using namespace pdt;
using namespace pdt::testing;

namespace {

void check_against_oracle(const BpVector& bp)
{
    const auto mate = stack_mates(bp.bits());
    for (uint64_t p = 0; p < bp.size(); ++p) {
        if (mate[p] == ~uint64_t(0)) continue;
        if (bp.is_open(p)) {
            if (bp.find_close(p) != mate[p]) FAIL("find_close(" << p << ") n=" << bp.size());
            if (bp.find_close_bytewise(p) != mate[p]) FAIL("find_close_bytewise(" << p << ")");
        } else {
            if (bp.find_open(p) != mate[p]) FAIL("find_open(" << p << ") n=" << bp.size());
            if (bp.find_open_bytewise(p) != mate[p]) FAIL("find_open_bytewise(" << p << ")");
        }
    }
}

} // namespace

TEST_CASE("excess and mates on (())()")
{
    BpVector bp(from_string("(())()"));
    CHECK(bp.excess(0) == 0);
    CHECK(bp.excess(3) == 1);
    CHECK(bp.excess(6) == 0);
    CHECK(bp.find_close(0) == 3);
    CHECK(bp.find_close(1) == 2);
    CHECK(bp.find_open(3) == 0);
    CHECK(bp.find_open(5) == 4);
    CHECK_THROWS_AS(bp.find_close(2), std::invalid_argument);
    CHECK_THROWS_AS(bp.find_open(0), std::invalid_argument);
    CHECK_THROWS_AS(bp.excess(7), std::out_of_range);
}

TEST_CASE("degenerate sequences")
{
    BpVector empty(BitVector{});
    CHECK(empty.size() == 0);
    CHECK(empty.excess(0) == 0);
    BpVector pair(from_string("()"));
    CHECK(pair.find_close(0) == 1);
    CHECK(pair.find_open(1) == 0);
    BpVector lone(from_string(")"));  // DFUDS of a single node
    CHECK(lone.excess(1) == -1);
}

TEST_CASE("unbalanced input is rejected")
{
    CHECK_THROWS_AS(BpVector(from_string("(()")), BuildError);
    CHECK_THROWS_AS(BpVector(from_string("())(")), BuildError);
    CHECK_THROWS_AS(BpVector(from_string("))")), BuildError);
    CHECK_THROWS_AS(BpVector(from_string("()"), 100), std::invalid_argument);
}

TEST_CASE("mates across block boundaries on long nests")
{
    for (uint64_t depth : {63ull, 64ull, 65ull, 511ull, 512ull, 513ull, 3000ull}) {
        std::string s(depth, '(');
        s += std::string(depth, ')');
        s += "()";
        for (uint64_t block : {64ull, 128ull, 512ull}) check_against_oracle(BpVector(from_string(s), block));
    }
}

TEST_CASE("random balanced sequences match the stack oracle")
{
    Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        const uint64_t pairs = 1 + rng() % 5000;
        const uint64_t block = uint64_t(64) << (rng() % 4);
        check_against_oracle(BpVector(to_bits(random_dyck(pairs, rng)), block));
        check_against_oracle(BpVector(to_bits(random_dfuds(pairs, rng)), block));
    }
}

TEST_CASE("mate involution and excess law")
{
    Rng rng(32);
    BpVector bp(to_bits(random_dyck(100000, rng)));
    for (uint64_t i = 0; i < bp.size(); ++i) {
        if (!bp.is_open(i)) continue;
        const uint64_t j = bp.find_close(i);
        if (bp.find_open(j) != i) FAIL("involution at " << i);
        if (bp.excess(j + 1) != bp.excess(i)) FAIL("excess law at " << i);
        // Equal numbers of '(' and ')' between mates.
        const uint64_t opens = bp.rank_select().rank1(j) - bp.rank_select().rank1(i + 1);
        if (2 * opens != j - i - 1) FAIL("double counting at " << i);
    }
}

TEST_CASE("min-only tree locates the block of the answer")
{
    Rng rng(33);
    for (int t = 0; t < 50; ++t) {
        BpVector bp(to_bits(rng() % 2 ? random_dyck(20000, rng) : random_dfuds(20000, rng)), 64);
        const auto mate = stack_mates(bp.bits());
        const uint64_t B = bp.block_bits();
        // Tree invariants: leaf min is the min over the closed block interval.
        for (uint64_t b = 0; b < bp.num_blocks(); ++b) {
            int64_t m = bp.excess(b * B);
            for (uint64_t p = b * B + 1; p <= std::min((b + 1) * B, bp.size()); ++p) m = std::min(m, bp.excess(p));
            REQUIRE(bp.block_min(b) == m);
            REQUIRE(bp.block_start_excess(b) == bp.excess(b * B));
        }
        for (uint64_t i = 0; i < bp.size(); ++i) {
            if (mate[i] == ~uint64_t(0)) continue;
            if (bp.is_open(i) && mate[i] / B != i / B) {
                const auto nb = bp.next_block_reaching(i / B, bp.excess(i));
                if (!nb || *nb != mate[i] / B) FAIL("forward block for " << i);
            }
            if (!bp.is_open(i) && mate[i] / B != i / B) {
                const auto pb = bp.prev_block_reaching(i / B, bp.excess(i + 1));
                if (!pb || *pb != mate[i] / B) FAIL("backward block for " << i);
            }
        }
    }
}

TEST_CASE("bp container round trip")
{
    Rng rng(34);
    BpVector bp(to_bits(random_dfuds(30000, rng)), 256);
    ContainerWriter w(StructureKind::string_dictionary);
    bp.save(w, "bp");
    const auto bytes = w.serialize();
    auto r = ContainerReader::from_bytes(bytes);
    BpVector bp2 = BpVector::load(r, "bp");
    CHECK(bp2.block_bits() == 256);
    for (uint64_t i = 0; i < bp.size(); ++i)
        if (bp.is_open(i)) REQUIRE(bp2.find_close(i) == bp.find_close(i));
    ContainerWriter w2(StructureKind::string_dictionary);
    bp2.save(w2, "bp");
    CHECK(w2.serialize() == bytes);
}
