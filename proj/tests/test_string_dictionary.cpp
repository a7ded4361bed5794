#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <set>

#include "pdt/container.hpp"
#include "pdt/string_dictionary.hpp"
#include "test_util.hpp"

using namespace pdt;
using namespace pdt::testing;

namespace {

std::vector<std::string_view> views(const std::vector<std::string>& v)
{
    return {v.begin(), v.end()};
}

StringDictionary make(const std::vector<std::string>& keys, DictStrategy s, bool compress = false,
                      uint64_t block_bits = 512)
{
    DictionaryOptions o;
    o.strategy = s;
    o.compress = compress;
    o.block_bits = block_bits;
    return StringDictionary::build(views(keys), o);
}

// Every member maps to a distinct id in [0, n) that access inverts, and
// non-members are rejected.
void check_dictionary(const StringDictionary& d, const std::vector<std::string>& keys,
                      const std::vector<std::string>& absent)
{
    REQUIRE(d.size() == keys.size());
    std::vector<bool> seen(keys.size(), false);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const int64_t id = d.lookup(keys[i]);
        REQUIRE(id >= 0);
        REQUIRE(uint64_t(id) < keys.size());
        REQUIRE(!seen[id]);
        seen[id] = true;
        REQUIRE(d.access(uint64_t(id)) == keys[i]);
        if (d.strategy() == DictStrategy::lex) REQUIRE(uint64_t(id) == i);
    }
    for (const auto& s : absent) REQUIRE(d.lookup(s) == -1);
}

} // namespace

TEST_CASE("three string example, centroid")
{
    const std::vector<std::string> keys = {"bar", "foo", "foobar"};
    const auto d = make(keys, DictStrategy::centroid);
    const std::vector<Symbol> root = {special(1), 'f', 'o', 'o', special(1), terminator};
    CHECK(d.labels().label(0) == root);
    CHECK(d.lookup("foo") == 0);
    CHECK(d.lookup("foobar") == 1);
    CHECK(d.lookup("bar") == 2);
    CHECK(d.access(0) == "foo");
    CHECK(d.access(1) == "foobar");
    CHECK(d.access(2) == "bar");
    CHECK(d.lookup("fo") == -1);
    CHECK(d.lookup("foob") == -1);
    CHECK(d.lookup("") == -1);
    CHECK(d.lookup("baz") == -1);
    CHECK(d.lookup("foobarx") == -1);
    CHECK_THROWS_AS(d.access(3), std::out_of_range);
}

TEST_CASE("three string example, lex")
{
    const std::vector<std::string> keys = {"bar", "foo", "foobar"};
    const auto d = make(keys, DictStrategy::lex);
    CHECK(d.lookup("bar") == 0);
    CHECK(d.lookup("foo") == 1);
    CHECK(d.lookup("foobar") == 2);
    for (uint64_t i = 0; i < 3; ++i) CHECK(d.access(i) == keys[i]);
}

TEST_CASE("degenerate sets")
{
    for (auto s : {DictStrategy::lex, DictStrategy::centroid}) {
        check_dictionary(make({""}, s), {""}, {"a"});
        check_dictionary(make({"only"}, s), {"only"}, {"", "onl", "only!"});
        check_dictionary(make({"", "a", "aa", "aaa"}, s), {"", "a", "aa", "aaa"}, {"b", "aaaa"});
        const std::vector<std::string> bytes = {"\x01", "\x7f", "\x80", "\xff", "\xff\xff"};
        check_dictionary(make(bytes, s), bytes, {"\xfe", "\xff\x01"});
    }
}

TEST_CASE("wide fan-out needs split specials")
{
    // 300 children at the root: more than one special symbol can count.
    std::vector<std::string> keys;
    for (int a = 1; a < 256; ++a) keys.push_back(std::string(1, char(a)));
    for (int a = 1; a < 50; ++a) keys.push_back(std::string(1, char(255)) + char(a));
    keys = sorted_unique(keys);
    for (auto s : {DictStrategy::lex, DictStrategy::centroid}) {
        const auto d = make(keys, s);
        check_dictionary(d, keys, {"", std::string(1, char(255)) + char(60)});
    }
}

TEST_CASE("random sets against the member list")
{
    Rng rng(11);
    for (int round = 0; round < 30; ++round) {
        const std::size_t n = 1 + rng() % 400;
        const auto keys = round % 3 == 0 ? url_strings(n, rng) : random_strings(n, rng, 12, 'a', char('a' + 1 + round % 5));
        const auto absent = non_members(keys, 200, rng);
        const uint64_t block = uint64_t(64) << (rng() % 4);
        for (auto s : {DictStrategy::lex, DictStrategy::centroid})
            for (bool compress : {false, true}) check_dictionary(make(keys, s, compress, block), keys, absent);
    }
}

TEST_CASE("compressed and plain labels give identical answers")
{
    Rng rng(5);
    const auto keys = url_strings(3000, rng);
    const auto absent = non_members(keys, 500, rng);
    for (auto s : {DictStrategy::lex, DictStrategy::centroid}) {
        const auto plain = make(keys, s, false);
        const auto packed = make(keys, s, true);
        CHECK(packed.compressed());
        for (const auto& k : keys) REQUIRE(plain.lookup(k) == packed.lookup(k));
        for (const auto& k : absent) REQUIRE(packed.lookup(k) == -1);
        for (uint64_t i = 0; i < keys.size(); ++i) REQUIRE(plain.access(i) == packed.access(i));
        CHECK(packed.labels().payload_bytes() < plain.labels().payload_bytes());
    }
}

TEST_CASE("centroid height is logarithmic and bounds the lookup walk")
{
    Rng rng(23);
    for (int round = 0; round < 10; ++round) {
        const std::size_t n = 2 + rng() % 2000;
        const auto keys = random_strings(n, rng, 40, 'a', 'c');
        const auto d = make(keys, DictStrategy::centroid);
        const TreeShape shape = d.shape();
        CHECK(shape.nodes == n);
        CHECK(shape.height <= uint64_t(std::bit_width(n) - 1));
        for (const auto& k : keys) {
            LookupTrace t;
            REQUIRE(d.lookup_traced(k, t) >= 0);
            REQUIRE(t.nodes_visited <= shape.height + 1);
            REQUIRE(t.literals_scanned <= k.size() + 1 + t.nodes_visited);
        }
    }
}

TEST_CASE("dfuds_shape on a hand-built tree")
{
    // root with children a, b; a has one child c.
    const auto shape = dfuds_shape(from_string("110" "10" "0" "0"));
    CHECK(shape.nodes == 4);
    CHECK(shape.height == 2);
    CHECK(shape.depth_sum == 0 + 1 + 2 + 1);
    CHECK_THROWS_AS(dfuds_shape(from_string("110")), FormatError);
    CHECK_THROWS_AS(dfuds_shape(from_string("0" "0")), FormatError);
}

TEST_CASE("build rejects bad input")
{
    CHECK_THROWS_AS(StringDictionary::build({}), BuildError);
    std::vector<std::string> unsorted = {"b", "a"};
    CHECK_THROWS_AS(StringDictionary::build(views(unsorted)), BuildError);
    std::vector<std::string> dup = {"a", "a"};
    CHECK_THROWS_AS(StringDictionary::build(views(dup)), BuildError);
    std::vector<std::string> nul = {std::string("a\0b", 3)};
    CHECK_THROWS_AS(StringDictionary::build(views(nul)), InputError);
}

TEST_CASE("serialize, load and reserialize")
{
    Rng rng(3);
    const auto keys = url_strings(1500, rng);
    for (auto s : {DictStrategy::lex, DictStrategy::centroid}) {
        for (bool compress : {false, true}) {
            const auto d = make(keys, s, compress);
            ContainerWriter w(StructureKind::string_dictionary);
            d.save(w);
            const auto bytes = w.serialize();
            const auto loaded = StringDictionary::load(ContainerReader::from_bytes(bytes));
            CHECK(loaded.strategy() == s);
            CHECK(loaded.compressed() == compress);
            CHECK(loaded.size_in_bits() == d.size_in_bits());
            for (uint64_t i = 0; i < keys.size(); i += 7) REQUIRE(loaded.access(i) == d.access(i));
            for (const auto& k : keys) REQUIRE(loaded.lookup(k) == d.lookup(k));
            ContainerWriter again(StructureKind::string_dictionary);
            loaded.save(again);
            CHECK(again.serialize() == bytes);
        }
    }
}

TEST_CASE("load through a file and reject damage")
{
    const std::vector<std::string> keys = {"alpha", "beta", "gamma", "gammaray"};
    const auto d = make(keys, DictStrategy::centroid);
    const std::string path = "test_dict.pdt";
    d.save(path);
    check_dictionary(StringDictionary::load(path), keys, {"gam"});

    ContainerWriter w(StructureKind::hollow_mph);
    d.save(w);
    CHECK_THROWS_AS(StringDictionary::load(ContainerReader::from_bytes(w.serialize())), FormatError);

    ContainerWriter ok(StructureKind::string_dictionary);
    d.save(ok);
    auto bytes = ok.serialize();
    bytes.back() ^= 0x40;
    CHECK_THROWS_AS(StringDictionary::load(ContainerReader::from_bytes(bytes)), FormatError);
    CHECK_NOTHROW(ContainerReader::from_bytes(bytes, false));
    std::remove(path.c_str());
}
