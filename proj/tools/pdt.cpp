// pdt: build and query path-decomposed trie dictionaries and hollow trie hashes.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

#include "pdt/bench.hpp"
#include "pdt/container.hpp"
#include "pdt/corpus.hpp"
#include "pdt/errors.hpp"
#include "pdt/hollow_mph.hpp"
#include "pdt/stats.hpp"
#include "pdt/string_dictionary.hpp"

using namespace pdt;

namespace {

struct Out {
    std::string buf;
    void flush()
    {
        std::fwrite(buf.data(), 1, buf.size(), stdout);
        buf.clear();
    }
    void line(std::string_view s)
    {
        buf.append(s);
        buf.push_back('\n');
        if (buf.size() > (1 << 20)) flush();
    }
    ~Out() { flush(); }
};

bool is_container(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    char magic[4] = {};
    in.read(magic, 4);
    return in && std::string_view(magic, 4) == "PDT1";
}

uint64_t parse_id(const std::string& s, uint64_t line)
{
    std::size_t used = 0;
    uint64_t v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || s[0] == '-')
        throw InputError("line " + std::to_string(line) + ": '" + s + "' is not an id");
    return v;
}

// Either kind of hash structure behind one interface.
struct AnyHash {
    std::optional<HollowTrieMph> centroid;
    std::optional<FlatHollowTrie> flat;

    static AnyHash load(const std::string& path, bool verify)
    {
        const auto reader = ContainerReader::open(path, verify);
        AnyHash h;
        if (reader.kind() == StructureKind::flat_hollow)
            h.flat = FlatHollowTrie::load(reader);
        else
            h.centroid = HollowTrieMph::load(reader);
        return h;
    }
    uint64_t hash(std::string_view s) const { return centroid ? centroid->hash(s) : flat->hash(s); }
    uint64_t size() const { return centroid ? centroid->size() : flat->size(); }
    uint64_t size_in_bits() const { return centroid ? centroid->size_in_bits() : flat->size_in_bits(); }
    TreeShape shape() const { return centroid ? centroid->shape() : flat->shape(); }
};

void print_shape(const TreeShape& t)
{
    std::printf("tree_nodes: %llu\ntree_height: %llu\ntree_avg_height: %.4f\n", (unsigned long long)t.nodes,
                (unsigned long long)t.height, t.average_depth());
}

void print_bench(const char* what, const BenchResult& r)
{
    std::printf("%s_mean_ns: %.1f\n%s_stddev_ns: %.1f\n", what, r.mean_ns, what, r.stddev_ns);
}

std::vector<std::string> sample_members(const std::vector<std::string_view>& keys, uint64_t count, uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::string> q;
    q.reserve(count);
    for (uint64_t i = 0; i < count; ++i) q.emplace_back(keys[rng() % keys.size()]);
    return q;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Path-decomposed trie dictionaries and monotone hashes"};
    app.require_subcommand(1);
    bool no_verify = false;
    app.add_flag("--no-verify", no_verify, "Skip the container checksum when loading");
    uint64_t memory_budget = uint64_t(1) << 30;
    app.add_option("--memory-budget", memory_budget, "Bytes of corpus sorted in memory before spilling to disk");

    // build
    auto* build = app.add_subcommand("build", "Build a string dictionary from a corpus");
    std::string strategy = "centroid", corpus_path, out_path;
    bool compress = false;
    uint32_t repair_k = default_repair_pairs;
    uint64_t block_size = BpVector::default_block_bits;
    build->add_option("--strategy", strategy, "Path decomposition")->check(CLI::IsMember({"lex", "centroid"}));
    build->add_flag("--compress", compress, "Compress labels with the Re-Pair dictionary");
    build->add_option("--repair-k", repair_k, "Pairs substituted per Re-Pair round")->check(CLI::Range(1u, 1u << 20));
    build->add_option("--block-size", block_size, "Range-min block size in bits (power of two >= 64)");
    build->add_option("corpus", corpus_path, "Newline-delimited keys")->required();
    build->add_option("out", out_path, "Output container")->required();

    // lookup / access
    std::string container, queries = "-";
    auto* lookup = app.add_subcommand("lookup", "Print the id of each query line, -1 when absent");
    lookup->add_option("container", container)->required();
    lookup->add_option("queries", queries, "Query file, - for stdin");
    auto* access = app.add_subcommand("access", "Print the string of each id line");
    access->add_option("container", container)->required();
    access->add_option("ids", queries, "Id file, - for stdin");

    // mph
    auto* mph_build = app.add_subcommand("mph-build", "Build a monotone minimal perfect hash");
    bool flat = false;
    mph_build->add_flag("--flat", flat, "Non-decomposed hollow trie baseline");
    mph_build->add_option("--block-size", block_size, "Range-min block size in bits");
    mph_build->add_option("corpus", corpus_path)->required();
    mph_build->add_option("out", out_path)->required();
    auto* mph_hash = app.add_subcommand("mph-hash", "Print the hash of each query line");
    mph_hash->add_option("container", container)->required();
    mph_hash->add_option("queries", queries, "Query file, - for stdin");

    // stats
    auto* stats = app.add_subcommand("stats", "Report heights and space of a corpus or a container");
    std::string target, stats_corpus;
    bool no_hollow = false;
    stats->add_option("input", target, "Corpus or container")->required();
    stats->add_option("--corpus", stats_corpus, "Raw corpus, for the compression ratio of a container");
    stats->add_flag("--no-hollow", no_hollow, "Skip the binary trie figures for a corpus");

    // bench
    auto* bench = app.add_subcommand("bench", "Time random member queries");
    uint64_t bench_queries_n = 1000000, runs = 10, seed = 1;
    bench->add_option("container", container)->required();
    bench->add_option("--corpus", stats_corpus, "Corpus to draw queries from (required for hashes)");
    bench->add_option("--queries", bench_queries_n, "Number of queries");
    bench->add_option("--runs", runs, "Measured runs after one warm-up");
    bench->add_option("--seed", seed);

    // gen-synthetic
    auto* gen = app.add_subcommand("gen-synthetic", "Write the synthetic corpus d^i c^j b^t sigma");
    SyntheticParams sp;
    gen->add_option("-I", sp.i);
    gen->add_option("-J", sp.j);
    gen->add_option("-T", sp.t);
    gen->add_option("-k", sp.k, "Suffix length (<= 100)");
    gen->add_option("out", out_path, "Output file, - for stdout")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    CorpusOptions copts;
    copts.memory_budget = memory_budget;
    const bool verify = !no_verify;
    try {
        if (*build) {
            const auto corpus = Corpus::load(corpus_path, copts);
            DictionaryOptions o;
            o.strategy = strategy == "lex" ? DictStrategy::lex : DictStrategy::centroid;
            o.compress = compress;
            o.repair_pairs = repair_k;
            o.block_bits = block_size;
            const auto d = StringDictionary::build(corpus.keys(), o);
            d.save(out_path);
            std::fprintf(stderr, "%llu keys, %llu bytes\n", (unsigned long long)d.size(),
                         (unsigned long long)d.size_in_bytes());
        } else if (*lookup) {
            const auto d = StringDictionary::load(container, verify);
            Out out;
            for (const auto& q : read_lines(queries)) out.line(std::to_string(d.lookup(q)));
        } else if (*access) {
            const auto d = StringDictionary::load(container, verify);
            Out out;
            uint64_t line = 0;
            for (const auto& q : read_lines(queries)) {
                const uint64_t id = parse_id(q, ++line);
                if (id >= d.size())
                    throw InputError("line " + std::to_string(line) + ": id " + q + " out of range [0, " +
                                     std::to_string(d.size()) + ")");
                out.line(d.access(id));
            }
        } else if (*mph_build) {
            const auto corpus = Corpus::load(corpus_path, copts);
            if (flat) {
                const auto h = FlatHollowTrie::build(corpus.keys(), block_size);
                h.save(out_path);
                std::fprintf(stderr, "%llu keys, %.3f bits/key\n", (unsigned long long)h.size(), h.bits_per_key());
            } else {
                const auto h = HollowTrieMph::build(corpus.keys(), block_size);
                h.save(out_path);
                std::fprintf(stderr, "%llu keys, %.3f bits/key\n", (unsigned long long)h.size(), h.bits_per_key());
            }
        } else if (*mph_hash) {
            const auto h = AnyHash::load(container, verify);
            Out out;
            for (const auto& q : read_lines(queries)) out.line(std::to_string(h.hash(q)));
        } else if (*stats) {
            std::optional<Corpus> raw;
            if (!stats_corpus.empty()) raw = Corpus::load(stats_corpus, copts);
            auto ratio = [&](uint64_t bits) {
                if (raw && raw->raw_bytes())
                    std::printf("compression_ratio: %.6f\n", double(bits) / 8.0 / double(raw->raw_bytes()));
            };
            if (is_container(target)) {
                const auto reader = ContainerReader::open(target, verify);
                if (reader.kind() == StructureKind::string_dictionary) {
                    const auto d = StringDictionary::load(reader);
                    std::printf("kind: string_dictionary\nstrategy: %s\ncompressed: %s\nkeys: %llu\n",
                                d.strategy() == DictStrategy::lex ? "lex" : "centroid", d.compressed() ? "yes" : "no",
                                (unsigned long long)d.size());
                    std::printf("size_bytes: %llu\nbits_per_key: %.3f\nlabel_payload_bytes: %llu\n",
                                (unsigned long long)d.size_in_bytes(), double(d.size_in_bits()) / double(d.size()),
                                (unsigned long long)d.labels().payload_bytes());
                    if (d.compressed())
                        std::printf("dictionary_words: %llu\n", (unsigned long long)d.labels().dictionary_words());
                    print_shape(d.shape());
                    ratio(d.size_in_bits());
                } else {
                    const auto h = AnyHash::load(target, verify);
                    std::printf("kind: %s\nkeys: %llu\nsize_bytes: %llu\nbits_per_key: %.3f\n",
                                h.flat ? "flat_hollow" : "hollow_mph", (unsigned long long)h.size(),
                                (unsigned long long)((h.size_in_bits() + 7) / 8),
                                double(h.size_in_bits()) / double(h.size()));
                    print_shape(h.shape());
                    ratio(h.size_in_bits());
                }
            } else {
                const auto corpus = Corpus::load(target, copts);
                const auto s = height_stats(corpus.keys(), !no_hollow);
                std::printf("keys: %llu\ninput_lines: %llu\nraw_bytes: %llu\nsorted_on_input: %s\n",
                            (unsigned long long)corpus.size(), (unsigned long long)corpus.input_lines(),
                            (unsigned long long)corpus.raw_bytes(), corpus.was_sorted() ? "yes" : "no");
                std::printf("trie_avg_leaf_height: %.4f\ntrie_avg_leaf_height_unterminated: %.4f\ntrie_height: %llu\n",
                            s.trie_avg_leaf_height, s.trie_avg_leaf_height_unterminated,
                            (unsigned long long)s.trie_height);
                std::printf("lex_avg_height: %.4f\nlex_height: %llu\ncentroid_avg_height: %.4f\ncentroid_height: %llu\n",
                            s.lex_avg_height, (unsigned long long)s.lex_height, s.centroid_avg_height,
                            (unsigned long long)s.centroid_height);
                if (!no_hollow)
                    std::printf("hollow_avg_height: %.4f\nhollow_height: %llu\ncentroid_hollow_avg_height: %.4f\n"
                                "centroid_hollow_height: %llu\n",
                                s.hollow_avg_height, (unsigned long long)s.hollow_height,
                                s.centroid_hollow_avg_height, (unsigned long long)s.centroid_hollow_height);
            }
        } else if (*bench) {
            std::optional<Corpus> corpus;
            if (!stats_corpus.empty()) corpus = Corpus::load(stats_corpus, copts);
            const auto reader = ContainerReader::open(container, verify);
            if (reader.kind() == StructureKind::string_dictionary) {
                const auto d = StringDictionary::load(reader);
                std::mt19937_64 rng(seed);
                std::vector<uint64_t> ids(bench_queries_n);
                for (auto& id : ids) id = rng() % d.size();
                std::vector<std::string> q;
                if (corpus) {
                    q = sample_members(corpus->keys(), bench_queries_n, seed);
                } else {
                    for (uint64_t id : ids) q.push_back(d.access(id));
                }
                std::printf("keys: %llu\nsize_bytes: %llu\nqueries: %llu\nruns: %llu\n", (unsigned long long)d.size(),
                            (unsigned long long)d.size_in_bytes(), (unsigned long long)q.size(),
                            (unsigned long long)runs);
                print_bench("lookup", bench_queries(q, [&](const std::string& s) { return d.lookup(s); }, runs));
                print_bench("access", bench_queries(ids, [&](uint64_t id) { return d.access(id).size(); }, runs));
            } else {
                if (!corpus) throw InputError("bench on a hash needs --corpus to draw member queries");
                const auto h = AnyHash::load(container, verify);
                const auto q = sample_members(corpus->keys(), bench_queries_n, seed);
                std::printf("keys: %llu\nsize_bytes: %llu\nqueries: %llu\nruns: %llu\n", (unsigned long long)h.size(),
                            (unsigned long long)((h.size_in_bits() + 7) / 8), (unsigned long long)q.size(),
                            (unsigned long long)runs);
                print_bench("hash", bench_queries(q, [&](const std::string& s) { return h.hash(s); }, runs));
            }
        } else if (*gen) {
            synthetic_count(sp);
            if (out_path == "-") {
                std::ios::sync_with_stdio(false);
                gen_synthetic(sp, std::cout);
                std::cout.flush();
            } else {
                std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
                if (!f) throw InputError("cannot write '" + out_path + "'");
                gen_synthetic(sp, f);
                if (!f) throw InputError("write to '" + out_path + "' failed");
            }
        }
    } catch (const FormatError& e) {
        std::fprintf(stderr, "format error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 1;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 1;
    }
    return 0;
}
