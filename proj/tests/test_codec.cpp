#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "nutm/codec.hpp"

using namespace nutm;

namespace {

// Oracle built the other way around: complement first, then reverse.
std::string oracle_revcomp(const std::string& s) {
    static const std::map<char, char> comp{{'A', 'T'}, {'T', 'A'}, {'C', 'G'}, {'G', 'C'}};
    std::string out;
    for (char c : s) out += comp.at(c);
    std::reverse(out.begin(), out.end());
    return out;
}

std::string random_dna(std::mt19937_64& rng, std::size_t len) {
    static const char bases[] = "ACGT";
    std::string s(len, 'A');
    std::uniform_int_distribution<int> d(0, 3);
    for (auto& c : s) c = bases[d(rng)];
    return s;
}

std::vector<std::string> random_symbols(std::mt19937_64& rng, std::size_t len) {
    static const char* syms[] = {"a", "b", "c", "d", "e"};
    std::uniform_int_distribution<int> d(0, 4);
    std::vector<std::string> v(len);
    for (auto& s : v) s = syms[d(rng)];
    return v;
}

} // namespace

TEST_CASE("reverse complement agrees with the oracle") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        std::string s = random_dna(rng, i % 40);
        CHECK(revcomp(s) == oracle_revcomp(s));
        CHECK(revcomp(revcomp(s)) == s);
    }
    CHECK(revcomp("") == "");
    CHECK(revcomp("A") == "T");
    CHECK(revcomp("ACGT") == "ACGT");
    CHECK(revcomp("GGAATGTCAACATGATA") == "TATCATGTTGACATTCC");
    CHECK_THROWS_AS(revcomp("ACGU"), Error);
    CHECK_THROWS_AS(revcomp("acgt"), Error);
}

TEST_CASE("encoding lays out delimiters, spacers and triplets") {
    CodeBook cb = CodeBook::figure_defaults();
    CHECK(cb.word_len() == 3);
    CHECK(cb.triplet("a") == "TCT");
    CHECK(cb.triplet("b") == "GCT");
    CHECK(cb.triplet("c") == "TGG");
    CHECK(cb.triplet("d") == "ACG");
    CHECK(cb.triplet("e") == "CTG");
    CHECK_THROWS_AS(cb.triplet("q"), Error);
    CHECK(cb.intermediate("x") == "CGG");
    CHECK(cb.intermediate("y") == "AAA");
    CHECK(cb.intermediate("z") == "AAA");
    CHECK_THROWS_AS(cb.intermediate("w"), Error);
    CHECK(cb.symbol_for("TGG") == std::string("c"));
    CHECK(cb.symbol_for("AAA") == std::nullopt);

    CHECK(cb.encode_region({}) == "GTG");
    CHECK(cb.encode_region({"e", "c"}) == "GTGCTGGTGTGGGTG");
    CHECK(cb.encode({}) == "TCGAAGGTCGGTGTAAGGATCCGGCTGCTAAC");
    CHECK(cb.encode({"c", "e"}) == "TCGAAGGTCGGTGTGGGTGCTGGTGTAAGGATCCGGCTGCTAAC");
}

TEST_CASE("strict decode inverts encode") {
    CodeBook cb = CodeBook::figure_defaults();
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        auto syms = random_symbols(rng, i % 9);
        DecodeResult res = cb.decode(cb.encode(syms));
        CHECK(res.symbols == syms);
        CHECK(res.residue.empty());
        REQUIRE(res.markers.size() == 2);
        CHECK(res.markers.front().kind == DecodedMarker::Kind::Start);
        CHECK(res.markers.back().kind == DecodedMarker::Kind::End);
    }
}

TEST_CASE("strict decode rejects anything off the clean grammar") {
    CodeBook cb = CodeBook::figure_defaults();
    std::string enc = cb.encode({"c", "e"});
    CHECK_THROWS_AS(cb.decode(enc.substr(1)), Error);
    CHECK_THROWS_AS(cb.decode(enc.substr(0, enc.size() - 1)), Error);
    CHECK_THROWS_AS(cb.decode(cb.start() + cb.end()), Error);
    CHECK_THROWS_AS(cb.decode_region("GCGCTGGTGTGGGCG", true), Error);
    CHECK_THROWS_AS(cb.decode_region("", true), Error);
}

TEST_CASE("an unknown word is corruption in both modes") {
    CodeBook cb = CodeBook::figure_defaults();
    CHECK_THROWS_AS(cb.decode_region("GTGTTTGTG", true), Error);
    CHECK_THROWS_AS(cb.decode_region("GTGTTTGTG", false), Error);
}

TEST_CASE("lenient decode reads a half-rewritten window") {
    CodeBook cb = CodeBook::figure_defaults();
    DecodeResult res = cb.decode_region("GCGCTGGTGTGGGCG", false);
    CHECK(res.symbols == std::vector<std::string>{"e", "c"});
    CHECK(res.residue.empty());
    REQUIRE(res.markers.size() == 2);
    CHECK(res.markers[0].kind == DecodedMarker::Kind::AltSpacer);
    CHECK(res.markers[0].offset == 0);
    CHECK(res.markers[1].kind == DecodedMarker::Kind::AltSpacer);
    CHECK(res.markers[1].offset == 12);
}

TEST_CASE("lenient decode flags clamps, placeholders and residue") {
    CodeBook cb = CodeBook::figure_defaults();

    DecodeResult clamped = cb.decode_region(cb.clamp() + "GTGTGGGTG", false);
    CHECK(clamped.symbols == std::vector<std::string>{"c"});
    REQUIRE(!clamped.markers.empty());
    CHECK(clamped.markers[0].kind == DecodedMarker::Kind::Clamp);
    CHECK(clamped.markers[0].offset == 0);

    DecodeResult placeholder = cb.decode_region("GTGAAAGTG", false);
    CHECK(placeholder.symbols.empty());
    REQUIRE(placeholder.markers.size() == 1);
    CHECK(placeholder.markers[0].kind == DecodedMarker::Kind::Intermediate);
    CHECK(placeholder.markers[0].text == "AAA");

    DecodeResult ragged = cb.decode_region("GTGTGGGTGCC", false);
    CHECK(ragged.symbols == std::vector<std::string>{"c"});
    CHECK(ragged.residue == "CC");

    DecodeResult cut = cb.decode_region("GTGTG", false);
    CHECK(cut.symbols.empty());
    CHECK(cut.residue == "TG");
}

TEST_CASE("recognition primer is the clamped reverse complement of the window") {
    CodeBook cb = CodeBook::figure_defaults();
    CHECK(cb.design_recognition_primer({"e", "c"}) ==
          "GGAATGTCAACATGATA" + std::string("CACCCACACCAGCAC"));
    CHECK(cb.design_recognition_primer({"e", "c"}) ==
          cb.clamp() + revcomp(cb.encode_region({"e", "c"})));
    CHECK_THROWS_AS(cb.design_recognition_primer({}), Error);
}

TEST_CASE("bundled codebook file matches the built-in table") {
    CodeBook file = CodeBook::from_json_file(std::string(NUTM_DATA_DIR) + "/codebook.json");
    CodeBook def = CodeBook::figure_defaults();
    CHECK(file.encode({"b", "a", "d"}) == def.encode({"b", "a", "d"}));
    CHECK(file.clamp() == def.clamp());
    CHECK(file.alt_spacer() == def.alt_spacer());
    CHECK(file.intermediate("x") == def.intermediate("x"));
}

TEST_CASE("audit passes the shipped table and catches a poisoned one") {
    CodeBook cb = CodeBook::figure_defaults();
    CHECK(cb.audit(3).empty());
    CHECK(cb.audit(10, 1, 50).empty());  // sampling path

    // A clamp equal to an encoded symbol cell must be flagged.
    std::string path = "poisoned_codebook.json";
    std::ofstream out(path);
    out << R"({
      "words": {"a": "TCT", "b": "GCT"},
      "spacer": "GTG",
      "alt_spacer": "GCG",
      "clamp": "GTGTCTGTG",
      "start": "TCGAAGGTCG",
      "end": "TAAGGATCCGGCTGCTAAC"
    })";
    out.close();
    CodeBook bad = CodeBook::from_json_file(path);
    CHECK(!bad.audit(2).empty());
    std::remove(path.c_str());
}

TEST_CASE("codebook construction rejects inconsistent tables") {
    std::string path = "broken_codebook.json";
    auto attempt = [&](const std::string& body) {
        std::ofstream out(path);
        out << body;
        out.close();
        return path;
    };
    CHECK_THROWS_AS(CodeBook::from_json_file(attempt(
                        R"({"words": {"a": "TCT", "b": "TCT"}, "spacer": "GTG",
                           "alt_spacer": "GCG", "clamp": "C", "start": "S", "end": "E"})")),
                    Error);
    CHECK_THROWS_AS(CodeBook::from_json_file(attempt(
                        R"({"words": {"a": "TCT", "b": "GC"}, "spacer": "GTG",
                           "alt_spacer": "GCG", "clamp": "C", "start": "S", "end": "E"})")),
                    Error);
    CHECK_THROWS_AS(CodeBook::from_json_file(attempt(
                        R"({"words": {"a": "TCT"}, "spacer": "GTG",
                           "alt_spacer": "GTG", "clamp": "C", "start": "S", "end": "E"})")),
                    Error);
    CHECK_THROWS_AS(CodeBook::from_json_file(attempt(
                        R"({"words": {"a": "TCT"}, "intermediates": {"x": "TCT"},
                           "spacer": "GTG", "alt_spacer": "GCG",
                           "clamp": "C", "start": "S", "end": "E"})")),
                    Error);
    CHECK_THROWS_AS(CodeBook::from_json_file("no_such_codebook.json"), Error);
    std::remove(path.c_str());
}
