#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nutm/common.hpp"

namespace nutm {

std::string revcomp(const std::string& dna);

// One recognized chunk of a DNA string that is not a plain coding triplet.
struct DecodedMarker {
    enum class Kind { Start, End, AltSpacer, Clamp, Intermediate };
    Kind kind;
    std::size_t offset;   // byte offset into the decoded string
    std::string text;     // the bases consumed
};

struct DecodeResult {
    std::vector<std::string> symbols;    // coding symbols, in order
    std::vector<DecodedMarker> markers;  // everything else that was recognized
    std::string residue;                 // unparseable leftover (lenient mode only)
};

// Fixed-width word code: each coding symbol maps to one triplet, words are
// separated by the spacer, the whole message sits between start and end
// delimiters. The alternate spacer and the intermediate triplets only appear
// in partially rewritten strings, so strict decoding rejects them.
class CodeBook {
public:
    static CodeBook figure_defaults();
    static CodeBook from_json_file(const std::string& path);

    std::string triplet(const std::string& symbol) const;     // throws on unknown
    std::optional<std::string> symbol_for(const std::string& triplet) const;

    const std::string& spacer() const { return spacer_; }
    const std::string& alt_spacer() const { return alt_spacer_; }
    const std::string& clamp() const { return clamp_; }
    const std::string& start() const { return start_; }
    const std::string& end() const { return end_; }
    std::size_t word_len() const { return word_len_; }
    const std::map<std::string, std::string>& words() const { return words_; }
    // Triplets allowed at a symbol slot mid-rewrite but absent from finished
    // strings (x and the placeholder pair y/z, which share one triplet).
    const std::map<std::string, std::string>& intermediates() const { return intermediates_; }
    std::string intermediate(const std::string& name) const;   // throws on unknown

    std::string encode(const std::vector<std::string>& symbols) const;
    // Inner region only: s (triplet s)*, no start/end delimiters.
    std::string encode_region(const std::vector<std::string>& symbols) const;

    DecodeResult decode(const std::string& dna, bool strict = true) const;
    // Decode a window that lacks the start/end delimiters.
    DecodeResult decode_region(const std::string& dna, bool strict = true) const;

    // Clamp-tailed reverse-orientation primer recognizing the spacer-flanked
    // antecedent. Empty antecedent is an error.
    std::string design_recognition_primer(const std::vector<std::string>& antecedent) const;

    // Check that no delimiter or clamp appears inside clean encodings it does
    // not belong to. Exhaustive over all symbol strings up to max_len when the
    // space is small, otherwise a seeded sample. Returns offending encodings.
    std::vector<std::string> audit(std::size_t max_len, std::uint64_t seed = 1,
                                   std::size_t exhaustive_limit = 200000) const;

private:
    std::map<std::string, std::string> words_;          // symbol -> triplet
    std::map<std::string, std::string> rev_;            // triplet -> symbol
    std::map<std::string, std::string> intermediates_;  // name -> triplet
    std::string spacer_, alt_spacer_, clamp_, start_, end_;
    std::size_t word_len_ = 3;

    void index();
};

} // namespace nutm
