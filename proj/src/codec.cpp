#include "nutm/codec.hpp"

#include <fstream>
#include <random>

#include <json.hpp>

namespace nutm {

std::string revcomp(const std::string& dna) {
    std::string out(dna.size(), '?');
    for (std::size_t i = 0; i < dna.size(); ++i) {
        char c = dna[dna.size() - 1 - i];
        switch (c) {
            case 'A': out[i] = 'T'; break;
            case 'C': out[i] = 'G'; break;
            case 'G': out[i] = 'C'; break;
            case 'T': out[i] = 'A'; break;
            default: throw Error(std::string("revcomp: non-ACGT base '") + c + "'");
        }
    }
    return out;
}

CodeBook CodeBook::figure_defaults() {
    CodeBook cb;
    cb.words_ = {{"a", "TCT"}, {"b", "GCT"}, {"c", "TGG"}, {"d", "ACG"}, {"e", "CTG"}};
    cb.intermediates_ = {{"x", "CGG"}, {"y", "AAA"}, {"z", "AAA"}};
    cb.spacer_ = "GTG";
    cb.alt_spacer_ = "GCG";
    cb.clamp_ = "GGAATGTCAACATGATA";
    cb.start_ = "TCGAAGGTCG";
    cb.end_ = "TAAGGATCCGGCTGCTAAC";
    cb.index();
    return cb;
}

CodeBook CodeBook::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("codebook: cannot open " + path);
    nlohmann::json j;
    in >> j;
    CodeBook cb;
    for (auto& [k, v] : j.at("words").items()) cb.words_[k] = v.get<std::string>();
    if (j.contains("intermediates"))
        for (auto& [k, v] : j.at("intermediates").items())
            cb.intermediates_[k] = v.get<std::string>();
    cb.spacer_ = j.at("spacer").get<std::string>();
    cb.alt_spacer_ = j.at("alt_spacer").get<std::string>();
    cb.clamp_ = j.at("clamp").get<std::string>();
    cb.start_ = j.at("start").get<std::string>();
    cb.end_ = j.at("end").get<std::string>();
    cb.index();
    return cb;
}

void CodeBook::index() {
    if (words_.empty()) throw Error("codebook: no words");
    word_len_ = words_.begin()->second.size();
    rev_.clear();
    for (auto& [sym, tri] : words_) {
        if (tri.size() != word_len_) throw Error("codebook: ragged word lengths");
        if (!rev_.emplace(tri, sym).second) throw Error("codebook: duplicate word " + tri);
    }
    for (auto& [name, tri] : intermediates_) {
        if (tri.size() != word_len_) throw Error("codebook: ragged intermediate " + name);
        if (rev_.count(tri)) throw Error("codebook: intermediate collides with word " + tri);
    }
    if (spacer_ == alt_spacer_) throw Error("codebook: spacer == alt_spacer");
}

std::string CodeBook::triplet(const std::string& symbol) const {
    auto it = words_.find(symbol);
    if (it == words_.end()) throw Error("codebook: unknown symbol '" + symbol + "'");
    return it->second;
}

std::optional<std::string> CodeBook::symbol_for(const std::string& tri) const {
    auto it = rev_.find(tri);
    if (it == rev_.end()) return std::nullopt;
    return it->second;
}

std::string CodeBook::intermediate(const std::string& name) const {
    auto it = intermediates_.find(name);
    if (it == intermediates_.end()) throw Error("codebook: unknown intermediate '" + name + "'");
    return it->second;
}

std::string CodeBook::encode_region(const std::vector<std::string>& symbols) const {
    std::string out = spacer_;
    for (auto& s : symbols) {
        out += triplet(s);
        out += spacer_;
    }
    return out;
}

std::string CodeBook::encode(const std::vector<std::string>& symbols) const {
    return start_ + encode_region(symbols) + end_;
}

namespace {
bool starts_at(const std::string& s, std::size_t pos, const std::string& pat) {
    return s.compare(pos, pat.size(), pat) == 0;
}
} // namespace

DecodeResult CodeBook::decode_region(const std::string& dna, bool strict) const {
    DecodeResult res;
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) {
        if (strict) throw Error("decode: " + what + " at offset " + std::to_string(pos));
        res.residue = dna.substr(pos);
        pos = dna.size();
    };
    while (pos < dna.size()) {
        // Spacer slot. The clamp only ever sits immediately ahead of a spacer.
        if (!strict && starts_at(dna, pos, clamp_)) {
            res.markers.push_back({DecodedMarker::Kind::Clamp, pos, clamp_});
            pos += clamp_.size();
        }
        if (starts_at(dna, pos, spacer_)) {
            pos += spacer_.size();
        } else if (!strict && starts_at(dna, pos, alt_spacer_)) {
            res.markers.push_back({DecodedMarker::Kind::AltSpacer, pos, alt_spacer_});
            pos += alt_spacer_.size();
        } else {
            fail("expected spacer");
            break;
        }
        if (pos == dna.size()) return res;  // region closes on a spacer
        // Symbol slot.
        if (pos + word_len_ > dna.size()) {
            fail("truncated word");
            break;
        }
        std::string tri = dna.substr(pos, word_len_);
        if (auto sym = symbol_for(tri)) {
            res.symbols.push_back(*sym);
            pos += word_len_;
            continue;
        }
        bool inter = false;
        for (auto& [name, t] : intermediates_) {
            (void)name;
            if (t == tri) { inter = true; break; }
        }
        if (!strict && inter) {
            res.markers.push_back({DecodedMarker::Kind::Intermediate, pos, tri});
            pos += word_len_;
            continue;
        }
        // An unreadable word is corruption, not partial progress.
        throw Error("decode: unknown word " + tri + " at offset " + std::to_string(pos));
    }
    if (strict && dna.empty()) throw Error("decode: empty region");
    return res;
}

DecodeResult CodeBook::decode(const std::string& dna, bool strict) const {
    if (dna.size() < start_.size() + end_.size() || !starts_at(dna, 0, start_))
        throw Error("decode: missing start delimiter");
    if (dna.compare(dna.size() - end_.size(), end_.size(), end_) != 0)
        throw Error("decode: missing end delimiter");
    std::string inner = dna.substr(start_.size(), dna.size() - start_.size() - end_.size());
    DecodeResult res = decode_region(inner, strict);
    for (auto& m : res.markers) m.offset += start_.size();
    res.markers.insert(res.markers.begin(), {DecodedMarker::Kind::Start, 0, start_});
    res.markers.push_back({DecodedMarker::Kind::End, dna.size() - end_.size(), end_});
    return res;
}

std::string CodeBook::design_recognition_primer(const std::vector<std::string>& antecedent) const {
    if (antecedent.empty()) throw Error("recognition primer: empty antecedent");
    return clamp_ + revcomp(encode_region(antecedent));
}

std::vector<std::string> CodeBook::audit(std::size_t max_len, std::uint64_t seed,
                                         std::size_t exhaustive_limit) const {
    std::vector<std::string> alphabet;
    for (auto& [sym, tri] : words_) {
        (void)tri;
        alphabet.push_back(sym);
    }
    auto offends = [&](const std::string& enc) {
        if (enc.find(clamp_) != std::string::npos) return true;
        if (enc.find(start_, 1) != std::string::npos) return true;
        std::size_t e = enc.find(end_);
        return e != enc.size() - end_.size();
    };
    std::vector<std::string> bad;
    auto check = [&](const std::vector<std::string>& syms) {
        std::string enc = encode(syms);
        if (offends(enc)) bad.push_back(enc);
    };
    std::size_t total = 1;
    bool overflow = false;
    for (std::size_t len = 1; len <= max_len && !overflow; ++len) {
        std::size_t layer = 1;
        for (std::size_t i = 0; i < len; ++i) layer *= alphabet.size();
        total += layer;
        if (total > exhaustive_limit) overflow = true;
    }
    if (!overflow) {
        std::vector<std::string> syms;
        auto rec = [&](auto&& self, std::size_t remaining) -> void {
            check(syms);
            if (remaining == 0) return;
            for (auto& a : alphabet) {
                syms.push_back(a);
                self(self, remaining - 1);
                syms.pop_back();
            }
        };
        rec(rec, max_len);
        return bad;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> len_d(1, max_len);
    std::uniform_int_distribution<std::size_t> sym_d(0, alphabet.size() - 1);
    for (std::size_t n = 0; n < exhaustive_limit; ++n) {
        std::vector<std::string> syms(len_d(rng));
        for (auto& s : syms) s = alphabet[sym_d(rng)];
        check(syms);
    }
    return bad;
}

} // namespace nutm
