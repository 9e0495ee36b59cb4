#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "nutm/thermo.hpp"

using namespace nutm;

namespace {

// Oracle with the full 16-key step table, no canonicalization involved.
double oracle_stack(const std::string& d) {
    static const std::map<std::string, double> st{
        {"AA", -1.00}, {"TT", -1.00}, {"AT", -0.88}, {"TA", -0.58},
        {"CA", -1.45}, {"TG", -1.45}, {"AC", -1.44}, {"GT", -1.44},
        {"AG", -1.28}, {"CT", -1.28}, {"GA", -1.30}, {"TC", -1.30},
        {"CG", -2.17}, {"GC", -2.24}, {"GG", -1.84}, {"CC", -1.84},
    };
    return st.at(d);
}

double oracle_duplex(const std::string& w) {
    auto init = [](char c) { return (c == 'G' || c == 'C') ? 0.98 : 1.03; };
    double dg = init(w.front()) + init(w.back());
    for (std::size_t i = 0; i + 1 < w.size(); ++i) dg += oracle_stack(w.substr(i, 2));
    return dg;
}

std::string random_dna(std::mt19937_64& rng, std::size_t len) {
    static const char bases[] = "ACGT";
    std::uniform_int_distribution<int> d(0, 3);
    std::string s(len, 'A');
    for (auto& c : s) c = bases[d(rng)];
    return s;
}

} // namespace

TEST_CASE("step energies are symmetric under reverse complement") {
    NnTable t = NnTable::unified();
    static const char bases[] = "ACGT";
    for (char x : std::string(bases))
        for (char y : std::string(bases)) {
            std::string d{x, y};
            CHECK(t.stack(d) == doctest::Approx(oracle_stack(d)));
            CHECK(t.stack(d) == doctest::Approx(t.stack(revcomp(d))));
        }
    CHECK(NnTable::canon("TG") == "CA");
    CHECK(NnTable::canon("GG") == "CC");
    CHECK_THROWS_AS(NnTable::canon("GGG"), Error);
}

TEST_CASE("duplex energies match the oracle") {
    NnTable t = NnTable::unified();
    CHECK(duplex_dg("TGG", t) == doctest::Approx(-1.28));
    CHECK(duplex_dg("GTGTGGGTG", t) == doctest::Approx(-10.39));
    CHECK(duplex_dg("GTGTCTGTGTGGGTG", t) == doctest::Approx(-18.75));
    CHECK(duplex_dg("GTGTGGGTGCTGGTG", t) == doctest::Approx(-20.09));
    CHECK(duplex_dg("GGAATGTCAACATGATA", t) == doctest::Approx(-17.63));
    CHECK_THROWS_AS(duplex_dg("A", t), Error);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        std::string w = random_dna(rng, 2 + i % 30);
        CHECK(duplex_dg(w, t) == doctest::Approx(oracle_duplex(w)));
        CHECK(duplex_dg(w, t) == doctest::Approx(duplex_dg(revcomp(w), t)));
    }
}

TEST_CASE("a perfect hybrid is a duplex and each mismatch strictly weakens it") {
    NnTable t = NnTable::unified();
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        std::string w = random_dna(rng, 4 + i % 20);
        CHECK(hybrid_dg(w, w, t) == doctest::Approx(duplex_dg(w, t)));

        // Corrupt one position at a time; every corruption must cost energy.
        std::uniform_int_distribution<std::size_t> pos_d(0, w.size() - 1);
        std::size_t p = pos_d(rng);
        std::string probe = w;
        for (char c : std::string("ACGT")) {
            if (c == w[p]) continue;
            probe[p] = c;
            CHECK(hybrid_dg(probe, w, t) > hybrid_dg(w, w, t));
        }
    }
    CHECK(hybrid_dg("TAG", "TCG", t) == doctest::Approx(3.01));
    CHECK(hybrid_dg("AGG", "TGG", t) == doctest::Approx(0.14));
    CHECK_THROWS_AS(hybrid_dg("AC", "ACG", t), Error);
}

TEST_CASE("single substitutions on a perfect alignment never lower the energy") {
    NnTable t = NnTable::unified();
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        std::string site = random_dna(rng, 12 + i % 9);
        double base = hybrid_dg(site, site, t);
        std::string probe = site;
        for (std::size_t p = 0; p < site.size(); ++p) {
            for (char c : std::string("ACGT")) {
                if (c == site[p]) continue;
                probe[p] = c;
                CHECK(hybrid_dg(probe, site, t) >= base);
            }
            probe[p] = site[p];
        }
    }
}

TEST_CASE("accumulating interior mismatches strictly weakens binding") {
    // Interior only: a corrupted terminal beside an existing mismatch trades
    // its initiation term for the flat penalty and can dip by 0.03.
    NnTable t = NnTable::unified();
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        std::string site = random_dna(rng, 8 + i % 12);
        std::string probe = site;
        double prev = hybrid_dg(probe, site, t);
        std::vector<std::size_t> order;
        for (std::size_t k = 1; k + 1 < site.size(); ++k) order.push_back(k);
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t k = 0; k < std::min<std::size_t>(4, order.size()); ++k) {
            char& c = probe[order[k]];
            c = c == 'A' ? 'C' : 'A';
            double cur = hybrid_dg(probe, site, t);
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_CASE("occupancy ratio freezes to the computed value") {
    CHECK(boltzmann_ratio(3.0, 0.0) == doctest::Approx(0.010025458732).epsilon(1e-9));
    // Three kcal/mol of margin leaves the competitor just above one percent
    // occupancy, not below it.
    CHECK(boltzmann_ratio(3.0, 0.0) > 0.01);
    CHECK(boltzmann_ratio(0.0, 3.0) == doctest::Approx(99.74605917924953).epsilon(1e-9));
    CHECK(boltzmann_ratio(-2.0, -2.0) == doctest::Approx(1.0));
    ThermoEnv env;
    CHECK(env.temperature == doctest::Approx(328.0));
    CHECK(env.gas_constant == doctest::Approx(0.0019872));
}

TEST_CASE("every recognition window outcompetes all rivals") {
    CodeBook cb = CodeBook::figure_defaults();
    NnTable t = NnTable::unified();
    RuleSet rs = RuleSet::universal();
    auto rows = specificity_report(rs, cb, t);
    REQUIRE(rows.size() == 14);
    for (const auto& row : rows) {
        CHECK(row.pass);
        CHECK(row.margin > 0.0);
        CHECK(row.worst_dg > row.self_dg);
        CHECK(!row.worst_competitor.empty());
    }
    // Row order is rule order, pattern side first.
    CHECK(rows[0].antecedent == std::vector<Symbol>{"a", "c"});
    CHECK(rows[1].antecedent == std::vector<Symbol>{"c", "a"});
    CHECK(rows[8].antecedent == std::vector<Symbol>{"c", "e"});
    CHECK(rows[9].antecedent == std::vector<Symbol>{"e", "c", "a"});

    SpecificityRow ac = specificity_verify({"a", "c"}, cb, t);
    CHECK(ac.self_dg == doctest::Approx(-18.75));
    CHECK(ac.worst_competitor == std::vector<Symbol>{"b", "c"});
    CHECK(ac.worst_dg == doctest::Approx(-15.01));
    CHECK(ac.margin == doctest::Approx(3.74));
}

TEST_CASE("site ranking is ascending and stable") {
    CHECK(rank_sites({-3.0, -5.0, 0.0, -5.0}) == std::vector<std::size_t>{1, 3, 0, 2});
    CHECK(rank_sites({}).empty());
}

TEST_CASE("bundled parameter file reproduces the built-in table") {
    NnTable file = NnTable::from_json_file(std::string(NUTM_DATA_DIR) + "/nn_params.json");
    NnTable built = NnTable::unified();
    static const char bases[] = "ACGT";
    for (char x : std::string(bases))
        for (char y : std::string(bases))
            CHECK(file.stack({x, y}) == doctest::Approx(built.stack({x, y})));
    CHECK(file.init_gc == doctest::Approx(built.init_gc));
    CHECK(file.init_at == doctest::Approx(built.init_at));
    CHECK(file.mismatch_penalty == doctest::Approx(built.mismatch_penalty));
    CHECK(file.loop_per_base == doctest::Approx(built.loop_per_base));
}
