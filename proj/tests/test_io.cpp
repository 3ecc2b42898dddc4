#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "stemp/error.hpp"
#include "stemp/io.hpp"
#include "stemp/pipeline.hpp"

using namespace stemp;

namespace {

std::vector<Sequence> fasta(const std::string& text) {
    std::istringstream in(text);
    return parse_fasta(in, "test.fasta");
}

ReferenceStructure ct(const std::string& text) {
    std::istringstream in(text);
    return parse_ct(in, "test.ct");
}

const char* const kHairpinCt =
    "12 hairpin\n"
    "1 G 0 2 12 1\n"
    "2 G 1 3 11 2\n"
    "3 C 2 4 10 3\n"
    "4 A 3 5 9 4\n"
    "5 A 4 6 0 5\n"
    "6 A 5 7 0 6\n"
    "7 A 6 8 0 7\n"
    "8 A 7 9 0 8\n"
    "9 U 8 10 4 9\n"
    "10 G 9 11 3 10\n"
    "11 C 10 12 2 11\n"
    "12 C 11 0 1 12\n";

}  // namespace

TEST_SUITE("io") {
    TEST_CASE("FASTA: single 2QUX record") {
        auto recs = read_fasta(STEMP_TEST_DATA "/2qux.fasta");
        REQUIRE(recs.size() == 1);
        CHECK(recs[0].id() == "2QUX");
        CHECK(recs[0].length() == 25);
    }

    TEST_CASE("FASTA: empty input and multiple records") {
        CHECK(fasta("").empty());
        CHECK(fasta("\n\n").empty());
        auto recs = fasta(">b second\nACGU\nacgu\n\n>a\r\nGGG\r\n");
        REQUIRE(recs.size() == 2);
        CHECK(recs[0].id() == "b");
        CHECK(recs[0].str() == "ACGUACGU");
        CHECK(recs[1].id() == "a");
        CHECK(recs[1].str() == "GGG");
    }

    TEST_CASE("FASTA: errors name the record and line") {
        try {
            fasta(">one\nACGU\n>two\nAC\nGGXA\n");
            FAIL("expected InvalidCharacter");
        } catch (const InvalidCharacter& e) {
            const std::string msg = e.what();
            CHECK(e.position() == 5);
            CHECK(e.character() == 'X');
            CHECK(msg.find("'two'") != std::string::npos);
            CHECK(msg.find("line 5") != std::string::npos);
        }
        CHECK_THROWS_AS(fasta("ACGU\n"), ParseError);
        CHECK_THROWS_AS(fasta(">empty\n"), ParseError);
        CHECK_THROWS_AS(read_fasta("/nonexistent/file.fasta"), IoError);
    }

    TEST_CASE("CT: four-pair hairpin") {
        ReferenceStructure r = ct(kHairpinCt);
        CHECK(r.id == "hairpin");
        CHECK(r.length == 12);
        CHECK(r.bases == "GGCAAAAAUGCC");
        CHECK(r.pairs == PairList{{1, 12}, {2, 11}, {3, 10}, {4, 9}});
    }

    TEST_CASE("CT: comment header lines are skipped") {
        ReferenceStructure r = ct(std::string("Filename: x.ct\nOrganism: test\n") + kHairpinCt);
        CHECK(r.pairs.size() == 4);
    }

    TEST_CASE("CT: asymmetric pair") {
        std::string bad = kHairpinCt;
        bad.replace(bad.find("9 U 8 10 4 9"), 12, "9 U 8 10 0 9");
        try {
            ct(bad);
            FAIL("expected AsymmetricPair");
        } catch (const AsymmetricPair& e) {
            CHECK(e.i() == 4);
            CHECK(e.j() == 9);
        }
    }

    TEST_CASE("CT: header length must match the body") {
        std::string bad = kHairpinCt;
        bad.replace(0, 2, "13");
        CHECK_THROWS_AS(ct(bad), ParseError);
        CHECK_THROWS_AS(ct("3 x\n1 A 0 2 7 1\n2 A 1 3 0 2\n3 A 2 0 0 3\n"), IndexOutOfRange);
        CHECK_THROWS_AS(ct("nothing here\n"), ParseError);
    }

    TEST_CASE("CT round trip") {
        ReferenceStructure r = ct(kHairpinCt);
        CHECK(ct(write_ct(r)) == r);
        ReferenceStructure q = fixtures::reference_2qux();
        q.format = "ct";
        CHECK(ct(write_ct(q)) == q);
    }

    TEST_CASE("dot-bracket rendering") {
        CHECK(write_dot_bracket(8, {{1, 8}, {2, 7}, {3, 6}}) == "(((..)))");
        CHECK(write_dot_bracket(8, {{1, 5}, {3, 7}}) == "(.[.).].");
        CHECK(write_dot_bracket(fixtures::seq_2qux(), fixtures::reference_2qux().pairs) == fixtures::k2quxDotBracket);
        CHECK(write_dot_bracket(4, {}) == "....");
        CHECK(write_dot_bracket(10, {{1, 6}, {2, 7}, {3, 8}, {4, 9}}) == "([{<.)]}>.");
        CHECK_THROWS_AS(write_dot_bracket(10, {{1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10}}), TooManyLayers);
        CHECK_THROWS_AS(write_dot_bracket(5, {{1, 6}}), IndexOutOfRange);
    }

    TEST_CASE("dot-bracket parsing") {
        ReferenceStructure r = parse_dot_bracket("(.[.).].", "x");
        CHECK(r.length == 8);
        CHECK(r.pairs == PairList{{1, 5}, {3, 7}});
        CHECK_THROWS_AS(parse_dot_bracket("(()"), ParseError);
        CHECK_THROWS_AS(parse_dot_bracket("())"), ParseError);
        CHECK_THROWS_AS(parse_dot_bracket("(x)"), InvalidCharacter);
    }

    TEST_CASE("dot-bracket balance and round trip on random structures") {
        std::mt19937_64 rng(12);
        for (int round = 0; round < 500; ++round) {
            const int n = 60;
            // Random stems laid down greedily without index reuse.
            std::vector<bool> used(n + 1, false);
            PairList pairs;
            std::uniform_int_distribution<int> pos(1, n);
            for (int k = 0; k < 12; ++k) {
                int p = pos(rng), q = pos(rng);
                if (p > q) std::swap(p, q);
                if (p == q || used[p] || used[q]) continue;
                used[p] = used[q] = true;
                pairs.push_back({p, q});
            }
            std::sort(pairs.begin(), pairs.end());
            std::string db;
            try {
                db = write_dot_bracket(n, pairs);
            } catch (const TooManyLayers&) {
                continue;
            }
            CHECK(db.size() == static_cast<std::size_t>(n));
            for (auto [o, c] : {std::pair{'(', ')'}, {'[', ']'}, {'{', '}'}, {'<', '>'}}) {
                CHECK(std::count(db.begin(), db.end(), o) == std::count(db.begin(), db.end(), c));
            }
            CHECK(parse_dot_bracket(db).pairs == pairs);
        }
    }

    TEST_CASE("profile documents round-trip") {
        for (const char* name : {"protein", "trna", "rrna5s-archaeal", "rrna5s-archaeal-general", "rrna5s-bacterial",
                                 "rrna5s-eukaryotic"}) {
            ProfileConfig cfg = load_profile(name);
            Json doc = profile_to_json(cfg);
            CHECK(profile_from_json(doc) == cfg);
            CHECK(profile_from_json(Json::parse(doc.dump())) == cfg);
        }
    }

    TEST_CASE("profile documents are validated") {
        Json doc = profile_to_json(load_profile("trna"));
        doc["sl_bounds"] = "[5, 1]";
        CHECK_THROWS_AS(profile_from_json(doc), ParseError);
        doc = profile_to_json(load_profile("trna"));
        doc["family"] = "virus";
        CHECK_THROWS_AS(profile_from_json(doc), ParseError);
        doc = profile_to_json(load_profile("rrna5s-archaeal"));
        doc["helices"][0]["patterns"][0] = "4[1/]1";
        CHECK_THROWS_AS(profile_from_json(doc), ParseError);
        CHECK_THROWS_AS(profile_from_json(Json::array()), ParseError);
    }

    TEST_CASE("report documents round-trip") {
        PredictionReport r = predict_structure(fixtures::seq_2qux(), load_profile("protein"));
        Json doc = report_to_json(r);
        CHECK(report_from_json(doc) == r);
        CHECK(report_from_json(Json::parse(doc.dump(2))) == r);
        CHECK(doc["predictions"][0]["dot_bracket"] == fixtures::k2quxDotBracket);
        CHECK(doc["predictions"][0]["vertices"] == Json::array({1, 4}));
        CHECK(doc["predictions"][0]["energy"] == 9);
        Json no_time = report_to_json(r, false);
        CHECK_FALSE(no_time.contains("timing"));
        PredictionReport back = report_from_json(no_time);
        CHECK(back.seconds == 0.0);
        back.seconds = r.seconds;
        CHECK(back == r);
    }

    TEST_CASE("graph dumps round-trip") {
        StemGraph g = build_profile_graph(fixtures::seq_2qux(), load_profile("protein"));
        const std::string text = graph_dump_text(g);
        CHECK(text.rfind("v1 1 25 5 24 4.8 5 plain\n", 0) == 0);
        CHECK(text.find("e 1 4\n") != std::string::npos);
        CHECK(parse_graph_dump_text(text) == g);
        CHECK(graph_from_json(graph_dump_json(g)) == g);

        std::mt19937_64 rng(3);
        for (int round = 0; round < 5; ++round) {
            Sequence seq = oracle::random_sequence(120, rng);
            StemGraph h = build_profile_graph(seq, load_profile("rrna5s-archaeal"));
            CHECK(parse_graph_dump_text(graph_dump_text(h)) == h);
            CHECK(graph_from_json(Json::parse(graph_dump_json(h).dump())) == h);
            StemGraph t = build_profile_graph(oracle::random_sequence(76, rng), load_profile("trna"));
            CHECK(parse_graph_dump_text(graph_dump_text(t)) == t);
        }
        CHECK_THROWS_AS(parse_graph_dump_text("v2 1 25 5 24 4.8 5 plain\n"), ParseError);
        CHECK_THROWS_AS(parse_graph_dump_text("v1 1 25 5 24 4.8 5 plain\ne 1 2\n"), ParseError);
        CHECK_THROWS_AS(parse_graph_dump_text("v1 1 25 4 24 4.8 5 plain\n"), ParseError);
    }

    TEST_CASE("reference files") {
        ReferenceStructure r = read_reference(STEMP_TEST_DATA "/2qux.db");
        CHECK(r.id == "2QUX");
        CHECK(r.bases == fixtures::seq_2qux().str());
        CHECK(r.pairs == fixtures::reference_2qux().pairs);
        CHECK(reference_sequence(r) == fixtures::seq_2qux());
    }
}
