#include "termbench/defeval.hpp"

#include <doctest.h>

#include <json.hpp>

#include <random>
#include <string>
#include <vector>

#include "termbench/error.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace termbench;

namespace {

// Every token sequence of length 0..max_len over the alphabet.
std::vector<std::vector<std::string>> all_sequences(
    const std::vector<std::string>& alphabet, int max_len) {
  std::vector<std::vector<std::string>> out = {{}};
  std::vector<std::vector<std::string>> frontier = {{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& seq : frontier) {
      for (const auto& word : alphabet) {
        auto extended = seq;
        extended.push_back(word);
        next.push_back(std::move(extended));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// The four gold fixture definitions, keyed by their english terms.
std::map<std::string, std::string> fixture_definitions(
    const GoldStandard& gold) {
  const auto replies = nlohmann::json::parse(
      testutil::slurp(testutil::fixture("mock/definitions_en.json")));
  std::map<std::string, std::string> generated;
  for (std::size_t i = 0; i < replies.size(); ++i)
    generated[gold.entries[i].en_term] = replies[i].get<std::string>();
  return generated;
}

}  // namespace

TEST_SUITE("defeval") {

TEST_CASE("edit distance handles the degenerate cases") {
  CHECK(word_levenshtein({}, {}) == 0);
  CHECK(word_levenshtein({"a", "b"}, {"a", "b"}) == 0);
  CHECK(word_levenshtein({}, {"a", "b", "c"}) == 3);
  CHECK(word_levenshtein({"a", "b", "c"}, {}) == 3);
  CHECK(word_levenshtein({"a", "b", "c"}, {"a", "x", "c"}) == 1);
  CHECK(word_levenshtein({"a", "b"}, {"b", "a"}) == 2);
  CHECK(word_levenshtein({"a", "c"}, {"a", "b", "c"}) == 1);
  CHECK(word_levenshtein({"word"}, {"Word"}) == 1);  // tokens compare exact
}

TEST_CASE("one substituted adverb costs exactly one operation") {
  const auto ref =
      definition_tokens("Ties are usually worn with suits.", "en");
  const auto hyp =
      definition_tokens("Ties are typically worn with suits.", "en");
  CHECK(word_levenshtein(ref, hyp) == 1);
}

TEST_CASE("distance agrees with the recurrence on every short pair") {
  const auto sequences = all_sequences({"a", "b", "c"}, 4);
  REQUIRE(sequences.size() == 121);
  int mismatches = 0;
  for (const auto& ref : sequences) {
    for (const auto& hyp : sequences) {
      const auto expected = oracles::levenshtein(ref, hyp);
      if (word_levenshtein(ref, hyp) != static_cast<int>(expected))
        ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("distance behaves like a metric on random pairs") {
  const std::vector<std::string> alphabet = {"silk", "wool", "linen"};
  auto gen = oracles::rng(31337);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = oracles::random_tokens(gen, 8, alphabet);
    const auto b = oracles::random_tokens(gen, 8, alphabet);
    const auto c = oracles::random_tokens(gen, 8, alphabet);
    const int ab = word_levenshtein(a, b);
    CHECK(ab == word_levenshtein(b, a));
    CHECK(ab <= static_cast<int>(std::max(a.size(), b.size())));
    CHECK(ab >= std::abs(static_cast<int>(a.size()) -
                         static_cast<int>(b.size())));
    CHECK(word_levenshtein(a, c) <= ab + word_levenshtein(b, c));
  }
}

TEST_CASE("definition tokens obey the normalization toggles") {
  CHECK(definition_tokens("A belted Trench-Coat, worn open.", "en") ==
        std::vector<std::string>{"a", "belted", "trench-coat", "worn",
                                 "open"});

  DefNormalization keep_case;
  keep_case.lowercase = false;
  CHECK(definition_tokens("A Trench", "en", keep_case) ==
        std::vector<std::string>{"A", "Trench"});

  DefNormalization keep_punct;
  keep_punct.drop_punctuation = false;
  const auto tokens = definition_tokens("worn, open", "en", keep_punct);
  CHECK(tokens == std::vector<std::string>{"worn", ",", "open"});

  CHECK(definition_tokens("Двубортный плащ.", "ru") ==
        std::vector<std::string>{"двубортный", "плащ"});
}

TEST_CASE("definitions are generated one term per conversation") {
  ScriptedChatClient client({"a one-piece garment", "a pleated skirt"});
  const auto result = generate_definitions(
      {"dress", "kilt"}, "en", client, templates::definition("en"), 1);
  CHECK(result.failed.empty());
  CHECK(result.retries_used == 0);
  REQUIRE(result.by_term.size() == 2);
  CHECK(result.by_term.at("dress") == "a one-piece garment");
  CHECK(result.by_term.at("kilt") == "a pleated skirt");

  REQUIRE(client.requests().size() == 2);
  REQUIRE(client.requests()[0].size() == 1);  // fresh conversation per term
  CHECK(client.requests()[0][0].role == "user");
  CHECK(client.requests()[0][0].content.find("\"dress\"") !=
        std::string::npos);
  CHECK(client.requests()[0][0].content.find("fashion industry") !=
        std::string::npos);
  CHECK(client.requests()[1][0].content.find("\"kilt\"") !=
        std::string::npos);
}

TEST_CASE("a language placeholder is filled with the language name") {
  ScriptedChatClient client({"x", "y"});
  const PromptTemplate tmpl("Define {term} in {language}.");
  generate_definitions({"dress"}, "en", client, tmpl, 0);
  generate_definitions({"платье"}, "ru", client, tmpl, 0);
  CHECK(client.requests()[0][0].content == "Define dress in English.");
  CHECK(client.requests()[1][0].content == "Define платье in Russian.");
}

TEST_CASE("templates without a term placeholder are rejected") {
  ScriptedChatClient client({});
  CHECK_THROWS_AS(generate_definitions({"dress"}, "en", client,
                                       PromptTemplate("Define something."), 0),
                  Error);
}

TEST_CASE("refusals exhaust retries but the run continues") {
  ScriptedChatClient client(
      {"I'm sorry, but I can't assist with that request.",
       "I'm sorry, but I can't assist with that request.", "a knit top"});
  const auto result = generate_definitions({"balaclava", "sweater"}, "en",
                                           client,
                                           templates::definition("en"), 1);
  REQUIRE(result.failed.size() == 1);
  CHECK(result.failed[0] == "balaclava");
  CHECK(result.by_term.at("sweater") == "a knit top");
  CHECK(client.calls() == 3);
}

TEST_CASE("fixture definitions score against the gold references") {
  const auto gold = load_gold_tsv(testutil::fixture("gold/fashion_gold.tsv"));
  const auto generated = fixture_definitions(gold);
  const auto report = score_definitions(gold, generated, "en");

  CHECK(report.language == "en");
  REQUIRE(report.scores.size() == 4);
  CHECK(report.skipped.empty());

  // Scores follow the index, i.e. alphabetical by normalized term.
  CHECK(report.scores[0].term == "denim jacket");
  CHECK(report.scores[0].distance == 2);  // "very" and "blue" inserted
  CHECK(report.scores[0].ref_len == 8);
  CHECK(report.scores[0].hyp_len == 10);
  CHECK(report.scores[0].normalized_distance == doctest::Approx(0.2));

  CHECK(report.scores[1].term == "dress");
  CHECK(report.scores[1].distance == 0);
  CHECK(report.scores[1].ref_len == 12);

  CHECK(report.scores[2].term == "silk scarf");
  CHECK(report.scores[2].distance == 0);

  CHECK(report.scores[3].term == "trench coat");
  CHECK(report.scores[3].distance == 1);  // military -> army

  CHECK(report.min == 0);
  CHECK(report.max == 2);
  CHECK(report.mean == doctest::Approx(0.75));
}

TEST_CASE("terms without a generated definition are skipped and counted") {
  const auto gold = load_gold_tsv(testutil::fixture("gold/fashion_gold.tsv"));
  auto generated = fixture_definitions(gold);
  generated.erase("silk scarf");
  const auto report = score_definitions(gold, generated, "en");
  CHECK(report.scores.size() == 3);
  REQUIRE(report.skipped.size() == 1);
  CHECK(report.skipped[0] == "silk scarf");
}

TEST_CASE("generated keys go through the normalizer") {
  const auto gold = load_gold_tsv(testutil::fixture("gold/fashion_gold.tsv"));
  std::map<std::string, std::string> generated;
  generated["Dresses"] =
      "a one-piece garment that covers the body and extends over the legs";
  const auto report = score_definitions(gold, generated, "en");
  REQUIRE(report.scores.size() == 1);
  CHECK(report.scores[0].term == "dress");
  CHECK(report.scores[0].distance == 0);
}

TEST_CASE("scoring rejects terms outside the gold standard") {
  const auto gold = load_gold_tsv(testutil::fixture("gold/fashion_gold.tsv"));
  const std::map<std::string, std::string> generated = {
      {"spaceship", "an interplanetary vehicle"}};
  CHECK_THROWS_WITH_AS(score_definitions(gold, generated, "en"),
                       doctest::Contains("'spaceship' is not in the gold"),
                       Error);
}

TEST_CASE("scoring rejects gold entries without a reference") {
  const auto gold = load_gold_tsv(testutil::fixture("gold/fashion_gold.tsv"));
  const std::map<std::string, std::string> generated = {
      {"skirt", "a waist-down garment"}};  // fixture row has no definitions
  CHECK_THROWS_WITH_AS(score_definitions(gold, generated, "en"),
                       doctest::Contains("no en reference definition"), Error);
  CHECK_THROWS_AS(score_definitions(gold, generated, "fr"), Error);
}

TEST_CASE("russian references score independently") {
  const auto gold = load_gold_tsv(testutil::fixture("gold/fashion_gold.tsv"));
  std::map<std::string, std::string> generated;
  generated["платье"] =
      "цельное изделие которое закрывает корпус и переходит в юбку";
  const auto report = score_definitions(gold, generated, "ru");
  REQUIRE(report.scores.size() == 1);
  CHECK(report.scores[0].term == "платье");
  CHECK(report.scores[0].distance == 0);
  CHECK(report.skipped.size() == 3);  // other russian references unmatched
}

TEST_CASE("report exports carry every score") {
  const auto gold = load_gold_tsv(testutil::fixture("gold/fashion_gold.tsv"));
  const auto report = score_definitions(gold, fixture_definitions(gold), "en");

  const auto doc = nlohmann::json::parse(defeval_report_to_json(report));
  CHECK(doc["language"] == "en");
  CHECK(doc["scored"] == 4);
  CHECK(doc["min"] == 0);
  CHECK(doc["max"] == 2);
  CHECK(doc["mean"].get<double>() == doctest::Approx(0.75));
  CHECK(doc["scores"].size() == 4);
  CHECK(doc["scores"][0]["term"] == "denim jacket");
  CHECK(doc["scores"][0]["normalized_distance"].get<double>() ==
        doctest::Approx(0.2));

  const auto csv = defeval_report_to_csv(report);
  CHECK(csv.find("term,distance,ref_len,hyp_len,normalized_distance\n") == 0);
  CHECK(csv.find("denim jacket,2,8,10,0.200000\n") != std::string::npos);
  CHECK(csv.find("trench coat,1,10,10,0.100000\n") != std::string::npos);
}

TEST_CASE("csv fields with commas are quoted") {
  DefEvalReport report;
  DefinitionScore score;
  score.term = "coat, belted";
  score.distance = 1;
  score.ref_len = 2;
  score.hyp_len = 2;
  score.normalized_distance = 0.5;
  report.scores.push_back(score);
  CHECK(defeval_report_to_csv(report).find("\"coat, belted\",1,2,2,0.500000") !=
        std::string::npos);
}

}  // TEST_SUITE
