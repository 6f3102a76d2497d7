#include <gtest/gtest.h>

#include <fstream>

#include "corpus_check.hpp"

using nlohmann::json;

TEST(ParserCorpus, AllCasesAgree) {
  std::ifstream in(BOARDEVAL_CORPUS_PATH);
  ASSERT_TRUE(in) << BOARDEVAL_CORPUS_PATH;
  const json corpus = json::parse(in);
  ASSERT_GE(corpus.at("cases").size(), 50u);
  for (const auto& c : corpus.at("cases")) {
    EXPECT_EQ(boardeval::testing::check_corpus_case(c), "") << c.at("name").get<std::string>();
  }
}
