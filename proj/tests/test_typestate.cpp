//===- test_typestate.cpp -------------------------------------------------===//

#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace errchain;
using namespace errchain::test;

namespace {

std::vector<std::string> seed_ids(const AnalysisRun &run) {
  std::vector<std::string> out;
  for (const auto &s : run.seeds)
    out.push_back(s.id);
  return out;
}

std::vector<ErrorReport> errors_of(const AnalysisRun &run, ErrorKind kind) {
  std::vector<ErrorReport> out;
  for (const auto &e : run.report.errors)
    if (e.kind == kind)
      out.push_back(e);
  return out;
}

} // namespace

TEST_CASE("fixture seeds") {
  auto run = run_corpus("fileencrypt.mprog");
  CHECK(seed_ids(run) ==
        std::vector<std::string>{"DESKeySpec#2@10", "SecretKeyFactory#3@10",
                                 "IvParameterSpec#7", "Cipher#8",
                                 "CipherInputStream#13"});
  const Seed &cipher = seed_at(run, "Cipher", 8);
  CHECK(cipher.paths == std::set<int>{0});
  CHECK(cipher.creation.line == 15);
}

TEST_CASE("no rule classes, no seeds") {
  auto run = run_text("fun main(a) {\n is = new FileInputStream(a);\n"
                      " x = is.read();\n}");
  CHECK(run.seeds.empty());
  CHECK(run.report.errors.empty());
}

TEST_CASE("a generator allocation is one seed") {
  auto run = run_text("fun main() {\n sr = new SecureRandom();\n}");
  REQUIRE(run.seeds.size() == 1);
  CHECK(run.seeds[0].id == "SecureRandom#1");
}

TEST_CASE("a static factory not enabled at start is not a seed") {
  // doFinal is not a static factory, Cipher.getInstance is.
  auto run = run_text("fun main(d) {\n x = Cipher.doFinal(d);\n"
                      " c = Cipher.getInstance(\"AES/GCM/NoPadding\");\n}");
  CHECK(seed_ids(run) == std::vector<std::string>{"Cipher#2"});
}

TEST_CASE("seeds inside a function called twice") {
  auto run = run_text("fun mk() {\n sr = new SecureRandom();\n return sr;\n}\n"
                      "fun main() {\n a = mk();\n b = mk();\n}");
  CHECK(seed_ids(run) ==
        std::vector<std::string>{"SecureRandom#1@3", "SecureRandom#1@4"});
}

TEST_CASE("fixture Cipher completes without typestate errors") {
  auto run = run_corpus("fileencrypt.mprog");
  const Seed &cipher = seed_at(run, "Cipher", 8);
  auto firings = firings_of(run, cipher.id);
  REQUIRE(firings.size() == 2);
  CHECK(firings[0].label == "g");
  CHECK(firings[1].label == "i2");
  CHECK(firings[1].valid_transition);
  CHECK(cipher.rule->fsm.is_accepting(firings[1].resulting_state));
  CHECK(errors_of(run, ErrorKind::Typestate).empty());
  CHECK(errors_of(run, ErrorKind::IncompleteOperation).empty());
}

TEST_CASE("a call out of order is a typestate error at that call") {
  auto run = run_text("fun main(data, k) {\n"
                      " c = Cipher.getInstance(\"AES/GCM/NoPadding\");\n"
                      " c.doFinal(data);\n"
                      " c.init(1, k);\n}");
  auto ts = errors_of(run, ErrorKind::Typestate);
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].location.statement_id == 2);
  CHECK(ts[0].message ==
        "Unexpected call to doFinal on Cipher object. Expected a call to "
        "init.");
  // The state stays put, so the later init is accepted.
  auto firings = firings_of(run, "Cipher#1");
  REQUIRE(firings.size() == 3);
  CHECK_FALSE(firings[1].valid_transition);
  CHECK(firings[2].valid_transition);
  CHECK(errors_of(run, ErrorKind::IncompleteOperation).empty());
}

TEST_CASE("an unfinished object is incomplete at its last event") {
  auto run = run_text("fun main() {\n"
                      " c = Cipher.getInstance(\"AES/GCM/NoPadding\");\n}");
  auto io = errors_of(run, ErrorKind::IncompleteOperation);
  REQUIRE(io.size() == 1);
  CHECK(io[0].location.statement_id == 1);
  CHECK(io[0].id == "IOE:1:Cipher#1");
}

TEST_CASE("incomplete without events sits at the creation site") {
  RuleSet rules = rules_from_text(
      {"SPEC Box\nEVENTS\n c: Box();\n o: open();\nORDER\n c, o;\n"});
  auto run = run_text("fun main() {\n x = 1;\n b = new Box();\n}", {}, &rules);
  auto io = errors_of(run, ErrorKind::IncompleteOperation);
  REQUIRE(io.size() == 1);
  CHECK(io[0].location.statement_id == 2);
}

TEST_CASE("incomplete on one branch only") {
  auto run = run_text("fun main(k, d) {\n"
                      " c = Cipher.getInstance(\"AES/GCM/NoPadding\");\n"
                      " if {\n  c.init(1, k);\n } else {\n  x = 1;\n }\n}");
  auto io = errors_of(run, ErrorKind::IncompleteOperation);
  REQUIRE(io.size() == 1);
  CHECK(io[0].location.statement_id == 1);
}

TEST_CASE("forbidden constructor") {
  auto run = run_corpus("perkind.mprog");
  auto fme = errors_of(run, ErrorKind::ForbiddenMethod);
  REQUIRE(fme.size() == 1);
  CHECK(fme[0].id == "FME:6:PBEKeySpec#6");
  CHECK(fme[0].message ==
        "Detected call to forbidden method PBEKeySpec/1 of class PBEKeySpec.");
}

TEST_CASE("forbidden method checks") {
  RuleSet rules = rules_from_text(
      {"SPEC Box\nEVENTS\n c: Box();\n o: open();\nORDER\n c, o*;\n"
       "FORBIDDEN\n smash/0;\n",
       "SPEC Jar\nEVENTS\n c: Jar();\nORDER\n c;\n"});
  SUBCASE("called") {
    auto run = run_text("fun main() {\n b = new Box();\n b.smash();\n"
                        " b.smash(1);\n}",
                        {}, &rules);
    auto fme = errors_of(run, ErrorKind::ForbiddenMethod);
    REQUIRE(fme.size() == 1);
    CHECK(fme[0].location.statement_id == 2);
  }
  SUBCASE("never called") {
    auto run = run_text("fun main() {\n b = new Box();\n b.open();\n}", {},
                        &rules);
    CHECK(run.report.errors.empty());
  }
  SUBCASE("nothing forbidden") {
    auto run = run_text("fun main() {\n j = new Jar();\n j.smash();\n}", {},
                        &rules);
    CHECK(run.report.errors.empty());
  }
}

TEST_CASE("incomplete iff some path trace is not accepted") {
  for (const auto &file : corpus_files()) {
    auto run = run_corpus(file.filename().string());
    for (const auto &a : run.analyses) {
      bool some_path_incomplete = false;
      for (int p : a.seed->paths) {
        std::vector<std::string> trace;
        for (const auto &f : a.firings)
          if (f.path_id == p && f.valid_transition)
            trace.push_back(f.label);
        if (!regex_match(a.seed->rule->spec, trace))
          some_path_incomplete = true;
      }
      bool reported = false;
      for (const auto &e : a.own_errors)
        reported |= e.kind == ErrorKind::IncompleteOperation;
      CHECK_MESSAGE(reported == some_path_incomplete, a.seed->id);
    }
  }
}

TEST_CASE("seed detection is deterministic") {
  for (const auto &file : corpus_files()) {
    auto a = run_corpus(file.filename().string());
    auto b = run_corpus(file.filename().string());
    CHECK(seed_ids(a) == seed_ids(b));
  }
}
