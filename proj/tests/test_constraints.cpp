//===- test_constraints.cpp -----------------------------------------------===//

#include "support.hpp"

#include <doctest.h>

using namespace errchain;
using namespace errchain::test;

namespace {

const SeedAnalysis &analysis_of(const AnalysisRun &run, std::string_view id) {
  for (const auto &a : run.analyses)
    if (a.seed->id == id)
      return a;
  FAIL("no such seed");
  throw std::logic_error("unreachable");
}

std::set<std::string> required_preds(const AnalysisRun &run,
                                     std::string_view seed) {
  std::set<std::string> out;
  for (const auto &r : analysis_of(run, seed).requirements)
    out.insert(r.predicate);
  return out;
}

std::string cipher_program(std::string_view trans, std::string_view mode) {
  return "fun main(k, iv) {\n c = Cipher.getInstance(\"" + std::string(trans) +
         "\");\n m = " + std::string(mode) + ";\n c.init(m, k, iv);\n}";
}

} // namespace

TEST_CASE("an insecure factory algorithm") {
  auto run = run_corpus("fileencrypt.mprog");
  auto ce = ids_of_kind(run.report, ErrorKind::Constraint);
  CHECK(ce == std::vector<std::string>{"CE:3:SecretKeyFactory#3@10",
                                       "CE:8:Cipher#8"});
  const ErrorReport *skf = run.report.find("CE:3:SecretKeyFactory#3@10");
  REQUIRE(skf);
  CHECK(skf->location.line == 7);
  CHECK(skf->message == "Parameter alg of SecretKeyFactory is \"DES\"; "
                        "expected one of {\"AES\", \"PBKDF2WithHmacSHA256\"}.");
}

TEST_CASE("an allowed transformation passes") {
  auto run = run_text(cipher_program("AES/GCM/NoPadding", "1"));
  CHECK(ids_of_kind(run.report, ErrorKind::Constraint).empty());
  auto bad = run_text(cipher_program("DES/CBC/PKCS5Padding", "1"));
  CHECK(ids_of_kind(bad.report, ErrorKind::Constraint) ==
        std::vector<std::string>{"CE:1:Cipher#1"});
}

TEST_CASE("every witnessing literal counts") {
  auto run = run_text("fun main(k) {\n if {\n  t = \"AES/GCM/NoPadding\";\n"
                      " } else {\n  t = \"RC4\";\n }\n"
                      " c = Cipher.getInstance(t);\n c.init(2, k);\n}");
  CHECK(ids_of_kind(run.report, ErrorKind::Constraint) ==
        std::vector<std::string>{"CE:4:Cipher#4"});
}

TEST_CASE("unknown values never produce value errors") {
  auto run = run_text("fun main(t, key, k) {\n c = Cipher.getInstance(t);\n"
                      " c.init(1, k);\n"
                      " s = new SecretKeySpec(key, \"AES\");\n}");
  CHECK(ids_of_kind(run.report, ErrorKind::Constraint).empty());
  CHECK(ids_of_kind(run.report, ErrorKind::HardCoded).empty());
}

TEST_CASE("hard-coded key material") {
  auto run = run_corpus("perkind.mprog");
  CHECK(ids_of_kind(run.report, ErrorKind::HardCoded) ==
        std::vector<std::string>{"HCE:4:SecretKeySpec#4"});
}

TEST_CASE("a String password") {
  auto run = run_corpus("perkind.mprog");
  auto nte = ids_of_kind(run.report, ErrorKind::NeverTypeOf);
  REQUIRE(nte == std::vector<std::string>{"NTE:5:PBEKeySpec#5"});
  CHECK(run.report.find(nte[0])->location.line == 9);
}

TEST_CASE("implications apply only when their guard holds") {
  RuleSet rules = rules_from_text(
      {"SPEC Box\nOBJECTS\n Int m;\n String s;\nEVENTS\n c: Box(m, s);\n"
       "ORDER\n c;\nCONSTRAINTS\n m == 1 => s in {\"ok\"};\n"});
  auto hit = run_text("fun main() {\n b = new Box(1, \"bad\");\n}", {}, &rules);
  CHECK(ids_of_kind(hit.report, ErrorKind::Constraint).size() == 1);
  auto miss = run_text("fun main() {\n b = new Box(2, \"bad\");\n}", {}, &rules);
  CHECK(ids_of_kind(miss.report, ErrorKind::Constraint).empty());
  auto unknown =
      run_text("fun main(m) {\n b = new Box(m, \"bad\");\n}", {}, &rules);
  CHECK(ids_of_kind(unknown.report, ErrorKind::Constraint).empty());
}

TEST_CASE("guard evaluation") {
  ValueCondition mode_is_1{"mode", {Literal::integer(1)}, true};
  auto firing = [](LiteralSet lits) {
    EventFiring f;
    f.bindings["mode"] = ArgBinding{{}, std::move(lits), {}};
    return f;
  };
  using L = std::set<Literal>;
  std::vector<EventFiring> one{firing(L{Literal::integer(1)})};
  std::vector<EventFiring> two{firing(L{Literal::integer(2)})};
  std::vector<EventFiring> mixed{firing(L{Literal::integer(2)}),
                                 firing(L{Literal::integer(1)})};
  std::vector<EventFiring> unknown{firing(std::nullopt)};
  std::vector<EventFiring> partly{firing(L{Literal::integer(2)}),
                                  firing(std::nullopt)};
  CHECK(evaluate_guard(mode_is_1, one) == Truth::True);
  CHECK(evaluate_guard(mode_is_1, two) == Truth::False);
  CHECK(evaluate_guard(mode_is_1, mixed) == Truth::True);
  CHECK(evaluate_guard(mode_is_1, unknown) == Truth::Unknown);
  CHECK(evaluate_guard(mode_is_1, partly) == Truth::Unknown);
  CHECK(evaluate_guard(mode_is_1, {}) == Truth::Unknown);
}

TEST_CASE("decryption drops the IV requirement only with BET") {
  auto bet = run_corpus("decrypt.mprog", make_config(true, true));
  auto nobet = run_corpus("decrypt.mprog", make_config(true, false));
  CHECK(required_preds(bet, "Cipher#8") ==
        std::set<std::string>{"generatedKey"});
  CHECK(required_preds(nobet, "Cipher#8") ==
        std::set<std::string>{"generatedKey", "preparedIV"});
  const Seed &cipher = seed_at(bet, "Cipher", 8);
  auto firings = firings_of(bet, cipher.id);
  auto result = evaluate_constraints(cipher, firings, true);
  CHECK(result.guard_env.at("mode == 1") == Truth::False);
}

TEST_CASE("the unguarded key requirement is always active") {
  for (const auto &name : {"fileencrypt.mprog", "decrypt.mprog"})
    for (bool bet : {false, true}) {
      auto run = run_corpus(name, make_config(true, bet));
      CHECK(required_preds(run, "Cipher#8").contains("generatedKey"));
    }
}

TEST_CASE("an unknown guard keeps the requirement") {
  auto run = run_text("fun main(k, iv, src) {\n"
                      " c = Cipher.getInstance(\"AES/GCM/NoPadding\");\n"
                      " m = src.mode();\n c.init(m, k, iv);\n}",
                      make_config(true, true));
  CHECK(required_preds(run, "Cipher#1") ==
        std::set<std::string>{"generatedKey", "preparedIV"});
}

TEST_CASE("BET only ever removes requirements") {
  std::vector<std::string> programs;
  for (const auto &f : corpus_files())
    programs.push_back(read_text_file(f));
  programs.push_back(cipher_program("AES/GCM/NoPadding", "2"));
  programs.push_back(cipher_program("AES/GCM/NoPadding", "1"));
  for (const auto &text : programs) {
    auto off = run_text(text, make_config(true, false));
    auto on = run_text(text, make_config(true, true));
    REQUIRE(off.analyses.size() == on.analyses.size());
    for (std::size_t i = 0; i < on.analyses.size(); ++i)
      for (const auto &req : on.analyses[i].requirements) {
        const auto &all = off.analyses[i].requirements;
        CHECK(std::find(all.begin(), all.end(), req) != all.end());
      }
  }
}

TEST_CASE("requirements are grouped per statement and value") {
  auto run = run_corpus("fileencrypt.mprog");
  const auto &reqs = analysis_of(run, "Cipher#8").requirements;
  REQUIRE(reqs.size() == 2);
  for (const auto &r : reqs) {
    CHECK(r.location.statement_id == 11);
    CHECK(r.paths == std::set<int>{0});
  }
}
