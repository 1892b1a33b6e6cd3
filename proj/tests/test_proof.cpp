#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "nelbri/proof.hpp"

using namespace nelbri;

namespace {

const std::string kFixtures = FIXTURE_DIR;

ProofScript appendix() { return load_proof(kFixtures + "/appendix_meet_zero.prf"); }

}  // namespace

TEST_CASE("parsing the bundled appendix script") {
  ProofScript script = appendix();
  CHECK(script.name == "appendix_meet_zero");
  REQUIRE(script.goal.has_value());
  CHECK(format_equation(*script.goal) == "x ^ 0 = 0");
  REQUIRE(script.lines.size() == 296);
  for (std::size_t i = 0; i < script.lines.size(); ++i) {
    CHECK(script.lines[i].index == static_cast<int>(i) + 1);
    for (int c : script.lines[i].cited) CHECK(c < script.lines[i].index);
  }
  // The script mixes all four justification kinds.
  int axioms = 0, defs = 0, lemmas = 0, rewrites = 0;
  for (const ProofLine& line : script.lines) {
    switch (line.kind) {
      case ProofLine::Just::Axiom: ++axioms; break;
      case ProofLine::Just::Def: ++defs; break;
      case ProofLine::Just::Lemma: ++lemmas; break;
      case ProofLine::Just::Rewrite: ++rewrites; break;
    }
  }
  CHECK(axioms > 0);
  CHECK(lemmas > 0);
  CHECK(rewrites > 200);
  CHECK(axioms + defs + lemmas + rewrites == 296);
}

TEST_CASE("parse rejects malformed scripts") {
  auto bad = [](const char* text) {
    CHECK_THROWS(parse_proof_text(text));
  };
  bad("proof p\n2: x = x ; axiom B1\n");                       // indices not from 1
  bad("proof p\n1: x = x ; axiom B1\n3: x = x ; axiom B1\n");  // gap
  bad("proof p\n1: x = x ; by 1\n");                           // self-citation
  bad("proof p\n1: x = x ; by 2\n");                           // forward citation
  bad("proof p\n1: x = x ; because B1\n");                     // unknown keyword
  bad("proof p\n1: x = x ; by 1 2 3\n");                       // too many citations
  bad("proof p\n1: x ; axiom B1\n");                           // not an equation
}

TEST_CASE("empty proof meets only a reflexive goal") {
  ProofReport ok = verify_proof(parse_proof_text("proof p\ngoal x ^ y = x ^ y\n"));
  CHECK(ok.verified);
  ProofReport bad = verify_proof(parse_proof_text("proof p\ngoal x ^ y = y ^ x\n"));
  CHECK_FALSE(bad.verified);
}

TEST_CASE("axiom lines accept exactly the instances of catalog forms") {
  ProofReport r = verify_proof(parse_proof_text(
      "proof p\n"
      "goal ((x ^ y) ->> (x ^ y)) ->> 0 = 0\n"
      "1: (x ->> x) ->> y = y ; axiom B1\n"
      "2: ((x ^ y) ->> (x ^ y)) ->> 0 = 0 ; axiom B1\n"));
  CHECK(r.verified);
  ProofReport bad = verify_proof(
      parse_proof_text("proof p\ngoal x ^ y = y\n1: x ^ y = y ; axiom B1\n"),
      VerifyOptions{.continue_on_error = true});
  CHECK_FALSE(bad.verified);
  CHECK_FALSE(bad.lines[0].ok);
  ProofReport unknown = verify_proof(
      parse_proof_text("proof p\ngoal x = x\n1: x = x ; axiom B99\n"),
      VerifyOptions{.continue_on_error = true});
  CHECK_FALSE(unknown.verified);
}

TEST_CASE("definition and lemma lines") {
  ProofReport r = verify_proof(parse_proof_text(
      "proof p\n"
      "goal a ^ b = b ^ a\n"
      "1: ~x = x ->> 0 ; def ~\n"
      "2: 1 = 0 ->> 0 ; def 1\n"
      "3: a ^ b = b ^ a ; lemma L5.f\n"));
  CHECK(r.verified);
  // Lemma acceptance is flagged as trusted, not derived.
  CHECK(r.lines[2].message.find("model-checked") != std::string::npos);
  ProofReport bad = verify_proof(
      parse_proof_text("proof p\ngoal x ^ y = y ^ x\n1: x ^ y = y ^ x ; lemma L9.z\n"),
      VerifyOptions{.continue_on_error = true});
  CHECK_FALSE(bad.verified);
  ProofReport wrong = verify_proof(
      parse_proof_text("proof p\ngoal x ^ y = x\n1: x ^ y = x ; lemma L5.f\n"),
      VerifyOptions{.continue_on_error = true});
  CHECK_FALSE(wrong.verified);
}

TEST_CASE("rewrite lines: instances and one-hop derivations") {
  ProofReport r = verify_proof(parse_proof_text(
      "proof p\n"
      "goal x ^ ((y ->> y) ->> z) = x ^ z\n"
      "1: (x ->> x) ->> y = y ; axiom B1\n"
      "2: (z ->> z) ->> 0 = 0 ; by 1\n"
      "3: x ^ ((y ->> y) ->> z) = x ^ z ; by 1\n"));
  CHECK(r.verified);
  REQUIRE(r.lines.size() == 3);
  // Line 2 is a plain instance: no hops needed.
  REQUIRE(r.lines[1].certificate.has_value());
  CHECK(r.lines[1].certificate->hops.empty());
  // Line 3 needs one genuine rewrite hop.
  REQUIRE(r.lines[2].certificate.has_value());
  CHECK(r.lines[2].certificate->hops.size() == 1);
  CHECK(r.lines[2].certificate->hops[0].rule_line == 1);
}

TEST_CASE("depth budget bounds the search") {
  // Needs two hops: rewrite with line 1 twice.
  const char* text =
      "proof p\n"
      "goal ((x ->> x) ->> ((y ->> y) ->> z)) = z\n"
      "1: (x ->> x) ->> y = y ; axiom B1\n"
      "2: ((x ->> x) ->> ((y ->> y) ->> z)) = z ; by 1\n";
  CHECK(verify_proof(parse_proof_text(text), VerifyOptions{.depth = 2}).verified);
  CHECK_FALSE(
      verify_proof(parse_proof_text(text), VerifyOptions{.depth = 0}).verified);
}

TEST_CASE("failed rewrites report near-miss citations") {
  ProofReport r = verify_proof(
      parse_proof_text("proof p\n"
                       "goal x ^ ((y ->> y) ->> z) = x ^ z\n"
                       "1: x ^ y = y ^ x ; lemma L5.f\n"
                       "2: (x ->> x) ->> y = y ; axiom B1\n"
                       "3: x ^ x = x ; lemma L5.g\n"
                       "4: x ^ ((y ->> y) ->> z) = x ^ z ; by 3\n"),
      VerifyOptions{.continue_on_error = true});
  CHECK_FALSE(r.verified);
  REQUIRE(r.lines.size() == 4);
  CHECK_FALSE(r.lines[3].ok);
  bool suggests_line_2 = false;
  for (const auto& alt : r.lines[3].near_miss_citations)
    if (alt == std::vector<int>{2}) suggests_line_2 = true;
  CHECK(suggests_line_2);
}

TEST_CASE("continue_on_error versus halt-at-first-failure") {
  const char* text =
      "proof p\n"
      "goal (x ->> x) ->> y = y\n"
      "1: x ^ y = y ; axiom B1\n"
      "2: (x ->> x) ->> y = y ; axiom B1\n";
  ProofReport halt = verify_proof(parse_proof_text(text));
  CHECK(halt.lines.size() == 1);
  ProofReport full =
      verify_proof(parse_proof_text(text), VerifyOptions{.continue_on_error = true});
  CHECK(full.lines.size() == 2);
  CHECK_FALSE(full.lines[0].ok);
  CHECK(full.lines[1].ok);
}

TEST_CASE("the appendix derivation verifies end to end") {
  ProofReport r = verify_proof(appendix());
  CHECK(r.verified);
  REQUIRE(r.lines.size() == 296);
  ProofScript script = appendix();
  for (std::size_t i = 0; i < r.lines.size(); ++i) {
    CHECK(r.lines[i].ok);
    REQUIRE(r.lines[i].certificate.has_value());
    CHECK(replay_certificate(*r.lines[i].certificate, script.lines[i].claim));
  }
}

TEST_CASE("replay rejects corrupted certificates and foreign claims") {
  ProofReport r = verify_proof(parse_proof_text(
      "proof p\n"
      "goal x ^ ((y ->> y) ->> z) = x ^ z\n"
      "1: (x ->> x) ->> y = y ; axiom B1\n"
      "2: x ^ ((y ->> y) ->> z) = x ^ z ; by 1\n"));
  REQUIRE(r.verified);
  StepCertificate cert = *r.lines[1].certificate;
  Equation claim = parse_equation("x ^ ((y ->> y) ->> z) = x ^ z",
                                  Signature::brignole());
  CHECK(replay_certificate(cert, claim));
  // Same certificate, different claim: rejected.
  CHECK_FALSE(replay_certificate(
      cert, parse_equation("x ^ ((y ->> y) ->> z) = x ^ y", Signature::brignole())));
  // Corrupt the recorded hop result: rejected.
  StepCertificate corrupt = cert;
  REQUIRE_FALSE(corrupt.hops.empty());
  corrupt.hops[0].result.rhs = Term::constant("0");
  CHECK_FALSE(replay_certificate(corrupt, claim));
  // Corrupt the start equation: rejected.
  StepCertificate shifted = cert;
  shifted.start = Equation{Term::variable("q"), Term::variable("q")};
  CHECK_FALSE(replay_certificate(shifted, claim));
}

TEST_CASE("every verified prefix of the appendix is itself verified") {
  ProofScript script = appendix();
  ProofScript prefix;
  prefix.name = script.name;
  prefix.lines.assign(script.lines.begin(), script.lines.begin() + 60);
  prefix.goal = prefix.lines.back().claim;
  ProofReport r = verify_proof(prefix);
  CHECK(r.verified);
  CHECK(r.lines.size() == 60);
}
