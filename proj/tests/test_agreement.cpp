#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace ehrner;
using namespace ehrner::agreement;
using fixtures::mention;

namespace {

AnnotationSet set_of(std::string annotator, std::vector<Mention> ms, std::string doc = "D1") {
  AnnotationSet s;
  s.doc_id = std::move(doc);
  s.annotator_id = std::move(annotator);
  s.mentions = std::move(ms);
  return s;
}

std::vector<Mention> four() {
  return {mention(0, 7, "clinical_findings"), mention(8, 15, "anatomic_structure"), mention(20, 29, "tests"),
          mention(30, 40, "pathological_conditions/respiratory")};
}

std::vector<Mention> random_mentions(std::mt19937_64& rng) {
  const std::vector<std::string> nodes{"clinical_findings", "anatomic_structure",
                                       "pathological_conditions/respiratory", "pathological_conditions/infectious"};
  std::vector<Mention> out;
  const auto n = rng() % 8;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = rng() % 20;
    out.push_back(mention(s, s + 1 + rng() % 6, nodes[rng() % nodes.size()]));
  }
  return out;
}

// Exact matches by multiset intersection over (span, node).
std::size_t exact_oracle(const std::vector<Mention>& a, const std::vector<Mention>& b) {
  std::map<std::pair<Span, std::string>, int> ca, cb;
  for (const auto& m : a) ++ca[{m.span, m.node_id}];
  for (const auto& m : b) ++cb[{m.span, m.node_id}];
  std::size_t n = 0;
  for (const auto& [k, v] : ca) {
    auto it = cb.find(k);
    if (it != cb.end()) n += static_cast<std::size_t>(std::min(v, it->second));
  }
  return n;
}

}  // namespace

TEST(Agreement, IdenticalSets) {
  const auto a = set_of("ann1", four());
  const auto b = set_of("ann2", four());
  for (auto mode : {AgreementMode::exact, AgreementMode::relaxed, AgreementMode::class_only}) {
    const auto p = pairwise_agreement(a, b, mode, &fixtures::seed());
    EXPECT_DOUBLE_EQ(p.precision, 1.0);
    EXPECT_DOUBLE_EQ(p.recall, 1.0);
    EXPECT_DOUBLE_EQ(p.f1, 1.0);
  }
}

TEST(Agreement, HalfOverlap) {
  auto bm = four();
  bm[2] = mention(50, 55, "tests");
  bm[3] = mention(60, 65, "devices");
  const auto p = pairwise_agreement(set_of("ann1", four()), set_of("ann2", bm), AgreementMode::exact);
  EXPECT_DOUBLE_EQ(p.precision, 0.5);
  EXPECT_DOUBLE_EQ(p.recall, 0.5);
  EXPECT_DOUBLE_EQ(p.f1, 0.5);
}

TEST(Agreement, EmptySide) {
  const auto p = pairwise_agreement(set_of("ann1", {}), set_of("ann2", four()), AgreementMode::exact);
  EXPECT_DOUBLE_EQ(p.precision, 0.0);
  EXPECT_DOUBLE_EQ(p.recall, 0.0);
  EXPECT_DOUBLE_EQ(p.f1, 0.0);
}

TEST(Agreement, DocMismatch) {
  try {
    pairwise_agreement(set_of("a", {}), set_of("b", {}, "D2"), AgreementMode::exact);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.qualified(), "agreement.DocMismatch");
  }
}

TEST(Agreement, ModeSemantics) {
  const auto a = set_of("a", {mention(0, 10, "pathological_conditions/respiratory")});
  const auto shifted = set_of("b", {mention(5, 12, "pathological_conditions/respiratory")});
  const auto sibling = set_of("b", {mention(0, 10, "pathological_conditions/infectious")});
  EXPECT_DOUBLE_EQ(pairwise_agreement(a, shifted, AgreementMode::exact).f1, 0.0);
  EXPECT_DOUBLE_EQ(pairwise_agreement(a, shifted, AgreementMode::relaxed).f1, 1.0);
  EXPECT_DOUBLE_EQ(pairwise_agreement(a, sibling, AgreementMode::relaxed).f1, 0.0);
  EXPECT_DOUBLE_EQ(pairwise_agreement(a, sibling, AgreementMode::class_only, &fixtures::seed()).f1, 1.0);
  // Touching spans share no character.
  const auto touching = set_of("b", {mention(10, 12, "pathological_conditions/respiratory")});
  EXPECT_DOUBLE_EQ(pairwise_agreement(a, touching, AgreementMode::relaxed).f1, 0.0);
}

TEST(Agreement, RandomPairsExactNotAboveRelaxedAndSymmetric) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = set_of("a", random_mentions(rng));
    const auto b = set_of("b", random_mentions(rng));
    const auto ce = pairwise_counts(a, b, AgreementMode::exact);
    EXPECT_EQ(ce.matched, exact_oracle(a.mentions, b.mentions));
    const double exact = agreement_prf(ce).f1;
    const double relaxed = pairwise_agreement(a, b, AgreementMode::relaxed).f1;
    EXPECT_LE(exact, relaxed);
    for (auto mode : {AgreementMode::exact, AgreementMode::relaxed, AgreementMode::class_only}) {
      EXPECT_DOUBLE_EQ(pairwise_agreement(a, b, mode, &fixtures::seed()).f1,
                       pairwise_agreement(b, a, mode, &fixtures::seed()).f1);
    }
    const auto p = pairwise_agreement(a, b, AgreementMode::relaxed);
    EXPECT_GE(p.precision, 0.0);
    EXPECT_LE(p.precision, 1.0);
    EXPECT_LE(p.recall, 1.0);
  }
}

TEST(Agreement, ReportKnownCounts) {
  // 12 mentions from ann1, 14 from ann2, 10 exact matches over two documents.
  Corpus c;
  for (int d = 0; d < 2; ++d) {
    AnnotatedDocument ad;
    ad.doc = fixtures::doc("D" + std::to_string(d), std::string(200, 'x'));
    std::vector<Mention> a, b;
    for (int i = 0; i < 6; ++i) a.push_back(mention(i * 10, i * 10 + 5, "clinical_findings"));
    for (int i = 0; i < 5; ++i) b.push_back(mention(i * 10, i * 10 + 5, "clinical_findings"));
    for (int i = 0; i < 2; ++i) b.push_back(mention(100 + i * 10, 100 + i * 10 + 5, "tests"));
    ad.annotations = {set_of("ann1", a, ad.doc.id), set_of("ann2", b, ad.doc.id)};
    c.push_back(ad);
  }
  const auto r = agreement_report(c, AgreementMode::exact, &fixtures::seed());
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_DOUBLE_EQ(r.pairs[0].scores.precision, 10.0 / 14.0);
  EXPECT_DOUBLE_EQ(r.pairs[0].scores.recall, 10.0 / 12.0);
  EXPECT_EQ(r.pairs[0].support, 2u);
  EXPECT_DOUBLE_EQ(r.per_class.at("tests"), 0.0);

  // One document: the report equals the pairwise result.
  const Corpus one{c[0]};
  const auto r1 = agreement_report(one, AgreementMode::exact);
  const auto p = pairwise_agreement(c[0].annotations[0], c[0].annotations[1], AgreementMode::exact);
  EXPECT_DOUBLE_EQ(r1.pairs[0].scores.f1, p.f1);
}

TEST(Agreement, TotalDisagreement) {
  AnnotatedDocument ad;
  ad.doc = fixtures::doc("D1", "abc def");
  ad.annotations = {set_of("a", {mention(0, 3, "tests")}), set_of("b", {mention(4, 7, "devices")})};
  const auto r = agreement_report({ad}, AgreementMode::relaxed);
  for (const auto& p : r.pairs) EXPECT_DOUBLE_EQ(p.scores.f1, 0.0);
}

TEST(Agreement, NoOverlap) {
  AnnotatedDocument ad;
  ad.doc = fixtures::doc("D1", "abc");
  ad.annotations = {set_of("a", {})};
  try {
    agreement_report({ad}, AgreementMode::exact);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.qualified(), "agreement.NoOverlap");
  }
}

TEST(Agreement, ModifierAccuracyOverExactMatches) {
  AnnotatedDocument ad;
  ad.doc = fixtures::doc("D1", "sem febre nem tosse");
  ad.annotations = {set_of("a", {mention(4, 9, "clinical_findings", {"negation"}), mention(14, 19, "clinical_findings", {"negation"})}),
                    set_of("b", {mention(4, 9, "clinical_findings", {"negation"}), mention(14, 19, "clinical_findings")})};
  const auto r = agreement_report({ad}, AgreementMode::exact);
  EXPECT_DOUBLE_EQ(r.pairs[0].modifier_accuracy, 0.5);
}

TEST(Agreement, ParseMode) {
  EXPECT_EQ(parse_agreement_mode("class_only"), AgreementMode::class_only);
  EXPECT_THROW(parse_agreement_mode("fuzzy"), Error);
}
