#include <gtest/gtest.h>

#include <sstream>

#include "pubrank/error.hpp"
#include "test_support.hpp"

namespace pubrank {
namespace {

class SampleRegistry : public ::testing::Test {
 protected:
  PublisherRegistry registry = load_registry_directory(test::sample_registry_dir());
};

TEST_F(SampleRegistry, ElsevierHasFifteenVariants) {
  auto variants = registry.variants_resolving_to("elsevier");
  ASSERT_EQ(variants.size(), 15u);
  for (const auto* variant : variants) {
    EXPECT_EQ(registry.resolve(variant->raw), "elsevier") << variant->raw;
  }
}

TEST_F(SampleRegistry, ImprintsFoldIntoTheirCorporation) {
  EXPECT_EQ(registry.resolve("Pergamon"), "elsevier");
  EXPECT_EQ(registry.resolve("Academic Press"), "elsevier");
  EXPECT_EQ(registry.resolve("North Holland"), "elsevier");
  EXPECT_EQ(registry.publisher(registry.resolve("Pergamon")).name, "Elsevier");
}

TEST_F(SampleRegistry, AcquiredPublisherResolvesToAcquirer) {
  EXPECT_EQ(registry.resolve("WILLAN PUBL"), "taylor-francis");
  EXPECT_EQ(registry.publisher(registry.resolve("WILLAN PUBL")).name, "Taylor & Francis");
  EXPECT_EQ(registry.resolve("A K Peters Ltd"), "crc-press");
  EXPECT_EQ(registry.apply_acquisitions("ak-peters"), "crc-press");
}

TEST_F(SampleRegistry, CanonicalNameResolvesToItself) {
  EXPECT_EQ(registry.resolve("Routledge"), "routledge");
  EXPECT_EQ(registry.resolve("Princeton University Press"), "princeton-up");
  EXPECT_EQ(registry.apply_acquisitions("springer"), "springer");
}

TEST_F(SampleRegistry, CaseAndWhitespaceAreFolded) {
  EXPECT_EQ(registry.resolve("  pergamon "), "elsevier");
  EXPECT_EQ(registry.resolve("PALGRAVE\tMACMILLAN"), "palgrave-macmillan");
}

TEST_F(SampleRegistry, UnresolvedCarriesFoldedString) {
  try {
    registry.resolve("  Unknown   HOUSE ");
    FAIL() << "expected UnresolvedPublisherError";
  } catch (const UnresolvedPublisherError& e) {
    EXPECT_EQ(e.folded(), "unknown house");
  }
  EXPECT_EQ(registry.try_resolve("Unknown House"), nullptr);
}

TEST_F(SampleRegistry, UnknownIdIsNotFound) {
  EXPECT_THROW(registry.publisher("no-such-id"), NotFoundError);
  EXPECT_THROW(registry.apply_acquisitions("no-such-id"), NotFoundError);
}

TEST(FoldName, TrimsCollapsesAndLowercases) {
  EXPECT_EQ(fold_name("  Springer-Verlag   Berlin\t"), "springer-verlag berlin");
  EXPECT_EQ(fold_name(""), "");
  EXPECT_EQ(fold_name("A K Peters Ltd"), "a k peters ltd");
}

TEST(Registry, TransitiveAcquisitions) {
  auto registry = test::make_registry("a,A,commercial,\nb,B,commercial,\nc,C,commercial,\n", "",
                                      "a,b,2001\nb,c,2005\n");
  EXPECT_EQ(registry.apply_acquisitions("a"), "c");
  EXPECT_EQ(registry.resolve("A"), "c");
  EXPECT_EQ(registry.apply_acquisitions("c"), "c");
}

TEST(Registry, TwoNodeCycleIsFatalAndNamed) {
  try {
    test::make_registry("a,A,commercial,\nb,B,commercial,\n", "", "a,b,\nb,a,\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    const std::string message = e.what();
    EXPECT_NE(message.find("cycle"), std::string::npos);
    EXPECT_NE(message.find("a b"), std::string::npos) << message;
  }
}

TEST(Registry, EmptyAcquisitionsFile) {
  std::istringstream publishers("id,name,type,website\na,A,commercial,\n");
  std::istringstream variants("raw,canonical_id,city,address\nA Ltd,a,,\n");
  std::istringstream acquisitions("");
  auto registry = load_registry(variants, publishers, acquisitions);
  EXPECT_EQ(registry.resolve("A Ltd"), "a");
  EXPECT_TRUE(registry.acquisitions().empty());
}

TEST(Registry, VariantOfUnknownPublisherIsFatal) {
  EXPECT_THROW(test::make_registry("a,A,commercial,\n", "Ghost,ghost,,\n"), ValidationError);
}

TEST(Registry, DuplicateFoldedVariantIsFatal) {
  EXPECT_THROW(test::make_registry("a,A,commercial,\nb,B,commercial,\n", "Same Name,a,,\nSAME  name,b,,\n"),
               ValidationError);
}

TEST(Registry, BadTypeIsFatal) {
  EXPECT_THROW(test::make_registry("a,A,nonprofit,\n"), FormatError);
}

TEST(Registry, SelfAndDoubleAcquisitionAreRejected) {
  EXPECT_THROW(test::make_registry("a,A,commercial,\n", "", "a,a,\n"), ValidationError);
  EXPECT_THROW(test::make_registry("a,A,commercial,\nb,B,commercial,\nc,C,commercial,\n", "", "a,b,\na,c,\n"),
               ValidationError);
}

TEST(Registry, FingerprintTracksContent) {
  auto one = test::make_registry("a,A,commercial,\n");
  auto same = test::make_registry("a,A,commercial,\n");
  auto other = test::make_registry("a,A,university_press,\n");
  EXPECT_EQ(one.fingerprint(), same.fingerprint());
  EXPECT_NE(one.fingerprint(), other.fingerprint());
}

}  // namespace
}  // namespace pubrank
