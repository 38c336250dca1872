#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pubrank {

enum class PublisherType : std::uint8_t { CommercialAcademic, UniversityPress };

/// "commercial" / "university_press", the registry file spelling.
std::string_view to_string(PublisherType type);
std::optional<PublisherType> parse_publisher_type(std::string_view text);

struct CanonicalPublisher {
  std::string id;
  std::string name;
  PublisherType type = PublisherType::CommercialAcademic;
  std::optional<std::string> website;
};

struct NameVariant {
  std::string raw;
  std::string canonical_id;
  std::optional<std::string> city;
  std::optional<std::string> address;
};

struct AcquisitionEvent {
  std::string acquired_id;
  std::string acquirer_id;
  std::optional<int> year;  // recorded, never used for attribution
};

/// Trims, collapses internal whitespace runs to one space, and lowercases ASCII.
std::string fold_name(std::string_view raw);

/// Canonical publishers, their name variants, and acquisition events. Immutable once built.
///
/// Resolution folds the raw string, looks it up among the explicit variants (falling back to
/// canonical names), then follows acquisitions to the terminal owner. Output of an acquired
/// publisher is attributed to its acquirer for every year.
class PublisherRegistry {
 public:
  /// Validates: unique ids, non-empty names, variants reference known publishers, no duplicate
  /// folded variant, acquisitions reference known publishers and form no cycle.
  PublisherRegistry(std::vector<CanonicalPublisher> publishers, std::vector<NameVariant> variants,
                    std::vector<AcquisitionEvent> acquisitions);

  const std::string& resolve(std::string_view raw) const;  // throws UnresolvedPublisherError
  const std::string* try_resolve(std::string_view raw) const;

  /// Terminal owner of `publisher_id`. Throws NotFoundError for unknown ids.
  const std::string& apply_acquisitions(std::string_view publisher_id) const;

  const CanonicalPublisher& publisher(std::string_view publisher_id) const;  // NotFoundError
  const CanonicalPublisher* find(std::string_view publisher_id) const;

  std::span<const CanonicalPublisher> publishers() const { return publishers_; }
  std::span<const NameVariant> variants() const { return variants_; }
  std::span<const AcquisitionEvent> acquisitions() const { return acquisitions_; }

  /// Explicit variants whose resolution ends at `publisher_id`, in file order.
  std::vector<const NameVariant*> variants_resolving_to(std::string_view publisher_id) const;

  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  std::vector<CanonicalPublisher> publishers_;
  std::vector<NameVariant> variants_;
  std::vector<AcquisitionEvent> acquisitions_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<std::string, std::size_t> by_folded_;  // folded name -> publisher index
  std::vector<std::size_t> terminal_;                        // publisher index -> terminal index
  std::uint64_t fingerprint_ = 0;
};

/// Loads publishers.csv (id,name,type,website), variants.csv (raw,canonical_id,city,address),
/// and acquisitions.csv (acquired_id,acquirer_id,year).
PublisherRegistry load_registry(std::istream& variants, std::istream& publishers,
                                std::istream& acquisitions);

/// Loads the three files from `directory`.
PublisherRegistry load_registry_directory(const std::filesystem::path& directory);

}  // namespace pubrank
