#include "pubrank/registry.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_set>

#include "hash.hpp"
#include "pubrank/csv.hpp"
#include "pubrank/error.hpp"

namespace pubrank {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

std::optional<std::string> optional_field(const std::string& value) {
  if (value.empty()) {
    return std::nullopt;
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  return in;
}

}  // namespace

std::string_view to_string(PublisherType type) {
  return type == PublisherType::UniversityPress ? "university_press" : "commercial";
}

std::optional<PublisherType> parse_publisher_type(std::string_view text) {
  if (text == "commercial") {
    return PublisherType::CommercialAcademic;
  }
  if (text == "university_press") {
    return PublisherType::UniversityPress;
  }
  return std::nullopt;
}

std::string fold_name(std::string_view raw) {
  std::string folded;
  folded.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (is_space(c)) {
      pending_space = !folded.empty();
      continue;
    }
    if (pending_space) {
      folded.push_back(' ');
      pending_space = false;
    }
    folded.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return folded;
}

PublisherRegistry::PublisherRegistry(std::vector<CanonicalPublisher> publishers, std::vector<NameVariant> variants,
                                     std::vector<AcquisitionEvent> acquisitions)
    : publishers_(std::move(publishers)), variants_(std::move(variants)), acquisitions_(std::move(acquisitions)) {
  for (std::size_t i = 0; i < publishers_.size(); ++i) {
    const auto& publisher = publishers_[i];
    if (publisher.id.empty()) {
      throw ValidationError("publisher with empty id");
    }
    if (fold_name(publisher.name).empty()) {
      throw ValidationError("publisher \"" + publisher.id + "\" has an empty name");
    }
    if (!by_id_.emplace(publisher.id, i).second) {
      throw ValidationError("duplicate publisher id \"" + publisher.id + "\"");
    }
  }

  for (const auto& variant : variants_) {
    auto target = by_id_.find(variant.canonical_id);
    if (target == by_id_.end()) {
      throw ValidationError("variant \"" + variant.raw + "\" points at unknown publisher \"" +
                            variant.canonical_id + "\"");
    }
    std::string folded = fold_name(variant.raw);
    if (folded.empty()) {
      throw ValidationError("empty variant for publisher \"" + variant.canonical_id + "\"");
    }
    if (!by_folded_.emplace(folded, target->second).second) {
      throw ValidationError("duplicate variant \"" + variant.raw + "\" (folds to \"" + folded + "\")");
    }
  }

  // Canonical names resolve as implicit variants unless an explicit variant claims the string.
  std::unordered_map<std::string, std::size_t> implicit;
  for (std::size_t i = 0; i < publishers_.size(); ++i) {
    std::string folded = fold_name(publishers_[i].name);
    if (by_folded_.contains(folded)) {
      continue;
    }
    auto [it, inserted] = implicit.emplace(folded, i);
    if (!inserted) {
      throw ValidationError("publishers \"" + publishers_[it->second].id + "\" and \"" + publishers_[i].id +
                            "\" share the name \"" + folded + "\"; add an explicit variant");
    }
  }
  by_folded_.merge(implicit);

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(publishers_.size(), kNone);
  for (const auto& event : acquisitions_) {
    auto acquired = by_id_.find(event.acquired_id);
    auto acquirer = by_id_.find(event.acquirer_id);
    if (acquired == by_id_.end()) {
      throw ValidationError("acquisition of unknown publisher \"" + event.acquired_id + "\"");
    }
    if (acquirer == by_id_.end()) {
      throw ValidationError("acquisition by unknown publisher \"" + event.acquirer_id + "\"");
    }
    if (acquired->second == acquirer->second) {
      throw ValidationError("publisher \"" + event.acquired_id + "\" cannot acquire itself");
    }
    if (owner[acquired->second] != kNone) {
      throw ValidationError("publisher \"" + event.acquired_id + "\" is acquired more than once");
    }
    owner[acquired->second] = acquirer->second;
  }

  // Each publisher has at most one owner, so the graph is a set of chains; walk each one and
  // fail on the first revisit within the same walk.
  terminal_.assign(publishers_.size(), kNone);
  std::vector<std::size_t> walk_id(publishers_.size(), kNone);
  for (std::size_t start = 0; start < publishers_.size(); ++start) {
    std::vector<std::size_t> path;
    std::size_t node = start;
    while (terminal_[node] == kNone) {
      if (walk_id[node] == start) {
        auto first = std::find(path.begin(), path.end(), node);
        std::vector<std::string> members;
        for (auto it = first; it != path.end(); ++it) {
          members.push_back(publishers_[*it].id);
        }
        std::sort(members.begin(), members.end());
        std::string message = "acquisition cycle among:";
        for (const auto& member : members) {
          message += " " + member;
        }
        throw ValidationError(message);
      }
      walk_id[node] = start;
      path.push_back(node);
      if (owner[node] == kNone) {
        terminal_[node] = node;
        break;
      }
      node = owner[node];
    }
    for (std::size_t visited : path) {
      terminal_[visited] = terminal_[node];
    }
  }

  std::vector<std::string> canonical;
  for (const auto& p : publishers_) {
    canonical.push_back("p\x1f" + p.id + "\x1f" + p.name + "\x1f" + std::string(to_string(p.type)));
  }
  for (const auto& [folded, index] : by_folded_) {
    canonical.push_back("v\x1f" + folded + "\x1f" + publishers_[index].id);
  }
  for (std::size_t i = 0; i < publishers_.size(); ++i) {
    canonical.push_back("t\x1f" + publishers_[i].id + "\x1f" + publishers_[terminal_[i]].id);
  }
  std::sort(canonical.begin(), canonical.end());
  std::uint64_t hash = detail::kFnvOffset;
  for (const auto& entry : canonical) {
    hash = detail::fnv1a(entry, hash);
    hash = detail::fnv1a("\n", hash);
  }
  fingerprint_ = hash;
}

const std::string* PublisherRegistry::try_resolve(std::string_view raw) const {
  auto it = by_folded_.find(fold_name(raw));
  if (it == by_folded_.end()) {
    return nullptr;
  }
  return &publishers_[terminal_[it->second]].id;
}

const std::string& PublisherRegistry::resolve(std::string_view raw) const {
  if (const std::string* id = try_resolve(raw)) {
    return *id;
  }
  throw UnresolvedPublisherError(fold_name(raw));
}

const std::string& PublisherRegistry::apply_acquisitions(std::string_view publisher_id) const {
  auto it = by_id_.find(std::string(publisher_id));
  if (it == by_id_.end()) {
    throw NotFoundError("unknown publisher id \"" + std::string(publisher_id) + "\"");
  }
  return publishers_[terminal_[it->second]].id;
}

const CanonicalPublisher* PublisherRegistry::find(std::string_view publisher_id) const {
  auto it = by_id_.find(std::string(publisher_id));
  return it == by_id_.end() ? nullptr : &publishers_[it->second];
}

const CanonicalPublisher& PublisherRegistry::publisher(std::string_view publisher_id) const {
  if (const auto* found = find(publisher_id)) {
    return *found;
  }
  throw NotFoundError("unknown publisher id \"" + std::string(publisher_id) + "\"");
}

std::vector<const NameVariant*> PublisherRegistry::variants_resolving_to(std::string_view publisher_id) const {
  std::vector<const NameVariant*> out;
  for (const auto& variant : variants_) {
    if (apply_acquisitions(variant.canonical_id) == publisher_id) {
      out.push_back(&variant);
    }
  }
  return out;
}

PublisherRegistry load_registry(std::istream& variants, std::istream& publishers, std::istream& acquisitions) {
  std::vector<CanonicalPublisher> publisher_rows;
  for (auto& record : csv::read_table(publishers, {"id", "name", "type", "website"}, "publishers.csv")) {
    auto type = parse_publisher_type(record.fields[2]);
    if (!type) {
      throw FormatError("publishers.csv line " + std::to_string(record.line) + ": type must be commercial or " +
                        "university_press, got \"" + record.fields[2] + "\"");
    }
    publisher_rows.push_back({std::move(record.fields[0]), std::move(record.fields[1]), *type,
                              optional_field(record.fields[3])});
  }

  std::vector<NameVariant> variant_rows;
  for (auto& record : csv::read_table(variants, {"raw", "canonical_id", "city", "address"}, "variants.csv")) {
    variant_rows.push_back({std::move(record.fields[0]), std::move(record.fields[1]),
                            optional_field(record.fields[2]), optional_field(record.fields[3])});
  }

  std::vector<AcquisitionEvent> acquisition_rows;
  for (auto& record :
       csv::read_table(acquisitions, {"acquired_id", "acquirer_id", "year"}, "acquisitions.csv")) {
    std::optional<int> year;
    const std::string& text = record.fields[2];
    if (!text.empty()) {
      int value = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw FormatError("acquisitions.csv line " + std::to_string(record.line) + ": year must be an integer");
      }
      year = value;
    }
    acquisition_rows.push_back({std::move(record.fields[0]), std::move(record.fields[1]), year});
  }

  return PublisherRegistry(std::move(publisher_rows), std::move(variant_rows), std::move(acquisition_rows));
}

PublisherRegistry load_registry_directory(const std::filesystem::path& directory) {
  auto variants = open_input(directory / "variants.csv");
  auto publishers = open_input(directory / "publishers.csv");
  auto acquisitions = open_input(directory / "acquisitions.csv");
  return load_registry(variants, publishers, acquisitions);
}

}  // namespace pubrank
