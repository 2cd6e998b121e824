#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>

namespace modshift {

enum class ConceptNetRelation : std::size_t {
  Antonym,
  Synonym,
  AtLocation,
  DerivedFrom,
  DistinctFrom,
  FormOf,
  IsA,
  PartOf,
  RelatedTo,
  SimilarTo,
};
inline constexpr std::size_t kConceptNetRelationCount = 10;
extern const std::array<std::string_view, kConceptNetRelationCount> kConceptNetRelationNames;

std::optional<ConceptNetRelation> parse_conceptnet_relation(std::string_view uri_or_name);

/// Extracts the single-token term from "/c/<lang>/<term>[/pos/...]"; nullopt
/// for other languages and for multi-word concepts.
std::optional<std::string> conceptnet_term(std::string_view uri, std::string_view lang);

struct ConceptNetLoadReport {
  std::size_t lines = 0;
  std::size_t kept = 0;
  std::size_t other_relation = 0;
  std::size_t other_language = 0;  // includes multi-word concepts
  std::size_t malformed = 0;
};

/// Relation triples from a ConceptNet assertions dump, restricted to one
/// language and to the ten relations above.
class ConceptNetIndex {
 public:
  /// Reads the tab-separated dump (assertion, relation, start, end, metadata).
  static ConceptNetIndex load(const std::filesystem::path& path, std::string_view lang = "en");

  bool has(ConceptNetRelation r, const std::string& start, const std::string& end) const;
  std::size_t size() const noexcept { return triples_.size(); }
  const ConceptNetLoadReport& report() const noexcept { return report_; }

 private:
  std::set<std::tuple<std::size_t, std::string, std::string>> triples_;
  ConceptNetLoadReport report_;
};

using ConceptNetRelations = std::array<bool, kConceptNetRelationCount>;

/// One order-insensitive boolean per relation: (r, w1, w2) or (r, w2, w1).
ConceptNetRelations conceptnet_relations(const ConceptNetIndex& index, const std::string& w1,
                                         const std::string& w2);

}  // namespace modshift
