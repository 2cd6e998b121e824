#include "modshift/conceptnet.hpp"

#include "modshift/text.hpp"

namespace modshift {

const std::array<std::string_view, kConceptNetRelationCount> kConceptNetRelationNames = {
    "Antonym", "Synonym", "AtLocation", "DerivedFrom", "DistinctFrom",
    "FormOf",  "IsA",     "PartOf",     "RelatedTo",   "SimilarTo"};

std::optional<ConceptNetRelation> parse_conceptnet_relation(std::string_view s) {
  if (s.starts_with("/r/")) s.remove_prefix(3);
  while (!s.empty() && s.back() == '/') s.remove_suffix(1);
  for (std::size_t i = 0; i < kConceptNetRelationCount; ++i)
    if (kConceptNetRelationNames[i] == s) return static_cast<ConceptNetRelation>(i);
  return std::nullopt;
}

std::optional<std::string> conceptnet_term(std::string_view uri, std::string_view lang) {
  const std::string prefix = "/c/" + std::string(lang) + "/";
  if (!uri.starts_with(prefix)) return std::nullopt;
  uri.remove_prefix(prefix.size());
  const auto term = uri.substr(0, uri.find('/'));
  if (term.empty() || term.find('_') != std::string_view::npos) return std::nullopt;
  return std::string(term);
}

ConceptNetIndex ConceptNetIndex::load(const std::filesystem::path& path, std::string_view lang) {
  ConceptNetIndex index;
  auto& r = index.report_;
  const std::string content = text::read_file(path);
  for (const auto line : text::lines(content)) {
    if (line.empty()) continue;
    ++r.lines;
    const auto f = text::split(line, '\t');
    if (f.size() < 4) {
      ++r.malformed;
      continue;
    }
    const auto rel = parse_conceptnet_relation(f[1]);
    if (!rel) {
      ++r.other_relation;
      continue;
    }
    auto start = conceptnet_term(f[2], lang);
    auto end = conceptnet_term(f[3], lang);
    if (!start || !end) {
      ++r.other_language;
      continue;
    }
    index.triples_.emplace(static_cast<std::size_t>(*rel), std::move(*start), std::move(*end));
    ++r.kept;
  }
  return index;
}

bool ConceptNetIndex::has(ConceptNetRelation rel, const std::string& start,
                          const std::string& end) const {
  return triples_.contains({static_cast<std::size_t>(rel), start, end});
}

ConceptNetRelations conceptnet_relations(const ConceptNetIndex& index, const std::string& w1,
                                         const std::string& w2) {
  ConceptNetRelations out{};
  for (std::size_t i = 0; i < kConceptNetRelationCount; ++i) {
    const auto rel = static_cast<ConceptNetRelation>(i);
    out[i] = index.has(rel, w1, w2) || index.has(rel, w2, w1);
  }
  return out;
}

}  // namespace modshift
