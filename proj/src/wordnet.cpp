#include "modshift/wordnet.hpp"

#include <algorithm>
#include <cctype>

#include "modshift/error.hpp"
#include "modshift/text.hpp"

namespace modshift {

const std::array<std::string_view, kSupersenseCount> kSupersenseNames = {
    "Tops",     "act",        "animal",    "artifact", "attribute", "body",     "cognition",
    "communication", "event", "feeling",   "food",     "group",     "location", "motive",
    "object",   "person",     "phenomenon", "plant",   "possession", "process", "quantity",
    "relation", "shape",      "state",     "substance", "time"};

const std::array<std::string_view, kWordNetRelationCount> kWordNetRelationNames = {
    "antonyms", "synonyms", "same_hyponyms", "same_hypernyms", "hyponyms", "hypernyms"};

namespace {

const std::vector<SynsetId> kNoSenses;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// data.noun words may carry a syntactic marker such as "(p)"; nouns never
// do in practice, but strip it for safety.
std::string strip_marker(std::string_view w) {
  const auto paren = w.find('(');
  return std::string(paren == std::string_view::npos ? w : w.substr(0, paren));
}

SynsetId parse_offset(std::string_view s, const std::string& where) {
  const auto v = text::parse_int(s);
  if (!v || *v < 0) throw DataError(where + ": bad synset offset '" + std::string(s) + "'");
  return static_cast<SynsetId>(*v);
}

}  // namespace

WordNetIndex WordNetIndex::load(const std::filesystem::path& dir) {
  WordNetIndex wn;

  // index.noun: lemma pos synset_cnt p_cnt [ptr_symbol...] sense_cnt tagsense_cnt offsets...
  {
    const auto path = dir / "index.noun";
    const std::string content = text::read_file(path);
    std::size_t line_no = 0;
    for (const auto line : text::lines(content)) {
      ++line_no;
      if (line.empty() || line.starts_with("  ")) continue;
      const std::string where = path.string() + ":" + std::to_string(line_no);
      const auto f = text::split_ws(line);
      if (f.size() < 6 || f[1] != "n") throw DataError(where + ": malformed index entry");
      const auto synset_cnt = text::parse_int(f[2]);
      const auto p_cnt = text::parse_int(f[3]);
      if (!synset_cnt || !p_cnt) throw DataError(where + ": malformed counts");
      const std::size_t first = 4 + static_cast<std::size_t>(*p_cnt) + 2;
      if (f.size() != first + static_cast<std::size_t>(*synset_cnt))
        throw DataError(where + ": synset count mismatch");
      std::vector<SynsetId> ids;
      for (std::size_t i = first; i < f.size(); ++i) ids.push_back(parse_offset(f[i], where));
      wn.senses_.emplace(std::string(f[0]), std::move(ids));
    }
    wn.report_.index_entries = wn.senses_.size();
  }

  // data.noun: offset lex_filenum ss_type w_cnt (word lex_id)+ p_cnt (sym offset pos st)* | gloss
  {
    const auto path = dir / "data.noun";
    const std::string content = text::read_file(path);
    std::size_t line_no = 0;
    for (const auto line : text::lines(content)) {
      ++line_no;
      if (line.empty() || line.starts_with("  ")) continue;
      const std::string where = path.string() + ":" + std::to_string(line_no);
      const auto bar = line.find(" | ");
      const auto f = text::split_ws(line.substr(0, bar));
      if (f.size() < 6) throw DataError(where + ": malformed synset");
      Synset s;
      s.id = parse_offset(f[0], where);
      const auto lex = text::parse_int(f[1]);
      if (!lex || *lex < kFirstNounLexFile ||
          *lex >= kFirstNounLexFile + static_cast<int>(kSupersenseCount))
        throw DataError(where + ": lexicographer file outside the noun range");
      s.lex_file = static_cast<int>(*lex);
      const auto w_cnt = text::parse_int(f[3], 16);
      if (!w_cnt || *w_cnt <= 0) throw DataError(where + ": bad word count");
      std::size_t i = 4;
      for (long long k = 0; k < *w_cnt; ++k, i += 2) {
        if (i + 1 >= f.size()) throw DataError(where + ": truncated word list");
        s.words.push_back(strip_marker(f[i]));
      }
      if (i >= f.size()) throw DataError(where + ": missing pointer count");
      const auto p_cnt = text::parse_int(f[i]);
      if (!p_cnt) throw DataError(where + ": bad pointer count");
      ++i;
      for (long long k = 0; k < *p_cnt; ++k, i += 4) {
        if (i + 3 >= f.size()) throw DataError(where + ": truncated pointer list");
        const auto sym = f[i];
        if (f[i + 2] != "n") continue;
        const SynsetId target = parse_offset(f[i + 1], where);
        if (sym == "@") {
          s.hypernyms.push_back(target);
        } else if (sym == "~") {
          s.hyponyms.push_back(target);
        } else if (sym == "!") {
          const auto st = f[i + 3];
          const auto src = text::parse_int(st.substr(0, 2), 16);
          const auto tgt = text::parse_int(st.substr(2, 2), 16);
          if (st.size() != 4 || !src || !tgt) throw DataError(where + ": bad source/target");
          s.antonyms.push_back({target, static_cast<std::uint8_t>(*src),
                                static_cast<std::uint8_t>(*tgt)});
        }
      }
      wn.synsets_.emplace(s.id, std::move(s));
    }
    wn.report_.synsets = wn.synsets_.size();
  }

  for (auto& [word, ids] : wn.senses_) {
    for (SynsetId id : ids)
      if (!wn.synsets_.contains(id))
        throw DataError("index.noun entry '" + word + "' references unknown synset " +
                        std::to_string(id));
  }
  // Pointers leaving a partial database are dropped so the graph only
  // references loaded synsets.
  for (auto& [id, s] : wn.synsets_) {
    const auto known = [&](SynsetId t) { return wn.synsets_.contains(t); };
    const std::size_t before = s.hypernyms.size() + s.hyponyms.size() + s.antonyms.size();
    std::erase_if(s.hypernyms, [&](SynsetId t) { return !known(t); });
    std::erase_if(s.hyponyms, [&](SynsetId t) { return !known(t); });
    std::erase_if(s.antonyms, [&](const LexicalPointer& p) { return !known(p.target); });
    wn.report_.dangling_pointers +=
        before - (s.hypernyms.size() + s.hyponyms.size() + s.antonyms.size());
  }

  const auto exc = dir / "noun.exc";
  if (std::filesystem::exists(exc)) {
    const std::string content = text::read_file(exc);
    for (const auto line : text::lines(content)) {
      const auto f = text::split_ws(line);
      if (f.size() < 2) continue;
      auto& bases = wn.exceptions_[std::string(f[0])];
      for (std::size_t i = 1; i < f.size(); ++i) bases.emplace_back(f[i]);
    }
    wn.report_.exceptions = wn.exceptions_.size();
  }
  return wn;
}

const std::vector<SynsetId>& WordNetIndex::senses(const std::string& word) const {
  const auto it = senses_.find(word);
  return it == senses_.end() ? kNoSenses : it->second;
}

const Synset* WordNetIndex::synset(SynsetId id) const {
  const auto it = synsets_.find(id);
  return it == synsets_.end() ? nullptr : &it->second;
}

std::string WordNetIndex::base_lemma(const std::string& word) const {
  if (const auto it = exceptions_.find(word); it != exceptions_.end()) {
    for (const auto& base : it->second)
      if (is_noun(base)) return base;
    return it->second.front();
  }
  if (is_noun(word)) return word;
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 8> kRules = {{
      {"s", ""}, {"ses", "s"}, {"xes", "x"}, {"zes", "z"},
      {"ches", "ch"}, {"shes", "sh"}, {"men", "man"}, {"ies", "y"},
  }};
  for (const auto& [suffix, ending] : kRules) {
    if (word.size() > suffix.size() && word.ends_with(suffix)) {
      std::string candidate = word.substr(0, word.size() - suffix.size());
      candidate += ending;
      if (is_noun(candidate)) return candidate;
    }
  }
  return word;
}

SupersenseVector supersenses(const WordNetIndex& index, const std::string& word) {
  SupersenseVector out;
  const auto& ids = index.senses(word);
  out.missing = ids.empty();
  for (SynsetId id : ids) {
    const Synset* s = index.synset(id);
    out.labels[static_cast<std::size_t>(s->lex_file - kFirstNounLexFile)] = true;
  }
  return out;
}

namespace {

bool intersects(std::vector<SynsetId> a, std::vector<SynsetId> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<SynsetId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return !common.empty();
}

template <class Member>
std::vector<SynsetId> gather(const WordNetIndex& index, const std::vector<SynsetId>& ids,
                             Member member) {
  std::vector<SynsetId> out;
  for (SynsetId id : ids) {
    const auto& v = index.synset(id)->*member;
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

// True if some sense of `from` carries an antonym pointer whose source word
// is `from` and whose target word is `to`.
bool antonym_pointer(const WordNetIndex& index, const std::string& from, const std::string& to) {
  for (SynsetId id : index.senses(from)) {
    const Synset* s = index.synset(id);
    for (const auto& p : s->antonyms) {
      const Synset* t = index.synset(p.target);
      const bool src_ok =
          p.source_word == 0 ||
          (p.source_word <= s->words.size() && lower(s->words[p.source_word - 1]) == from);
      if (!src_ok) continue;
      if (p.target_word == 0) {
        for (const auto& w : t->words)
          if (lower(w) == to) return true;
      } else if (p.target_word <= t->words.size() &&
                 lower(t->words[p.target_word - 1]) == to) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

WordNetRelations wordnet_relations(const WordNetIndex& index, const std::string& w1,
                                   const std::string& w2) {
  WordNetRelations r{};
  const auto& s1 = index.senses(w1);
  const auto& s2 = index.senses(w2);
  if (s1.empty() || s2.empty()) return r;
  const auto at = [&](WordNetRelation rel) -> bool& { return r[static_cast<std::size_t>(rel)]; };

  at(WordNetRelation::synonyms) = intersects(s1, s2);
  at(WordNetRelation::antonyms) = antonym_pointer(index, w1, w2) || antonym_pointer(index, w2, w1);
  const auto hyper1 = gather(index, s1, &Synset::hypernyms);
  const auto hyper2 = gather(index, s2, &Synset::hypernyms);
  const auto hypo1 = gather(index, s1, &Synset::hyponyms);
  const auto hypo2 = gather(index, s2, &Synset::hyponyms);
  at(WordNetRelation::same_hypernyms) = intersects(hyper1, hyper2);
  at(WordNetRelation::same_hyponyms) = intersects(hypo1, hypo2);
  at(WordNetRelation::hypernyms) = intersects(hyper1, s2);
  at(WordNetRelation::hyponyms) = intersects(hyper2, s1);
  return r;
}

bool is_noun(const WordNetIndex& index, const std::unordered_set<std::string>* noun_list,
             const std::string& word) {
  if (noun_list != nullptr) return noun_list->contains(word);
  return index.is_noun(word);
}

std::unordered_set<std::string> load_word_list(const std::filesystem::path& path) {
  const std::string content = text::read_file(path);
  std::unordered_set<std::string> out;
  for (const auto line : text::lines(content)) {
    const auto w = text::trim(line);
    if (!w.empty()) out.emplace(w);
  }
  return out;
}

}  // namespace modshift
