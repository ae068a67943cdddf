#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dynhist/corpus.hpp"
#include "dynhist/error.hpp"

namespace dynhist {

// Finds occurrences of a fixed set of terms in an IndexedCorpus. A term
// occurrence is a run of consecutive positions inside one sentence; matches
// never span a sentence boundary. Overlapping occurrences are all reported.
class TermMatcher {
 public:
  TermMatcher(const IndexedCorpus& corpus, std::span<const std::u32string> terms)
      : corpus_(&corpus), by_first_(corpus.vocabulary().size()) {
    ids_.reserve(terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (terms[t].empty()) throw ValidationError("empty target term");
      std::vector<std::uint32_t> ids;
      bool present = true;
      for (char32_t ch : terms[t]) {
        auto id = corpus.id_of(ch);
        if (!id) {
          present = false;
          break;
        }
        ids.push_back(*id);
      }
      if (present) by_first_[ids.front()].push_back(static_cast<std::uint32_t>(t));
      ids_.push_back(std::move(ids));
    }
  }

  std::size_t term_count() const { return ids_.size(); }
  std::size_t term_length(std::size_t t) const { return ids_[t].size(); }

  // fn(term_index, char_offset) for every occurrence starting in `s`, in
  // offset order (ties in term order).
  template <typename Fn>
  void for_each_in_sentence(const Sentence& s, Fn&& fn) const {
    const auto ids = corpus_->char_ids();
    for (std::size_t pos = s.begin; pos < s.end; ++pos) {
      for (std::uint32_t t : by_first_[ids[pos]]) {
        const auto& term = ids_[t];
        if (pos + term.size() > s.end) continue;
        bool hit = true;
        for (std::size_t k = 1; k < term.size(); ++k) {
          if (ids[pos + k] != term[k]) {
            hit = false;
            break;
          }
        }
        if (hit) fn(static_cast<std::size_t>(t), pos);
      }
    }
  }

  template <typename Fn>
  void for_each_in_unit(const Unit& u, Fn&& fn) const {
    const auto sentences = corpus_->sentences();
    for (std::size_t s = u.first_sentence; s < u.last_sentence; ++s) {
      for_each_in_sentence(sentences[s], fn);
    }
  }

 private:
  const IndexedCorpus* corpus_;
  std::vector<std::vector<std::uint32_t>> ids_;
  std::vector<std::vector<std::uint32_t>> by_first_;
};

}  // namespace dynhist
