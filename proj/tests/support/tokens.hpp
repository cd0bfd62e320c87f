#pragma once

#include <string>
#include <vector>

#include "etdmine/preprocess.hpp"

namespace etdmine::testing {

/// TokenizedCorpus built directly from token lists, bypassing preprocessing.
inline TokenizedCorpus corpus_of(const std::vector<std::vector<std::string>>& docs) {
    TokenizedCorpus tc;
    tc.profile = PreprocessProfile::topic();
    for (std::size_t d = 0; d < docs.size(); ++d) {
        tc.doc_ids.push_back("d" + std::to_string(d));
        std::vector<TermId> ids;
        for (const auto& t : docs[d]) ids.push_back(tc.vocab.add(t));
        tc.empty.push_back(ids.empty());
        tc.docs.push_back(std::move(ids));
    }
    return tc;
}

}  // namespace etdmine::testing
