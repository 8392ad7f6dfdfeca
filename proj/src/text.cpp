#include "vtag/text.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "vtag/stopwords_data.hpp"

namespace vtag {

namespace {

bool is_word_byte(unsigned char c) {
    if (c >= 0x80) return true;  // keep UTF-8 sequences intact
    return std::isalnum(c) != 0;
}

const std::unordered_set<std::string>& stopword_set() {
    static const std::unordered_set<std::string> set(stopword_list().begin(),
                                                     stopword_list().end());
    return set;
}

}  // namespace

TokenStream tokenize(std::string_view text) {
    TokenStream out;
    std::string cur;
    for (unsigned char c : text) {
        if (is_word_byte(c)) {
            cur.push_back(c < 0x80 ? static_cast<char>(std::tolower(c))
                                   : static_cast<char>(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

TokenStream remove_stopwords(const TokenStream& tokens) {
    TokenStream out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (!is_stopword(t)) out.push_back(t);
    }
    return out;
}

bool is_stopword(std::string_view token) {
    return stopword_set().count(std::string(token)) != 0;
}

const std::vector<std::string>& stopword_list() {
    static const std::vector<std::string> list = [] {
        std::vector<std::string> words;
        std::string cur;
        for (char c : std::string_view(detail::kStopwordsRaw)) {
            if (c == '\n' || c == '\r') {
                if (!cur.empty()) words.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) words.push_back(cur);
        std::sort(words.begin(), words.end());
        words.erase(std::unique(words.begin(), words.end()), words.end());
        return words;
    }();
    return list;
}

TokenStream split_whitespace(std::string_view text) {
    TokenStream out;
    std::string cur;
    for (unsigned char c : text) {
        if (c < 0x80 && std::isspace(c)) {
            if (!cur.empty()) {
                out.push_back(std::move(cur));
                cur.clear();
            }
        } else {
            cur.push_back(static_cast<char>(c));
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::string join_tokens(const TokenStream& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

}  // namespace vtag
