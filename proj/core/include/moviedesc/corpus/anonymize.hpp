#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace moviedesc::corpus {

class CorpusProject;

/// Word lists describing anonymous person references; all lowercase.
struct PersonPatterns {
    std::set<std::string, std::less<>> singular_determiners;
    std::set<std::string, std::less<>> plural_determiners;
    std::set<std::string, std::less<>> adjectives;
    std::set<std::string, std::less<>> singular;
    std::set<std::string, std::less<>> plural;
    std::set<std::string, std::less<>> titles;

    /// "key: word word ..." lines; '#' starts a comment. Unknown keys are
    /// errors.
    static PersonPatterns parse(std::string_view text, std::string_view source = "<memory>");
    static PersonPatterns load(const std::filesystem::path &path);
};

/// Character names of one movie, matched case-insensitively against
/// capitalized words. Multi-word entries match as a unit.
class NameLexicon {
  public:
    NameLexicon() = default;
    explicit NameLexicon(const std::vector<std::string> &names);

    /// One name per line; blank lines and '#' comments ignored.
    static NameLexicon parse(std::string_view text);
    static NameLexicon load(const std::filesystem::path &path);

    /// Lowercased word sequences, longest first.
    const std::vector<std::vector<std::string>> &entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

  private:
    std::vector<std::vector<std::string>> entries_;
};

struct Replacement {
    std::size_t offset = 0; ///< byte offset in the input
    std::string original;
    std::string replacement;

    friend bool operator==(const Replacement &, const Replacement &) = default;
};

struct AnonymizeResult {
    std::string text;
    std::vector<Replacement> replacements;
};

/// Rewrites person mentions: a name, a person description such as "a young
/// woman", or someone/somebody become "someone"; plural descriptions and
/// coordinations of mentions ("Mike and Abby", "Abby, Tom and the boy")
/// become "people". A trailing possessive 's is kept. Replacements at the
/// start of a sentence are capitalized. Only changed spans are logged.
AnonymizeResult anonymize(std::string_view sentence, const NameLexicon &names, const PersonPatterns &patterns);

struct SnippetReplacement {
    std::string snippet_id;
    Replacement replacement;
};

/// Applies anonymize() to every unlocked snippet of `movie_id`; returns the
/// number of snippets changed.
std::size_t anonymize_movie(CorpusProject &project, std::string_view movie_id, const NameLexicon &names,
                            const PersonPatterns &patterns, std::vector<SnippetReplacement> *log = nullptr);

} // namespace moviedesc::corpus
