#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace vtag {

struct ContentRef {
    std::uint64_t offset = 0;
    std::uint32_t length = 0;

    bool operator==(const ContentRef&) const = default;
};

// Append-only byte store with one blob per document. Version payloads live
// back to back inside the blob and are addressed by ContentRef.
class ContentStore {
public:
    ContentRef append(std::uint32_t doc_id, std::string_view bytes);

    // The view stays valid until the next append for the same document.
    std::string_view read(std::uint32_t doc_id, ContentRef ref) const;

    void adopt_blob(std::uint32_t doc_id, std::string blob);

    const std::map<std::uint32_t, std::string>& blobs() const { return blobs_; }

private:
    std::map<std::uint32_t, std::string> blobs_;
};

}  // namespace vtag
