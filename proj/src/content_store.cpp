#include "vtag/content_store.hpp"

#include "vtag/errors.hpp"

namespace vtag {

ContentRef ContentStore::append(std::uint32_t doc_id, std::string_view bytes) {
    std::string& blob = blobs_[doc_id];
    ContentRef ref{blob.size(), static_cast<std::uint32_t>(bytes.size())};
    blob.append(bytes);
    return ref;
}

std::string_view ContentStore::read(std::uint32_t doc_id, ContentRef ref) const {
    auto it = blobs_.find(doc_id);
    if (it == blobs_.end()) {
        throw CorpusError("no content stored for document " + std::to_string(doc_id));
    }
    const std::string& blob = it->second;
    if (ref.offset > blob.size() || blob.size() - ref.offset < ref.length) {
        throw CorpusError("content reference out of range for document " +
                          std::to_string(doc_id));
    }
    return std::string_view(blob).substr(ref.offset, ref.length);
}

void ContentStore::adopt_blob(std::uint32_t doc_id, std::string blob) {
    blobs_[doc_id] = std::move(blob);
}

}  // namespace vtag
