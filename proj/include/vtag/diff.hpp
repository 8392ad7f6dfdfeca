#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace vtag {

using Tokens = std::vector<std::string>;

/// A maximal run of tokens common to both sequences: a[a_pos + i] ==
/// b[b_pos + i] for i < len.
struct CommonRun {
    std::size_t a_pos = 0;
    std::size_t b_pos = 0;
    std::size_t len = 0;

    bool operator==(const CommonRun&) const = default;
};

/// Longest-common-subsequence alignment of two token sequences, coalesced
/// into maximal runs, in order. O(|a|*|b|) time and memory.
std::vector<CommonRun> lcs_runs(const Tokens& a, const Tokens& b);

/// LCS length only; O(|a|*|b|) time, two-row memory.
std::size_t lcs_length(const Tokens& a, const Tokens& b);

/// Token edit distance under the insert/delete model:
/// |a| + |b| - 2 * lcs_length(a, b). A replacement counts as one deletion
/// plus one insertion.
std::size_t token_edit_distance(const Tokens& a, const Tokens& b);

struct EditOp {
    enum class Kind { del, ins };
    Kind kind = Kind::del;
    std::size_t pos = 0;     // position in the sequence at application time
    std::size_t len = 0;     // run length (deletions)
    Tokens tokens;           // inserted tokens (insertions)

    bool operator==(const EditOp&) const = default;
};

/// Ordered change log turning version (version_id - 1) into version
/// version_id. Ops apply sequentially; positions are valid at the moment
/// each op applies.
struct EditScript {
    std::uint32_t version_id = 0;
    std::vector<EditOp> ops;

    /// Tokens deleted plus tokens inserted; equals the token edit distance
    /// of the two versions the script connects.
    std::size_t token_cost() const;
};

/// Minimal delete/insert script from `from` to `to`, runs coalesced. An
/// updated region becomes one deletion followed by one insertion.
EditScript make_edit_script(std::uint32_t version_id, const Tokens& from, const Tokens& to);

/// Applies a script. `ops_applied`, when given, is incremented by one per
/// token deleted or inserted. Throws std::logic_error on an out-of-range op.
Tokens apply_edit_script(const EditScript& script, Tokens base,
                         std::uint64_t* ops_applied = nullptr);

}  // namespace vtag
