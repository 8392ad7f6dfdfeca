#include "vtag/diff.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace vtag {

namespace {

// Replaces tokens with dense integer ids so the DP inner loops compare ints.
void intern(const Tokens& a, const Tokens& b, std::vector<std::uint32_t>& ia,
            std::vector<std::uint32_t>& ib) {
    std::unordered_map<std::string, std::uint32_t> ids;
    ids.reserve(a.size() + b.size());
    auto id_of = [&ids](const std::string& token) {
        return ids.emplace(token, static_cast<std::uint32_t>(ids.size())).first->second;
    };
    ia.reserve(a.size());
    ib.reserve(b.size());
    for (const std::string& t : a) ia.push_back(id_of(t));
    for (const std::string& t : b) ib.push_back(id_of(t));
}

}  // namespace

std::vector<CommonRun> lcs_runs(const Tokens& a, const Tokens& b) {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0 || m == 0) return {};

    std::vector<std::uint32_t> ia, ib;
    intern(a, b, ia, ib);

    // full DP table, row-major, for the backtrack
    std::vector<std::uint32_t> dp((n + 1) * (m + 1), 0);
    auto at = [m, &dp](std::size_t i, std::size_t j) -> std::uint32_t& {
        return dp[i * (m + 1) + j];
    };
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            at(i, j) = ia[i - 1] == ib[j - 1]
                           ? at(i - 1, j - 1) + 1
                           : std::max(at(i - 1, j), at(i, j - 1));
        }
    }

    // backtrack from (n, m); matches come out right-to-left
    std::vector<CommonRun> runs;
    std::size_t i = n, j = m;
    while (i > 0 && j > 0) {
        if (ia[i - 1] == ib[j - 1]) {
            --i;
            --j;
            if (!runs.empty() && runs.back().a_pos == i + 1 && runs.back().b_pos == j + 1) {
                --runs.back().a_pos;
                --runs.back().b_pos;
                ++runs.back().len;
            } else {
                runs.push_back({i, j, 1});
            }
        } else if (at(i - 1, j) >= at(i, j - 1)) {
            --i;
        } else {
            --j;
        }
    }
    std::reverse(runs.begin(), runs.end());
    return runs;
}

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0 || m == 0) return 0;

    std::vector<std::uint32_t> ia, ib;
    intern(a, b, ia, ib);

    std::vector<std::uint32_t> prev(m + 1, 0), cur(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            cur[j] = ia[i - 1] == ib[j - 1] ? prev[j - 1] + 1
                                            : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

std::size_t token_edit_distance(const Tokens& a, const Tokens& b) {
    return a.size() + b.size() - 2 * lcs_length(a, b);
}

std::size_t EditScript::token_cost() const {
    std::size_t cost = 0;
    for (const auto& op : ops) {
        cost += op.kind == EditOp::Kind::del ? op.len : op.tokens.size();
    }
    return cost;
}

EditScript make_edit_script(std::uint32_t version_id, const Tokens& from, const Tokens& to) {
    EditScript script;
    script.version_id = version_id;

    auto runs = lcs_runs(from, to);
    std::size_t a_done = 0, b_done = 0;
    std::size_t cursor = 0;  // position in the partially transformed sequence

    auto emit_gap = [&](std::size_t a_end, std::size_t b_end) {
        if (a_end > a_done) {
            script.ops.push_back({EditOp::Kind::del, cursor, a_end - a_done, {}});
        }
        if (b_end > b_done) {
            Tokens ins(to.begin() + static_cast<std::ptrdiff_t>(b_done),
                       to.begin() + static_cast<std::ptrdiff_t>(b_end));
            script.ops.push_back({EditOp::Kind::ins, cursor, 0, std::move(ins)});
            cursor += b_end - b_done;
        }
        a_done = a_end;
        b_done = b_end;
    };

    for (const auto& run : runs) {
        emit_gap(run.a_pos, run.b_pos);
        a_done += run.len;
        b_done += run.len;
        cursor += run.len;
    }
    emit_gap(from.size(), to.size());
    return script;
}

Tokens apply_edit_script(const EditScript& script, Tokens base, std::uint64_t* ops_applied) {
    for (const auto& op : script.ops) {
        if (op.kind == EditOp::Kind::del) {
            if (op.pos + op.len > base.size()) {
                throw std::logic_error("edit script deletion out of range");
            }
            base.erase(base.begin() + static_cast<std::ptrdiff_t>(op.pos),
                       base.begin() + static_cast<std::ptrdiff_t>(op.pos + op.len));
            if (ops_applied) *ops_applied += op.len;
        } else {
            if (op.pos > base.size()) {
                throw std::logic_error("edit script insertion out of range");
            }
            base.insert(base.begin() + static_cast<std::ptrdiff_t>(op.pos),
                        op.tokens.begin(), op.tokens.end());
            if (ops_applied) *ops_applied += op.tokens.size();
        }
    }
    return base;
}

}  // namespace vtag
