#pragma once

/*
 * LZ78 dictionary parsing and output-length accounting.
 *
 * Phrase i (1-based) = phrase parent[i-1] extended by last[i-1]; phrase 0 is
 * the empty string. Output length uses fixed-width pointers:
 *   sum over i of (ceil(log_sigma i) + 1), plus ceil(log_sigma (C+1)) for a
 * trailing incomplete phrase (bare pointer, no symbol). A base-sigma
 * Elias-gamma pointer coding (value shifted by one) is available as a variant.
 */

#include "bpd/core.hpp"
#include "bpd/rational.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace bpd {

struct lz_phrase_table {
    alphabet sigma;
    std::vector<int> parent;   // parent[i-1] in [0, i)
    std::vector<char> last;    // extension symbol of phrase i
    std::vector<size_t> ends;  // position after phrase i in the source
    size_t source_len = 0;
    int final_incomplete = 0;  // phrase index the tail equals; 0 = no tail

    size_t count() const { return parent.size(); }

    std::string phrase_string(size_t i) const {
        if (i > count()) throw error(errc::domain, "phrase index out of range");
        std::string s;
        while (i != 0) {
            s += last[i - 1];
            i = static_cast<size_t>(parent[i - 1]);
        }
        return reversed(std::move(s));
    }
};

inline lz_phrase_table lz_parse(const alphabet& a, const std::string& w) {
    check_str(a, w, "input");
    lz_phrase_table t;
    t.sigma = a;
    t.source_len = w.size();
    std::map<std::pair<int, char>, int> trie;  // (node, symbol) -> node
    int cur = 0;
    for (size_t pos = 0; pos < w.size(); ++pos) {
        auto it = trie.find({cur, w[pos]});
        if (it != trie.end()) {
            cur = it->second;
            continue;
        }
        t.parent.push_back(cur);
        t.last.push_back(w[pos]);
        t.ends.push_back(pos + 1);
        trie[{cur, w[pos]}] = static_cast<int>(t.count());
        cur = 0;
    }
    t.final_incomplete = cur;
    return t;
}

enum class pointer_coding { fixed, gamma };

namespace detail {
// floor(log_base x), x >= 1
inline size_t floor_log(size_t base, size_t x) {
    size_t t = 0;
    while (x >= base) {
        x /= base;
        ++t;
    }
    return t;
}

// cost of the pointer emitted for phrase i (fixed: domain is the i prior
// phrases incl. the empty one; gamma: parent value p shifted to p+1)
inline size_t pointer_cost(pointer_coding pc, size_t sigma, size_t i, size_t parent) {
    if (pc == pointer_coding::fixed)
        return static_cast<size_t>(ceil_log(big_int(sigma), big_int(i)));
    return 2 * floor_log(sigma, parent + 1) + 1;
}
}  // namespace detail

inline size_t lz_output_length(const lz_phrase_table& t,
                               pointer_coding pc = pointer_coding::fixed) {
    size_t sigma = t.sigma.size();
    size_t total = 0;
    for (size_t i = 1; i <= t.count(); ++i)
        total += detail::pointer_cost(pc, sigma, i, static_cast<size_t>(t.parent[i - 1])) + 1;
    if (t.final_incomplete)
        total += pc == pointer_coding::fixed
                     ? static_cast<size_t>(ceil_log(big_int(sigma), big_int(t.count() + 1)))
                     : 2 * detail::floor_log(sigma, static_cast<size_t>(t.final_incomplete) + 1) + 1;
    return total;
}

inline rational lz_ratio(const alphabet& a, const std::string& w,
                         pointer_coding pc = pointer_coding::fixed) {
    if (w.empty()) throw error(errc::domain, "compression ratio needs nonempty input");
    return rational(big_int(lz_output_length(lz_parse(a, w), pc))) / big_int(w.size());
}

// Phrases lying fully inside [begin, end); both bounds must land on phrase
// boundaries (or 0/end of source), else the straddling phrase is reported.
inline std::vector<size_t> lz_phrases_of_segment(const lz_phrase_table& t, size_t begin,
                                                 size_t end) {
    if (begin > end || end > t.source_len)
        throw error(errc::usage, "segment bounds out of range");
    std::vector<size_t> out;
    size_t prev_end = 0;
    for (size_t i = 1; i <= t.count(); ++i) {
        size_t s = prev_end, e = t.ends[i - 1];
        prev_end = e;
        if (e <= begin || s >= end) continue;
        if (s < begin || e > end)
            throw error(errc::domain, "phrase " + std::to_string(i) + " straddles segment " +
                                          std::to_string(begin) + ".." + std::to_string(end) +
                                          " (spans " + std::to_string(s) + ".." +
                                          std::to_string(e) + ")");
        out.push_back(i);
    }
    if (t.final_incomplete && (end > prev_end || begin > prev_end))
        throw error(errc::domain, "incomplete tail starting at " + std::to_string(prev_end) +
                                      " overlaps the segment bounds");
    return out;
}

// One online pass; rows (n, phrase_count, output_len, ratio) at checkpoints
// (ascending, <= |w|). phrase_count counts complete phrases.
struct lz_checkpoint {
    size_t n, phrases, out_len;
};

inline std::vector<lz_checkpoint> lz_scan(const alphabet& a, const std::string& w,
                                          const std::vector<size_t>& checkpoints,
                                          pointer_coding pc = pointer_coding::fixed) {
    check_str(a, w, "input");
    for (size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] > w.size())
            throw error(errc::usage, "checkpoint beyond input length");
        if (i && checkpoints[i] <= checkpoints[i - 1])
            throw error(errc::usage, "checkpoints must be strictly increasing");
    }
    std::vector<lz_checkpoint> rows;
    std::map<std::pair<int, char>, int> trie;
    size_t sigma = a.size(), complete = 0, base_len = 0, next = 0;
    int cur = 0;
    auto emit = [&](size_t n) {
        size_t len = base_len;
        if (cur != 0)
            len += pc == pointer_coding::fixed
                       ? static_cast<size_t>(ceil_log(big_int(sigma), big_int(complete + 1)))
                       : 2 * detail::floor_log(sigma, static_cast<size_t>(cur) + 1) + 1;
        rows.push_back({n, complete, len});
    };
    for (size_t pos = 0;; ++pos) {
        if (next < checkpoints.size() && checkpoints[next] == pos) {
            emit(pos);
            ++next;
        }
        if (pos == w.size()) break;
        auto it = trie.find({cur, w[pos]});
        if (it != trie.end()) {
            cur = it->second;
            continue;
        }
        ++complete;
        base_len +=
            detail::pointer_cost(pc, sigma, complete, static_cast<size_t>(cur)) + 1;
        trie[{cur, w[pos]}] = static_cast<int>(complete);
        cur = 0;
    }
    return rows;
}

inline void write_lz_csv(std::ostream& os, const alphabet& a, const std::string& w,
                         const std::vector<size_t>& checkpoints,
                         pointer_coding pc = pointer_coding::fixed) {
    os << "n,phrase_count,output_len,ratio\n";
    for (const lz_checkpoint& r : lz_scan(a, w, checkpoints, pc)) {
        os << r.n << "," << r.phrases << "," << r.out_len << ",";
        if (r.n > 0) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12g",
                          static_cast<double>(r.out_len) / static_cast<double>(r.n));
            os << buf;
        }
        os << "\n";
    }
}

inline void write_phrase_dump(std::ostream& os, const lz_phrase_table& t) {
    for (size_t i = 1; i <= t.count(); ++i)
        os << i << " " << t.parent[i - 1] << " " << t.last[i - 1] << "\n";
}

}  // namespace bpd
