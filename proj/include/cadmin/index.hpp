#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "cadmin/errors.hpp"

namespace cadmin {

// A cell index: a tuple of positive integers, one entry per level.
// The empty tuple names the unique cell of R^0.  Ordering is lexicographic
// with shorter prefixes first, so a base index always precedes the indices
// of the cells stacked above it.
class Index {
  public:
    Index() = default;

    explicit Index(std::vector<int> entries) : entries_(std::move(entries)) {
        for (int e : entries_) {
            if (e <= 0) throw Error("index entries must be positive");
        }
    }

    Index(std::initializer_list<int> entries) : Index(std::vector<int>(entries)) {}

    int length() const { return static_cast<int>(entries_.size()); }
    bool isRoot() const { return entries_.empty(); }

    int entry(int i) const {
        if (i < 0 || i >= length()) throw Error("index entry out of range");
        return entries_[static_cast<std::size_t>(i)];
    }

    int last() const {
        if (entries_.empty()) throw Error("root index has no last entry");
        return entries_.back();
    }

    // Parity is the parity of the last entry: even indices name sections,
    // odd indices name sectors.
    bool isEven() const { return last() % 2 == 0; }
    bool isOdd() const { return !isEven(); }

    // First k entries; indices shorter than k are returned unchanged.
    Index prefix(int k) const {
        if (k < 0) throw Error("negative prefix length");
        if (length() <= k) return *this;
        return Index(std::vector<int>(entries_.begin(), entries_.begin() + k));
    }

    Index parent() const {
        if (entries_.empty()) throw Error("root index has no parent");
        return prefix(length() - 1);
    }

    Index child(int j) const {
        std::vector<int> e = entries_;
        e.push_back(j);
        return Index(std::move(e));
    }

    // Returns a copy with entry k (0-based) shifted by delta.
    Index shifted(int k, int delta) const {
        if (k < 0 || k >= length()) throw Error("index entry out of range");
        std::vector<int> e = entries_;
        e[static_cast<std::size_t>(k)] += delta;
        return Index(std::move(e));
    }

    const std::vector<int>& entries() const { return entries_; }

    bool operator==(const Index& o) const { return entries_ == o.entries_; }
    bool operator!=(const Index& o) const { return !(*this == o); }
    bool operator<(const Index& o) const {
        return std::lexicographical_compare(entries_.begin(), entries_.end(),
                                            o.entries_.begin(), o.entries_.end());
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(entries_[i]);
        }
        s += ")";
        return s;
    }

    // Parses the str() form, e.g. "(4,7,1)" or "()".
    static Index parse(const std::string& s) {
        if (s.size() < 2 || s.front() != '(' || s.back() != ')')
            throw ParseError("malformed index: " + s);
        std::vector<int> e;
        std::size_t i = 1;
        while (i + 1 < s.size()) {
            std::size_t j = s.find(',', i);
            if (j == std::string::npos) j = s.size() - 1;
            const std::string tok = s.substr(i, j - i);
            try {
                std::size_t used = 0;
                const int v = std::stoi(tok, &used);
                if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
                e.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("malformed index entry: '" + tok + "'");
            }
            i = j + 1;
        }
        // A token consumed through the closing paren leaves i == s.size();
        // stopping one short means the last character consumed was a comma.
        if (!e.empty() && i == s.size() - 1)
            throw ParseError("malformed index: " + s);
        return Index(std::move(e));
    }

  private:
    std::vector<int> entries_;
};

}  // namespace cadmin
