#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hwm {

/// Positive ranked alphabet: symbol names with arities >= 1.
class RankedAlphabet {
public:
    RankedAlphabet() = default;
    /// Validates uniqueness and positivity; throws Error on violation.
    explicit RankedAlphabet(std::vector<std::pair<std::string, int>> symbols);

    bool contains(const std::string& symbol) const { return arity_.count(symbol) != 0; }
    /// Throws UnknownSymbol if absent.
    int arity(const std::string& symbol) const;

    const std::vector<std::pair<std::string, int>>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }

    /// Set-equality of the symbol -> arity mapping (declaration order ignored).
    bool operator==(const RankedAlphabet& other) const { return arity_ == other.arity_; }
    bool operator!=(const RankedAlphabet& other) const { return !(*this == other); }

    /// True if every (symbol, arity) of this alphabet appears in `other`.
    bool subset_of(const RankedAlphabet& other) const;

private:
    std::vector<std::pair<std::string, int>> symbols_;
    std::map<std::string, int> arity_;
};

} // namespace hwm
